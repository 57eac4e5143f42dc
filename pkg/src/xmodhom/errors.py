"""Exception hierarchy shared by every subpackage."""

from __future__ import annotations


class XModError(Exception):
    """Base class for all errors raised by xmodhom."""


# algebra core

class CompositionNonzero(XModError):
    def __init__(self, degree):
        super().__init__(f"d o d is nonzero at degree {degree}")
        self.degree = degree


class IllFormedMap(XModError):
    pass


class NotExact(XModError):
    def __init__(self, degree, detail=""):
        super().__init__(f"sequence not short exact at degree {degree}{': ' + detail if detail else ''}")
        self.degree = degree


# budgets

class BudgetExceeded(XModError):
    pass


class DegreeTooLarge(BudgetExceeded):
    pass


class InsufficientRectangle(XModError):
    pass


class CapExceeded(BudgetExceeded):
    pass


# groups and modules

class InvalidGroup(XModError):
    pass


class NotAHomomorphism(XModError):
    pass


class NotSurjective(XModError):
    pass


class GroupMismatch(XModError):
    pass


class NonCommuting(XModError):
    pass


class InvalidModule(XModError):
    pass


# crossed modules

class EquivarianceFailure(XModError):
    def __init__(self, g, t):
        super().__init__(f"equivariance fails at g={g}, t={t}")
        self.g, self.t = g, t


class PeifferFailure(XModError):
    def __init__(self, t, t2):
        super().__init__(f"Peiffer identity fails at t={t}, t'={t2}")
        self.t, self.t2 = t, t2


class Cat1AxiomFailure(XModError):
    def __init__(self, axiom, witness=None):
        super().__init__(f"cat1 axiom {axiom} fails" + (f" at {witness}" if witness is not None else ""))
        self.axiom, self.witness = axiom, witness


class SquareAxiomFailure(XModError):
    def __init__(self, axiom, witness=None):
        super().__init__(f"crossed square axiom {axiom} fails" + (f" at {witness}" if witness is not None else ""))
        self.axiom, self.witness = axiom, witness


class NotPiOneModule(XModError):
    def __init__(self, t, a):
        super().__init__(f"mu(t) acts nontrivially: t={t}, generator {a}")
        self.t, self.a = t, a


class NotEquivariantModule(XModError):
    def __init__(self, g, t, a):
        super().__init__(f"T-action on A not G-equivariant at g={g}, t={t}, generator {a}")
        self.g, self.t, self.a = g, t, a


class InfiniteCoefficients(XModError):
    pass


# simplicial

class SimplicialIdentityFailure(XModError):
    pass


class MooreLengthExceeded(XModError):
    def __init__(self, degree):
        super().__init__(f"Moore complex is nontrivial in degree {degree}")
        self.degree = degree


# invariants and cli

class InapplicableSuite(XModError):
    pass


class ParseError(XModError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}" + (f", column {column}" if column is not None else "") if line is not None else ""
        super().__init__(f"{where}: {message}" if where else message)
        self.line, self.column = line, column
