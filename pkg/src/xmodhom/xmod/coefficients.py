"""Coefficient modules for crossed modules.

A crossed module ``(T, G, mu)`` acts on an abelian group ``A`` exactly when
``A`` is a ``G``-module on which ``mu(T)`` acts trivially, i.e. a
``pi_1``-module.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.abelian import PresentedAbelianGroup
from ..algebra.matrix import IntMatrix
from ..errors import InfiniteCoefficients, NotEquivariantModule, NotPiOneModule, GroupMismatch
from ..groups.finite import FiniteGroup, GroupAction, GroupHom
from ..groups.modules import GModule
from .crossed import CrossedModule, PrecrossedModule, homotopy_groups, validate_crossed_module


@dataclass(frozen=True, eq=False)
class PiCoefficients:
    """A ``pi_1(base)``-module, with its pullback to ``G`` kept alongside."""

    base: PrecrossedModule
    module: GModule  # over pi_1
    g_module: GModule  # the same coefficients over G
    projection: GroupHom  # G -> pi_1
    name: str | None = None

    @property
    def coefficients(self) -> PresentedAbelianGroup:
        return self.module.coefficients

    def describe(self) -> str:
        kind = "trivial" if self.module.is_trivial() else "twisted"
        return f"{self.coefficients.describe()} ({kind})"


def validate_pi_coefficients(X: PrecrossedModule, A: GModule, name: str | None = None) -> PiCoefficients:
    """Check that ``mu(T)`` acts trivially on the ``G``-module ``A`` and descend it to ``pi_1``."""
    if A.group != X.g_group:
        raise GroupMismatch("coefficients must be a module over G")
    coeffs = A.coefficients
    n = coeffs.generators
    for t in X.t_group.elements():
        m = A.action[X.mu.images[t]].matrix
        for a in range(n):
            diff = [v - int(j == a) for j, v in enumerate(m.tolist()[a])] if n else []
            if not coeffs.contains(diff):
                raise NotPiOneModule(t, a)
    hg = homotopy_groups(X)
    lift = hg.projection.section()
    pi_mod = GModule(hg.pi1, coeffs, [A.action[lift[q]].matrix for q in hg.pi1.elements()], check=False)
    return PiCoefficients(X, pi_mod, A, hg.projection, name)


def pi_coefficients_from_pi1(X: PrecrossedModule, M: GModule, name: str | None = None) -> PiCoefficients:
    """Coefficients given directly as a module over ``pi_1``."""
    hg = homotopy_groups(X)
    if M.group != hg.pi1:
        raise GroupMismatch("module is not over pi_1")
    return PiCoefficients(X, M, M.pullback(hg.projection), hg.projection, name)


def trivial_coefficients(X: PrecrossedModule, A: PresentedAbelianGroup, name: str | None = None) -> PiCoefficients:
    return validate_pi_coefficients(X, GModule.trivial(X.g_group, A), name)


def finite_abelian_group(A: PresentedAbelianGroup) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """The elements of a finite diagonal ``A`` as a :class:`FiniteGroup` (first coordinate fastest)."""
    orders = A.orders
    if orders is None:
        raise ValueError("diagonal presentation required")
    if 0 in orders:
        raise InfiniteCoefficients("coefficients have positive free rank")
    G = FiniteGroup.abelian(list(orders))
    elems = []
    for i in range(G.order):
        coords, r = [], i
        for o in orders:
            coords.append(r % o)
            r //= o
        elems.append(tuple(coords))
    return G, elems


def element_index(orders, coords) -> int:
    i = 0
    for o, c in reversed(list(zip(orders, coords))):
        i = i * o + (c % o)
    return i


@dataclass(frozen=True, eq=False)
class SemidirectCoefficients:
    """``A x| X = (A x T, G, mu~)`` with its split-extension structure maps."""

    xmod: CrossedModule
    a_inclusion: GroupHom  # A -> A x T
    t_projection: GroupHom  # A x T -> T
    t_section: GroupHom  # T -> A x T
    a_elements: list


def semidirect_coefficients(X: CrossedModule, A: PiCoefficients) -> SemidirectCoefficients:
    """``(A x T, G, mu~(a, t) = mu(t))`` with the diagonal ``G``-action."""
    M = A.g_module.diagonalized()
    coeffs = M.coefficients
    if coeffs.free_rank > 0:
        raise InfiniteCoefficients("semidirect_coefficients needs finite coefficients")
    Afg, elems = finite_abelian_group(coeffs)
    orders = coeffs.orders
    nA = Afg.order
    T, G = X.t_group, X.g_group
    AT = FiniteGroup.direct_product(Afg, T)  # (a, t) -> a + |A| t
    amaps = []
    for g in G.elements():
        rho = M.action[g].matrix
        amaps.append([element_index(orders, rho.vec_mul(e)) for e in elems])
    maps = [
        [amaps[g][x % nA] + nA * X.action.maps[g][x // nA] for x in AT.elements()]
        for g in G.elements()
    ]
    mu = GroupHom(AT, G, [X.mu.images[x // nA] for x in AT.elements()], check=False)
    Y = validate_crossed_module(CrossedModule(AT, G, mu, GroupAction(G, AT, maps, check=False)))
    incl = GroupHom(Afg, AT, list(Afg.elements()), check=False)
    proj = GroupHom(AT, T, [x // nA for x in AT.elements()], check=False)
    sect = GroupHom(T, AT, [nA * t for t in T.elements()], check=False)
    # split extension: A >-> A x T ->> T with section, all G-equivariant
    assert incl.then(proj).images == tuple([0] * nA)
    assert sect.then(proj).images == tuple(T.elements())
    assert set(proj.kernel()) == set(incl.images)
    for g in G.elements():
        for t in T.elements():
            assert maps[g][sect.images[t]] == sect.images[X.action.maps[g][t]]
    return SemidirectCoefficients(Y, incl, proj, sect, elems)


# equivariant coefficients for precrossed modules

@dataclass(frozen=True, eq=False)
class EquivariantModule:
    """``A`` with a ``T``-action and a ``G``-action such that ``g.(t.a) = (g.t).(g.a)``."""

    t_module: GModule
    g_module: GModule
    action: GroupAction  # G on T

    def validate(self) -> "EquivariantModule":
        if self.t_module.coefficients is not self.g_module.coefficients and (
            self.t_module.coefficients.generators != self.g_module.coefficients.generators
        ):
            raise GroupMismatch("T- and G-modules must share coefficients")
        A = self.t_module.coefficients
        n = A.generators
        T, G = self.action.carrier, self.action.actor
        for g in G.elements():
            rg = self.g_module.action[g].matrix
            for t in T.elements():
                lhs = self.t_module.action[t].matrix @ rg
                rhs = rg @ self.t_module.action[self.action.maps[g][t]].matrix
                diff = (lhs - rhs).tolist()
                for a in range(n):
                    if not A.contains(diff[a]):
                        raise NotEquivariantModule(g, t, a)
        return self

    @classmethod
    def from_pi_coefficients(cls, X: PrecrossedModule, A: PiCoefficients) -> "EquivariantModule":
        """``T`` acting trivially, ``G`` through ``pi_1``."""
        return cls(GModule.trivial(X.t_group, A.coefficients), A.g_module, X.action)


def abelianization_module(T: FiniteGroup, action: GroupAction | None = None) -> GModule:
    """``T_ab`` on generators ``[t]`` (``t != 1``) with the induced action of ``action.actor``.

    Without an action the result is a module over the trivial group.
    """
    n = T.order - 1
    rows = []
    for x in range(1, T.order):
        for y in range(1, T.order):
            r: dict = {}
            r[x - 1] = r.get(x - 1, 0) + 1
            r[y - 1] = r.get(y - 1, 0) + 1
            xy = T.table[x][y]
            if xy:
                r[xy - 1] = r.get(xy - 1, 0) - 1
            rows.append(r)
    coeffs = PresentedAbelianGroup(n, IntMatrix.from_sparse(len(rows), n, rows))
    if action is None:
        return GModule(FiniteGroup.trivial(), coeffs, [IntMatrix.identity(n)], check=False)
    mats = []
    for g in action.actor.elements():
        m = action.maps[g]
        mats.append(IntMatrix.from_sparse(n, n, ({m[t] - 1: 1} for t in range(1, T.order))))
    return GModule(action.actor, coeffs, mats, check=False)


def augmentation_ideal(G: FiniteGroup) -> GModule:
    """``I_G`` on the basis ``g - 1`` (``g != 1``); ``h.(g - 1) = (hg - 1) - (h - 1)``."""
    n = G.order - 1
    mats = []
    for h in G.elements():
        rows = []
        for g in range(1, G.order):
            r: dict = {}
            hg = G.table[h][g]
            if hg:
                r[hg - 1] = r.get(hg - 1, 0) + 1
            if h:
                r[h - 1] = r.get(h - 1, 0) - 1
            rows.append({k: v for k, v in r.items() if v})
        mats.append(IntMatrix.from_sparse(n, n, rows))
    return GModule(G, PresentedAbelianGroup.free(n), mats, check=False)
