"""Precrossed and crossed modules of finite groups, and their cat1-groups.

A crossed module ``(T, G, mu)`` comes with a left action of ``G`` on ``T``
such that ``mu(g.t) = g mu(t) g^-1`` and ``mu(t).t' = t t' t^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import Cat1AxiomFailure, EquivarianceFailure, InvalidGroup, PeifferFailure
from ..groups.finite import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    homomorphisms,
    order_profile,
    semidirect_product,
)


@dataclass(frozen=True, eq=False)
class PrecrossedModule:
    t_group: FiniteGroup
    g_group: FiniteGroup
    mu: GroupHom
    action: GroupAction
    name: str | None = None

    def __post_init__(self):
        if self.mu.source != self.t_group or self.mu.target != self.g_group:
            raise InvalidGroup("mu must map T to G")
        if self.action.actor != self.g_group or self.action.carrier != self.t_group:
            raise InvalidGroup("the action must be of G on T")

    def act(self, g: int, t: int) -> int:
        return self.action.maps[g][t]

    def equivariance_failure(self):
        T, G = self.t_group, self.g_group
        mu, m = self.mu.images, self.action.maps
        for g in G.elements():
            for t in T.elements():
                if mu[m[g][t]] != G.conj(g, mu[t]):
                    return g, t
        return None

    def peiffer_failure(self):
        T = self.t_group
        mu, m = self.mu.images, self.action.maps
        for t in T.elements():
            mt = m[mu[t]]
            for t2 in T.elements():
                if mt[t2] != T.conj(t, t2):
                    return t, t2
        return None

    def semidirect(self):
        """``(T x| G, inj_T, inj_G, proj)``; ``(t, g)`` has index ``t + |T| g``."""
        return semidirect_product(self.t_group, self.g_group, self.action)

    def fingerprint(self) -> tuple:
        return (self.t_group.table, self.g_group.table, self.mu.images, self.action.maps)

    def __repr__(self) -> str:
        label = self.name or f"|T|={self.t_group.order}, |G|={self.g_group.order}"
        return f"{type(self).__name__}({label})"


class CrossedModule(PrecrossedModule):
    """A precrossed module that also satisfies the Peiffer identity.

    Construction does not validate; use :func:`validate_crossed_module`.
    """

    # constructors for the standard families

    @classmethod
    def normal_inclusion(cls, G: FiniteGroup, normal, name=None) -> "CrossedModule":
        """``(N, G, i)`` for a normal subgroup given by its elements."""
        if not G.is_normal(normal):
            raise InvalidGroup("subgroup is not normal")
        N, incl = G.subgroup(normal)
        return cls(N, G, incl, GroupAction.conjugation(G, incl), name)

    @classmethod
    def from_surjection(cls, f: GroupHom, name=None) -> "CrossedModule":
        """The aspherical crossed module ``(ker f, G, i)``."""
        if not f.is_surjective():
            from ..errors import NotSurjective

            raise NotSurjective("aspherical crossed modules need a surjection")
        return cls.normal_inclusion(f.source, f.kernel(), name)

    @classmethod
    def of_group(cls, G: FiniteGroup, name=None) -> "CrossedModule":
        """``(1, G, i)``."""
        return cls.normal_inclusion(G, [0], name)

    @classmethod
    def identity(cls, G: FiniteGroup, name=None) -> "CrossedModule":
        """``(G, G, id)`` with conjugation."""
        return cls(G, G, GroupHom.identity(G), GroupAction.conjugation(G), name)

    @classmethod
    def trivial_map(cls, M: FiniteGroup, G: FiniteGroup, action: GroupAction | None = None, name=None) -> "CrossedModule":
        """``(M, G, 0)`` for an abelian ``M`` with a ``G``-action (trivial by default)."""
        action = action or GroupAction.trivial(G, M)
        return cls(M, G, GroupHom.trivial(M, G), action, name)

    @classmethod
    def abelian(cls, M: FiniteGroup, name=None) -> "CrossedModule":
        """``(M, 1, 0)``."""
        return cls.trivial_map(M, FiniteGroup.trivial(), name=name)

    def is_aspherical(self) -> bool:
        return self.mu.is_injective()


def validate_precrossed_module(P) -> PrecrossedModule:
    if isinstance(P, tuple):
        P = PrecrossedModule(*P)
    bad = P.equivariance_failure()
    if bad is not None:
        raise EquivarianceFailure(*bad)
    return P


def validate_crossed_module(X) -> CrossedModule:
    """Check both axioms and return a :class:`CrossedModule`, or raise with a minimal witness."""
    if isinstance(X, tuple):
        X = CrossedModule(*X)
    bad = X.equivariance_failure()
    if bad is not None:
        raise EquivarianceFailure(*bad)
    bad = X.peiffer_failure()
    if bad is not None:
        raise PeifferFailure(*bad)
    if not isinstance(X, CrossedModule):
        X = CrossedModule(X.t_group, X.g_group, X.mu, X.action, X.name)
    return X


@dataclass(frozen=True)
class HomotopyGroups:
    pi1: FiniteGroup
    pi2: FiniteGroup
    projection: GroupHom  # G -> pi1
    pi2_inclusion: GroupHom  # pi2 -> T

    def __iter__(self):
        return iter((self.pi1, self.pi2, self.projection))


def homotopy_groups(X: PrecrossedModule) -> HomotopyGroups:
    """``pi_1 = G / mu(T)`` with its projection and ``pi_2 = ker mu``."""
    G = X.g_group
    pi1, proj = G.quotient(G.closure(X.mu.image()))
    pi2, incl = X.t_group.subgroup(X.mu.kernel())
    if isinstance(X, CrossedModule):
        assert pi2.is_abelian(), "pi_2 must be abelian"
        centre = set(X.t_group.center())
        assert all(t in centre for t in incl.images), "pi_2 must be central in T"
    return HomotopyGroups(pi1, pi2, proj, incl)


def pi1_projection(X: PrecrossedModule) -> GroupHom:
    return homotopy_groups(X).projection


# cat1-groups

@dataclass(frozen=True, eq=False)
class Cat1Group:
    group: FiniteGroup
    d0: GroupHom
    d1: GroupHom

    def axiom_failure(self):
        H, d0, d1 = self.group, self.d0.images, self.d1.images
        for x in H.elements():
            if d1[d0[x]] != d0[x]:
                return "d1d0=d0", x
            if d0[d1[x]] != d1[x]:
                return "d0d1=d1", x
        k0 = [x for x in H.elements() if d0[x] == 0]
        k1 = [x for x in H.elements() if d1[x] == 0]
        for a in k0:
            for b in k1:
                if H.table[a][b] != H.table[b][a]:
                    return "[ker d0, ker d1]=1", (a, b)
        return None

    def validate(self) -> "Cat1Group":
        for name, d in (("d0", self.d0), ("d1", self.d1)):
            if d.source != self.group or d.target != self.group:
                raise Cat1AxiomFailure(f"{name} endomorphism")
            if d.first_failure() is not None:
                raise Cat1AxiomFailure(f"{name} homomorphism", d.first_failure())
        bad = self.axiom_failure()
        if bad is not None:
            raise Cat1AxiomFailure(*bad)
        return self


def to_cat1(X: CrossedModule) -> Cat1Group:
    """``(T x| G, d0(t,g) = (1,g), d1(t,g) = (1, mu(t) g))``."""
    H, _, _, _ = X.semidirect()
    nT = X.t_group.order
    G = X.g_group
    d0 = [nT * (x // nT) for x in H.elements()]
    d1 = [nT * G.table[X.mu.images[x % nT]][x // nT] for x in H.elements()]
    return Cat1Group(H, GroupHom(H, H, d0, check=False), GroupHom(H, H, d1, check=False))


def from_cat1(C: Cat1Group) -> CrossedModule:
    """``(ker d0, im d0, d1|)`` with conjugation, after validating ``C``."""
    C.validate()
    H = C.group
    T, t_incl = H.subgroup(C.d0.kernel())
    G, g_incl = H.subgroup(C.d0.image())
    gpos = {x: i for i, x in enumerate(g_incl.images)}
    tpos = {x: i for i, x in enumerate(t_incl.images)}
    mu = GroupHom(T, G, [gpos[C.d1.images[x]] for x in t_incl.images], check=False)
    maps = [[tpos[H.conj(g, t)] for t in t_incl.images] for g in g_incl.images]
    X = CrossedModule(T, G, mu, GroupAction(G, T, maps, check=False))
    try:
        return validate_crossed_module(X)
    except (EquivarianceFailure, PeifferFailure) as exc:
        raise Cat1AxiomFailure("induced crossed module", exc) from exc


# isomorphisms

def xmod_isomorphism(X: PrecrossedModule, Y: PrecrossedModule):
    """A pair ``(phi_T, phi_G)`` of group isomorphisms compatible with ``mu`` and the actions, or ``None``."""
    if X.t_group.order != Y.t_group.order or X.g_group.order != Y.g_group.order:
        return None
    if order_profile(X.t_group) != order_profile(Y.t_group) or order_profile(X.g_group) != order_profile(Y.g_group):
        return None
    for fG in homomorphisms(X.g_group, Y.g_group, bijective=True):
        want = lambda s: [y for y in Y.t_group.elements() if Y.mu.images[y] == fG[X.mu.images[s]]]
        for fT in homomorphisms(X.t_group, Y.t_group, want, bijective=True):
            if all(
                fT[X.action.maps[g][t]] == Y.action.maps[fG[g]][fT[t]]
                for g in X.g_group.elements()
                for t in X.t_group.elements()
            ) and all(Y.mu.images[fT[t]] == fG[X.mu.images[t]] for t in X.t_group.elements()):
                return (
                    GroupHom(X.t_group, Y.t_group, fT, check=False),
                    GroupHom(X.g_group, Y.g_group, fG, check=False),
                )
    return None


def cat1_isomorphism(C: Cat1Group, D: Cat1Group) -> GroupHom | None:
    if C.group.order != D.group.order or order_profile(C.group) != order_profile(D.group):
        return None
    for f in homomorphisms(C.group, D.group, bijective=True):
        if all(f[C.d0.images[x]] == D.d0.images[f[x]] and f[C.d1.images[x]] == D.d1.images[f[x]] for x in C.group.elements()):
            return GroupHom(C.group, D.group, f, check=False)
    return None
