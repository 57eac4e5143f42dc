"""Exhaustive enumeration of singular extensions of finite crossed modules.

Extensions by ``(A, 1, 0)`` live on ``A x T`` with a central factor set
``c : T x T -> A`` and a lifted ``G``-action ``g.(a, t) = (g.a + phi_g(t), g.t)``.
Extensions by ``(1, A, i)`` live on ``A x G`` with a factor set for the
``pi_1``-action and a lift ``mu'(t) = (lam(t), mu(t))``.  All data are
normalized: ``c(1, x) = c(x, 1) = 0``, ``phi_g(1) = 0``, ``lam(1) = 0``.
Element ``(a, x)`` has index ``a + |A| x`` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from ..errors import CapExceeded, GroupMismatch, InfiniteCoefficients, NotSurjective, XModError
from ..groups.finite import FiniteGroup, GroupAction, GroupHom
from ..groups.modules import GModule
from ..xmod.coefficients import PiCoefficients, element_index, finite_abelian_group, validate_pi_coefficients
from ..xmod.crossed import CrossedModule, validate_crossed_module

A10_CAP = 16  # |A| |T|
A10_G_CAP = 4
AI_CAP = 16  # |A| |G|
AI_T_CAP = 4
REL_CAP = 16  # |A| |ker f|


@dataclass(frozen=True)
class FiniteCoefficients:
    """A finite ``G``-module as a :class:`FiniteGroup` with one permutation per element of ``G``."""

    group: FiniteGroup
    action: tuple  # action[g][a]
    elements: list

    def add(self, a: int, b: int) -> int:
        return self.group.table[a][b]

    def neg(self, a: int) -> int:
        return self.group.inverse[a]

    def sub(self, a: int, b: int) -> int:
        return self.group.table[a][self.group.inverse[b]]


def finite_coefficients(M: GModule) -> FiniteCoefficients:
    """Enumerate a finite module; raises :class:`InfiniteCoefficients` for positive free rank."""
    D = M.diagonalized()
    coeffs = D.coefficients
    if coeffs.free_rank > 0:
        raise InfiniteCoefficients("extension enumeration needs finite coefficients")
    Ag, elems = finite_abelian_group(coeffs)
    orders = coeffs.orders
    act = tuple(
        tuple(element_index(orders, D.action[g].matrix.vec_mul(e)) for e in elems) for g in M.group.elements()
    )
    return FiniteCoefficients(Ag, act, elems)


def _normalized_cocycles(H: FiniteGroup, A: FiniteCoefficients, act: Callable[[int, int], int]):
    """Normalized 2-cocycles ``c`` with ``h.c(k, l) + c(h, kl) = c(hk, l) + c(h, k)``.

    Backtracking over the pairs of non-identity elements; each equation is
    tested as soon as its last variable is assigned.  Yields dicts.
    """
    pairs = [(h, k) for h in range(1, H.order) for k in range(1, H.order)]
    pos = {p: i for i, p in enumerate(pairs)}
    T = H.table

    def var(h, k):
        return pos.get((h, k)) if h and k else None

    due: dict[int, list] = {}
    for h, k, l in product(range(1, H.order), repeat=3):
        vs = [var(k, l), var(h, T[k][l]), var(T[h][k], l), var(h, k)]
        last = max(v for v in vs if v is not None)
        due.setdefault(last, []).append((h, k, l))
    vals = [0] * len(pairs)

    def c(h, k):
        v = var(h, k)
        return 0 if v is None else vals[v]

    def ok(i):
        for h, k, l in due.get(i, ()):
            lhs = A.add(act(h, c(k, l)), c(h, T[k][l]))
            rhs = A.add(c(T[h][k], l), c(h, k))
            if lhs != rhs:
                return False
        return True

    def rec(i):
        if i == len(pairs):
            yield dict(zip(pairs, vals))
            return
        for a in range(A.group.order):
            vals[i] = a
            if ok(i):
                yield from rec(i + 1)
        vals[i] = 0

    yield from rec(0)


def _set_maps(domain: int, target: int):
    """Normalized set maps ``{0..domain-1} -> {0..target-1}`` sending 0 to 0."""
    for vals in product(range(target), repeat=domain - 1):
        yield (0,) + vals


def _extended_table(A: FiniteCoefficients, H: FiniteGroup, cocycle: dict, act: Callable[[int, int], int]) -> list[list[int]]:
    """``(a, h)(b, k) = (a + h.b + c(h, k), hk)`` on ``A x H``."""
    nA = A.group.order
    rows = []
    for h in H.elements():
        for a in range(nA):
            row = []
            for k in H.elements():
                ck = cocycle.get((h, k), 0)
                for b in range(nA):
                    row.append(A.add(A.add(a, act(h, b)), ck) + nA * H.table[h][k])
            rows.append(row)
    return rows


def _row_exact(inc: GroupHom, proj: GroupHom) -> bool:
    """``1 -> A -> E -> B -> 1`` is exact."""
    return inc.is_injective() and proj.is_surjective() and sorted(inc.image()) == sorted(proj.kernel())


# extensions by (A, 1, 0)

@dataclass(frozen=True, eq=False)
class SingularExtensionA10:
    """``(A, 1, 0) >-> (T', G, mu') ->> (T, G, mu)`` on ``T' = A x T``."""

    base: CrossedModule
    coefficients: FiniteCoefficients  # over G, through pi_1
    total: CrossedModule
    inclusion: GroupHom  # A -> T'
    projection: GroupHom  # T' -> T
    cocycle: dict  # (t, s) -> a
    lift: tuple  # lift[g][t] = phi_g(t)

    @property
    def key(self) -> tuple:
        T = self.base.t_group
        c = tuple(self.cocycle.get((t, s), 0) for t in range(1, T.order) for s in range(1, T.order))
        return c, self.lift

    def section(self, t: int) -> int:
        return self.coefficients.group.order * t


def _check_a10_caps(X: CrossedModule, A: FiniteCoefficients) -> None:
    if A.group.order * X.t_group.order > A10_CAP or X.g_group.order > A10_G_CAP:
        raise CapExceeded(f"(A,1,0)-extensions limited to |A||T| <= {A10_CAP} and |G| <= {A10_G_CAP}")


def _a10_coefficients(X: CrossedModule, A: PiCoefficients) -> FiniteCoefficients:
    if A.g_module.group != X.g_group:
        raise GroupMismatch("coefficients belong to another crossed module")
    return finite_coefficients(A.g_module)


def build_a10(X: CrossedModule, A: FiniteCoefficients, cocycle: dict, lift) -> SingularExtensionA10 | None:
    """The extension with the given data, or ``None`` when the data do not give a crossed module."""
    T, G = X.t_group, X.g_group
    nA = A.group.order
    Tp = FiniteGroup(_extended_table(A, T, cocycle, lambda t, a: a), check=False)
    maps = []
    for g in G.elements():
        m = [0] * Tp.order
        for t in T.elements():
            for a in range(nA):
                m[a + nA * t] = A.add(A.action[g][a], lift[g][t]) + nA * X.act(g, t)
        maps.append(m)
    action = GroupAction(G, Tp, maps, check=False)
    mu = GroupHom(Tp, G, [X.mu.images[x // nA] for x in Tp.elements()], check=False)
    Y = CrossedModule(Tp, G, mu, action)
    try:
        action.validate()
        Y = validate_crossed_module(Y)
    except XModError:
        return None
    inc = GroupHom(A.group, Tp, list(range(nA)), check=False)
    proj = GroupHom(Tp, T, [x // nA for x in Tp.elements()], check=False)
    return SingularExtensionA10(X, A, Y, inc, proj, dict(cocycle), tuple(tuple(r) for r in lift))


def _lifts_for(X: CrossedModule, A: FiniteCoefficients, Tp_table, g: int) -> list[tuple]:
    """All ``phi_g`` making ``(a, t) -> (g.a + phi_g(t), g.t)`` an automorphism of ``T'``."""
    T = X.t_group
    nA = A.group.order
    out = []
    for phi in _set_maps(T.order, nA):
        m = [A.add(A.action[g][x % nA], phi[x // nA]) + nA * X.act(g, x // nA) for x in range(len(Tp_table))]
        if all(m[Tp_table[x][y]] == Tp_table[m[x]][m[y]] for x in range(len(m)) for y in range(len(m))):
            out.append(phi)
    return out


def enumerate_singular_a10(X: CrossedModule, A: PiCoefficients) -> list[SingularExtensionA10]:
    """Every normalized extension of ``X`` by ``(A, 1, 0)`` with the given ``pi_1``-action."""
    A_ = _a10_coefficients(X, A)
    _check_a10_caps(X, A_)
    T, G = X.t_group, X.g_group
    gens = G.generators()
    out = []
    for c in _normalized_cocycles(T, A_, lambda t, a: a):
        table = _extended_table(A_, T, c, lambda t, a: a)
        per_gen = [_lifts_for(X, A_, table, g) for g in gens]
        for choice in product(*per_gen):
            lift = _generate_lift(X, A_, dict(zip(gens, choice)))
            if lift is None:
                continue
            E = build_a10(X, A_, c, lift)
            if E is not None and _row_exact(E.inclusion, E.projection):
                out.append(E)
    return out


def _generate_lift(X: CrossedModule, A: FiniteCoefficients, on_gens: dict) -> list | None:
    """Extend lifts given on generators of ``G`` by composing automorphisms; ``None`` if inconsistent."""
    T, G = X.t_group, X.g_group
    nA = A.group.order
    n = nA * T.order

    def auto(g, phi):
        return [A.add(A.action[g][x % nA], phi[x // nA]) + nA * X.act(g, x // nA) for x in range(n)]

    maps = {0: list(range(n))}
    frontier = [0]
    gen_maps = {s: auto(s, phi) for s, phi in on_gens.items()}
    while frontier:
        nxt = []
        for x in frontier:
            for s, ms in gen_maps.items():
                y = G.table[s][x]
                m = [ms[v] for v in maps[x]]
                if y in maps:
                    if maps[y] != m:
                        return None
                else:
                    maps[y] = m
                    nxt.append(y)
        frontier = nxt
    lift = []
    for g in G.elements():
        m = maps[g]
        lift.append(tuple(m[nA * t] % nA for t in T.elements()))
    return lift


# extensions by (1, A, i)

@dataclass(frozen=True, eq=False)
class SingularExtension1Ai:
    """``(1, A, i) >-> (T, G', mu') ->> (T, G, mu)`` on ``G' = A x G``."""

    base: CrossedModule
    coefficients: FiniteCoefficients
    total: CrossedModule
    inclusion: GroupHom  # A -> G'
    projection: GroupHom  # G' -> G
    cocycle: dict  # (g, h) -> a
    mu_lift: tuple  # lam(t)

    @property
    def key(self) -> tuple:
        G = self.base.g_group
        c = tuple(self.cocycle.get((g, h), 0) for g in range(1, G.order) for h in range(1, G.order))
        return c, self.mu_lift


def build_1ai(X: CrossedModule, A: FiniteCoefficients, cocycle: dict, lam) -> SingularExtension1Ai | None:
    T, G = X.t_group, X.g_group
    nA = A.group.order
    Gp = FiniteGroup(_extended_table(A, G, cocycle, lambda g, a: A.action[g][a]), check=False)
    mu_images = [lam[t] + nA * X.mu.images[t] for t in T.elements()]
    mu = GroupHom(T, Gp, mu_images, check=False)
    if mu.first_failure() is not None:
        return None
    action = GroupAction(Gp, T, [X.action.maps[x // nA] for x in Gp.elements()], check=False)
    try:
        Y = validate_crossed_module(CrossedModule(T, Gp, mu, action))
    except XModError:
        return None
    inc = GroupHom(A.group, Gp, list(range(nA)), check=False)
    proj = GroupHom(Gp, G, [x // nA for x in Gp.elements()], check=False)
    return SingularExtension1Ai(X, A, Y, inc, proj, dict(cocycle), tuple(lam))


def _realizes_action(E: SingularExtension1Ai) -> bool:
    """Conjugation by ``G'`` on ``A`` is the given ``pi_1``-action."""
    Gp, A = E.total.g_group, E.coefficients
    inc = E.inclusion.images
    for x in Gp.elements():
        g = E.projection.images[x]
        for a in A.group.elements():
            if Gp.conj(x, inc[a]) != inc[A.action[g][a]]:
                return False
    return True


def enumerate_singular_1ai(X: CrossedModule, A: PiCoefficients) -> list[SingularExtension1Ai]:
    """Every normalized extension of ``X`` by ``(1, A, i)`` with the given ``pi_1``-action."""
    A_ = finite_coefficients(A.g_module)
    T, G = X.t_group, X.g_group
    if A_.group.order * G.order > AI_CAP or T.order > AI_T_CAP:
        raise CapExceeded(f"(1,A,i)-extensions limited to |A||G| <= {AI_CAP} and |T| <= {AI_T_CAP}")
    out = []
    for c in _normalized_cocycles(G, A_, lambda g, a: A_.action[g][a]):
        for lam in _set_maps(T.order, A_.group.order):
            E = build_1ai(X, A_, c, lam)
            if E is not None and _row_exact(E.inclusion, E.projection) and _realizes_action(E):
                out.append(E)
    return out


# congruence

@dataclass
class CongruenceClass:
    representative: object
    members: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)


def _transport_a10(E: SingularExtensionA10, h) -> tuple:
    """Key of the extension obtained through ``(a, t) -> (a + h(t), t)``."""
    A, X = E.coefficients, E.base
    T, G = X.t_group, X.g_group
    c = tuple(
        A.sub(A.add(E.cocycle.get((t, s), 0), h[T.table[t][s]]), A.add(h[t], h[s]))
        for t in range(1, T.order)
        for s in range(1, T.order)
    )
    lift = tuple(
        tuple(A.sub(A.add(E.lift[g][t], h[X.act(g, t)]), A.action[g][h[t]]) for t in T.elements())
        for g in G.elements()
    )
    return c, lift


def _transport_1ai(E: SingularExtension1Ai, h) -> tuple:
    """Key of the extension obtained through ``(a, g) -> (a + h(g), g)``."""
    A, X = E.coefficients, E.base
    G = X.g_group
    c = tuple(
        A.sub(A.add(E.cocycle.get((g, k), 0), h[G.table[g][k]]), A.add(h[g], A.action[g][h[k]]))
        for g in range(1, G.order)
        for k in range(1, G.order)
    )
    lam = tuple(A.add(E.mu_lift[t], h[X.mu.images[t]]) for t in X.t_group.elements())
    return c, lam


def _fibre_size(E) -> tuple[int, int]:
    if isinstance(E, SingularExtensionA10):
        return E.base.t_group.order, E.coefficients.group.order
    return E.base.g_group.order, E.coefficients.group.order


def classify_congruence(extensions: list, kind: str | None = None) -> list[CongruenceClass]:
    """Partition into congruence classes.

    A congruence fixes ``A`` and the base, so it is ``(a, x) -> (a + h(x), x)``
    for a normalized set map ``h``; the class of ``E`` is the orbit of its key
    under all such ``h``.  Classes are ordered by their first member.
    """
    if not extensions:
        return []
    kind = kind or ("a10" if isinstance(extensions[0], SingularExtensionA10) else "1ai")
    transport = _transport_a10 if kind == "a10" else _transport_1ai
    n, nA = _fibre_size(extensions[0])
    hs = list(_set_maps(n, nA))
    owner: dict = {}
    classes: list[CongruenceClass] = []
    for E in extensions:
        k = E.key
        if k in owner:
            classes[owner[k]].members.append(E)
            continue
        idx = len(classes)
        classes.append(CongruenceClass(E, [E]))
        for h in hs:
            owner.setdefault(transport(E, h), idx)
    return classes


def find_congruence(E1, E2) -> GroupHom | None:
    """A congruence ``E1 -> E2`` by exhaustive search, checked on group tables; ``None`` if none exists."""
    if E1.base is not E2.base:
        return None
    n, nA = _fibre_size(E1)
    S, S2 = (E1.total.t_group, E2.total.t_group) if isinstance(E1, SingularExtensionA10) else (E1.total.g_group, E2.total.g_group)
    for h in _set_maps(n, nA):
        images = [E1.coefficients.add(x % nA, h[x // nA]) + nA * (x // nA) for x in S.elements()]
        psi = GroupHom(S, S2, images, check=False)
        if psi.first_failure() is not None:
            continue
        if isinstance(E1, SingularExtensionA10):
            G = E1.base.g_group
            if any(psi.images[E1.total.act(g, x)] != E2.total.act(g, psi.images[x]) for g in G.elements() for x in S.elements()):
                continue
        else:
            if any(psi.images[E1.total.mu.images[t]] != E2.total.mu.images[t] for t in E1.base.t_group.elements()):
                continue
        return psi
    return None


# Baer sum

def baer_sum(E1: SingularExtensionA10, E2: SingularExtensionA10) -> SingularExtensionA10:
    """Fibre product over ``T``, then the quotient by the antidiagonal copy of ``A``."""
    if E1.base is not E2.base:
        raise GroupMismatch("Baer sum needs extensions of the same crossed module")
    X, A = E1.base, E1.coefficients
    T, G = X.t_group, X.g_group
    P1, P2 = E1.total.t_group, E2.total.t_group
    n1 = P1.order
    D = FiniteGroup.direct_product(P1, P2)
    p1, p2 = E1.projection.images, E2.projection.images
    fibre = [x + n1 * y for y in P2.elements() for x in P1.elements() if p1[x] == p2[y]]
    F, f_inc = D.subgroup(fibre)
    pos = {v: i for i, v in enumerate(f_inc.images)}
    i1, i2 = E1.inclusion.images, E2.inclusion.images
    anti = [pos[i1[a] + n1 * i2[A.neg(a)]] for a in A.group.elements()]
    Q, q = F.quotient(anti)
    # diagonal G-action on the fibre product, pushed to the quotient
    maps = []
    for g in G.elements():
        m = [0] * Q.order
        for i, v in enumerate(f_inc.images):
            x, y = v % n1, v // n1
            w = pos[E1.total.act(g, x) + n1 * E2.total.act(g, y)]
            m[q.images[i]] = q.images[w]
        maps.append(m)
    proj_q = [0] * Q.order
    for i, v in enumerate(f_inc.images):
        proj_q[q.images[i]] = p1[v % n1]
    inc_q = [q.images[pos[i1[a]]] for a in A.group.elements()]
    sect = [q.images[pos[E1.section(t) + n1 * E2.section(t)]] for t in T.elements()]
    a_of = {v: a for a, v in enumerate(inc_q)}
    # read normalized data off the section
    cocycle = {}
    for t in range(1, T.order):
        for s in range(1, T.order):
            z = Q.table[Q.table[sect[t]][sect[s]]][Q.inverse[sect[T.table[t][s]]]]
            if a_of[z]:
                cocycle[(t, s)] = a_of[z]
    lift = [tuple(a_of[Q.table[maps[g][sect[t]]][Q.inverse[sect[X.act(g, t)]]]] for t in T.elements()) for g in G.elements()]
    E = build_a10(X, A, cocycle, lift)
    if E is None:
        raise AssertionError("Baer sum is not a crossed module")
    # the normalized model is isomorphic to the quotient via (a, t) -> a.sigma(t)
    nA = A.group.order
    iso = [Q.table[inc_q[x % nA]][sect[x // nA]] for x in E.total.t_group.elements()]
    if GroupHom(E.total.t_group, Q, iso, check=False).first_failure() is not None or sorted(iso) != list(Q.elements()):
        raise AssertionError("Baer sum model is not isomorphic to the quotient")
    if any(iso[E.total.act(g, x)] != maps[g][iso[x]] for g in G.elements() for x in E.total.t_group.elements()):
        raise AssertionError("Baer sum model is not G-isomorphic to the quotient")
    if any(proj_q[iso[x]] != x // nA for x in E.total.t_group.elements()):
        raise AssertionError("Baer sum model does not lie over T")
    return E


def split_extension_a10(X: CrossedModule, A: PiCoefficients) -> SingularExtensionA10:
    A_ = _a10_coefficients(X, A)
    zero = [tuple([0] * X.t_group.order) for _ in X.g_group.elements()]
    E = build_a10(X, A_, {}, zero)
    assert E is not None
    return E


# relative extensions

@dataclass(frozen=True, eq=False)
class RelativeExtension:
    """``0 -> A -> M -> G -> G' -> 1`` with ``mu : M -> G`` a crossed module."""

    surjection: GroupHom  # f : G -> G'
    coefficients: FiniteCoefficients  # over G'
    xmod: CrossedModule  # (M, G, mu)
    inclusion: GroupHom  # A -> M

    def validate(self) -> bool:
        f, Y = self.surjection, self.xmod
        A = self.coefficients
        inc = self.inclusion.images
        if not (self.inclusion.is_injective() and sorted(inc) == sorted(Y.mu.kernel())):
            return False
        if sorted(set(Y.mu.image())) != sorted(f.kernel()):
            return False
        validate_crossed_module(Y)
        return all(
            Y.act(g, inc[a]) == inc[A.action[f.images[g]][a]] for g in Y.g_group.elements() for a in A.group.elements()
        )


@dataclass
class RelativeClassification:
    extensions: list
    classes: list
    a10_classes: list
    expected_order: int | None = None

    @property
    def count(self) -> int:
        return len(self.classes)


def aspherical_xmod(f: GroupHom) -> CrossedModule:
    if not f.is_surjective():
        raise NotSurjective("relative extensions need a surjection")
    return CrossedModule.from_surjection(f)


def alpha(E: SingularExtensionA10, f: GroupHom, coeffs: FiniteCoefficients) -> RelativeExtension:
    """``(T', G, mu')`` over ``Phi_f = (ker f, G, i)`` gives ``0 -> A -> T' -> G -> G' -> 1``."""
    Y = E.total
    i = E.base.mu.images
    mu = GroupHom(Y.t_group, Y.g_group, [i[t] for t in E.projection.images], check=False)
    M = CrossedModule(Y.t_group, Y.g_group, mu, Y.action)
    return RelativeExtension(f, coeffs, M, E.inclusion)


def alpha_inverse(R: RelativeExtension, X: CrossedModule, A: FiniteCoefficients) -> SingularExtensionA10:
    """Factor ``mu : M -> G`` through ``ker f`` and read off normalized data along ``a + |A| t``."""
    Y = R.xmod
    nA = A.group.order
    pos = {g: k for k, g in enumerate(X.mu.images)}
    proj = GroupHom(Y.t_group, X.t_group, [pos[Y.mu.images[m]] for m in Y.t_group.elements()], check=False)
    T = X.t_group
    P = Y.t_group
    sect = [nA * t for t in T.elements()]
    a_of = {v: a for a, v in enumerate(R.inclusion.images)}
    cocycle = {}
    for t in range(1, T.order):
        for s in range(1, T.order):
            z = P.table[P.table[sect[t]][sect[s]]][P.inverse[sect[T.table[t][s]]]]
            if a_of[z]:
                cocycle[(t, s)] = a_of[z]
    lift = [tuple(a_of[P.table[Y.act(g, sect[t])][P.inverse[sect[X.act(g, t)]]]] for t in T.elements()) for g in X.g_group.elements()]
    assert proj.first_failure() is None
    E = build_a10(X, A, cocycle, lift)
    assert E is not None
    return E


def enumerate_relative(f: GroupHom, A: GModule, expected_order: int | None = None) -> RelativeClassification:
    """Relative extensions of ``f`` by the ``G'``-module ``A``, through the bijection with ``Phi_f``.

    Every extension is validated on its own terms and mapped back; classes
    are compared with the classes of ``(A, 1, 0)``-extensions of ``Phi_f``.
    When ``expected_order`` is given the class count must equal it.
    """
    if A.group != f.target:
        raise GroupMismatch("coefficients must be a module over the target of f")
    X = aspherical_xmod(f)
    coeffs = finite_coefficients(A)
    if coeffs.group.order * X.t_group.order > REL_CAP:
        raise CapExceeded(f"relative extensions limited to |A||ker f| <= {REL_CAP}")
    Ac = validate_pi_coefficients(X, A.pullback(f))
    a10 = enumerate_singular_a10(X, Ac)
    rel = []
    for E in a10:
        R = alpha(E, f, coeffs)
        if not R.validate():
            raise AssertionError("alpha produced an invalid relative extension")
        back = alpha_inverse(R, X, E.coefficients)
        if back.key != E.key:
            raise AssertionError("alpha is not inverted elementwise")
        rel.append(R)
    a10_classes = classify_congruence(a10, "a10")
    classes = _classify_relative(rel, X, a10)
    if expected_order is not None and len(classes) != expected_order:
        raise AssertionError(f"{len(classes)} classes, expected {expected_order}")
    return RelativeClassification(rel, classes, a10_classes, expected_order)


def _classify_relative(rel: list, X: CrossedModule, a10: list) -> list[CongruenceClass]:
    """Congruence of relative extensions: isomorphisms of ``M`` over ``A`` and ``G``, by search."""
    classes: list[CongruenceClass] = []
    for R, E in zip(rel, a10):
        for cls in classes:
            if _relative_congruent(R, cls.representative[0], X):
                cls.members.append((R, E))
                break
        else:
            classes.append(CongruenceClass((R, E), [(R, E)]))
    return classes


def _relative_congruent(R1: RelativeExtension, R2: RelativeExtension, X: CrossedModule) -> bool:
    M1, M2 = R1.xmod, R2.xmod
    A = R1.coefficients
    nA = A.group.order
    n = X.t_group.order
    inc1, inc2 = R1.inclusion.images, R2.inclusion.images
    # an isomorphism over A and G is determined by where the fixed transversal goes
    for h in _set_maps(n, nA):
        images = [0] * M1.t_group.order
        for x in M1.t_group.elements():
            a, t = x % nA, x // nA
            images[x] = M2.t_group.table[inc2[A.add(a, h[t])]][nA * t]
        if any(images[inc1[a]] != inc2[a] for a in A.group.elements()):
            continue
        psi = GroupHom(M1.t_group, M2.t_group, images, check=False)
        if psi.first_failure() is not None:
            continue
        if any(M2.mu.images[images[x]] != M1.mu.images[x] for x in M1.t_group.elements()):
            continue
        if any(images[M1.act(g, x)] != M2.act(g, images[x]) for g in M1.g_group.elements() for x in M1.t_group.elements()):
            continue
        return True
    return False
