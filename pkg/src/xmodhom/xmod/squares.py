"""Crossed squares and crossed modules in cat1-groups.

A crossed square is drawn

    L --lam--> M
    |          |
   lam2        mu
    v          v
    N --nu---> P

with ``P`` acting on ``L``, ``M`` and ``N`` (and ``M``, ``N`` acting on
everything through ``mu`` and ``nu``) and a pairing ``h : M x N -> L``.  The
pairing is stored as a full table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import Cat1AxiomFailure, SquareAxiomFailure
from ..groups.finite import FiniteGroup, GroupAction, GroupHom, homomorphisms, order_profile, semidirect_product
from .crossed import Cat1Group


@dataclass(frozen=True, eq=False)
class CrossedSquare:
    L: FiniteGroup
    M: FiniteGroup
    N: FiniteGroup
    P: FiniteGroup
    lam: GroupHom  # L -> M
    lam2: GroupHom  # L -> N
    mu: GroupHom  # M -> P
    nu: GroupHom  # N -> P
    act_L: GroupAction  # P on L
    act_M: GroupAction  # P on M
    act_N: GroupAction  # P on N
    h: tuple  # h[m][n] in L

    # derived actions
    def m_on_l(self, m, l):
        return self.act_L.maps[self.mu.images[m]][l]

    def n_on_l(self, n, l):
        return self.act_L.maps[self.nu.images[n]][l]

    def n_on_m(self, n, m):
        return self.act_M.maps[self.nu.images[n]][m]

    def m_on_n(self, m, n):
        return self.act_N.maps[self.mu.images[m]][n]

    def transpose(self) -> "CrossedSquare":
        """Swap ``M`` and ``N``; the pairing becomes ``(n, m) -> h(m, n)^{-1}``."""
        L = self.L
        hT = tuple(tuple(L.inverse[self.h[m][n]] for m in self.M.elements()) for n in self.N.elements())
        return CrossedSquare(L, self.N, self.M, self.P, self.lam2, self.lam, self.nu, self.mu, self.act_L, self.act_N, self.act_M, hT)


@dataclass
class ValidationReport:
    checked: list = field(default_factory=list)
    failure: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def _xmod_failure(src: FiniteGroup, tgt: FiniteGroup, d: GroupHom, act) -> tuple | None:
    """First failure of the crossed-module axioms for ``d`` with ``act(y, x)`` = ``y.x``."""
    for y in tgt.elements():
        for x in src.elements():
            if d.images[act(y, x)] != tgt.conj(y, d.images[x]):
                return ("equivariance", (y, x))
    for x in src.elements():
        for x2 in src.elements():
            if act(d.images[x], x2) != src.conj(x, x2):
                return ("peiffer", (x, x2))
    return None


def crossed_square_validate(S: CrossedSquare, raise_on_failure: bool = True) -> ValidationReport:
    """Check every crossed-square axiom; the failure names the axiom and a witness."""
    rep = ValidationReport()
    L, M, N, P = S.L, S.M, S.N, S.P

    def fail(axiom, witness):
        rep.failure = (axiom, witness)
        if raise_on_failure:
            raise SquareAxiomFailure(axiom, witness)
        return rep

    for name, f in (("lam", S.lam), ("lam2", S.lam2), ("mu", S.mu), ("nu", S.nu)):
        bad = f.first_failure()
        if bad is not None:
            return fail(f"{name} homomorphism", bad)
    rep.checked.append("homomorphisms")
    for l in L.elements():
        if S.mu.images[S.lam.images[l]] != S.nu.images[S.lam2.images[l]]:
            return fail("commutativity", l)
    rep.checked.append("commutativity")
    checks = (
        ("lam crossed module", L, M, S.lam, S.m_on_l),
        ("lam2 crossed module", L, N, S.lam2, S.n_on_l),
        ("mu crossed module", M, P, S.mu, lambda p, m: S.act_M.maps[p][m]),
        ("nu crossed module", N, P, S.nu, lambda p, n: S.act_N.maps[p][n]),
    )
    for name, src, tgt, d, act in checks:
        bad = _xmod_failure(src, tgt, d, act)
        if bad is not None:
            return fail(f"{name} {bad[0]}", bad[1])
        rep.checked.append(name)
    for p in P.elements():
        for l in L.elements():
            pl = S.act_L.maps[p][l]
            if S.lam.images[pl] != S.act_M.maps[p][S.lam.images[l]]:
                return fail("lam P-equivariant", (p, l))
            if S.lam2.images[pl] != S.act_N.maps[p][S.lam2.images[l]]:
                return fail("lam2 P-equivariant", (p, l))
    rep.checked.append("P-equivariance")
    h = S.h
    for m in M.elements():
        for n in N.elements():
            if S.lam.images[h[m][n]] != M.table[m][S.n_on_m(n, M.inverse[m])]:
                return fail("lam h(m,n) = m (n.m^-1)", (m, n))
            if S.lam2.images[h[m][n]] != N.table[S.m_on_n(m, n)][N.inverse[n]]:
                return fail("lam2 h(m,n) = (m.n) n^-1", (m, n))
    rep.checked.append("boundary of h")
    for l in L.elements():
        for n in N.elements():
            if h[S.lam.images[l]][n] != L.table[l][S.n_on_l(n, L.inverse[l])]:
                return fail("h(lam l, n) = l (n.l^-1)", (l, n))
        for m in M.elements():
            if h[m][S.lam2.images[l]] != L.table[S.m_on_l(m, l)][L.inverse[l]]:
                return fail("h(m, lam2 l) = (m.l) l^-1", (m, l))
    rep.checked.append("h on images")
    for m in M.elements():
        for m2 in M.elements():
            for n in N.elements():
                if h[M.table[m][m2]][n] != L.table[S.m_on_l(m, h[m2][n])][h[m][n]]:
                    return fail("h(mm', n) = m.h(m', n) h(m, n)", (m, m2, n))
    for m in M.elements():
        for n in N.elements():
            for n2 in N.elements():
                if h[m][N.table[n][n2]] != L.table[h[m][n]][S.n_on_l(n, h[m][n2])]:
                    return fail("h(m, nn') = h(m, n) n.h(m, n')", (m, n, n2))
    rep.checked.append("bilinearity")
    for p in P.elements():
        for m in M.elements():
            for n in N.elements():
                if h[S.act_M.maps[p][m]][S.act_N.maps[p][n]] != S.act_L.maps[p][h[m][n]]:
                    return fail("h P-equivariant", (p, m, n))
    rep.checked.append("h P-equivariant")
    return rep


@dataclass(frozen=True, eq=False)
class Cat1CrossedModule:
    """A crossed module ``alpha : H -> H'`` in cat1-groups, with ``H'`` acting on ``H``."""

    source: Cat1Group
    target: Cat1Group
    alpha: GroupHom
    action: GroupAction  # H' on H

    def validate(self) -> "Cat1CrossedModule":
        self.source.validate()
        self.target.validate()
        H, Hp, a, m = self.source.group, self.target.group, self.alpha.images, self.action.maps
        for x in H.elements():
            for d, dp, name in ((self.source.d0, self.target.d0, "d0"), (self.source.d1, self.target.d1, "d1")):
                if a[d.images[x]] != dp.images[a[x]]:
                    raise Cat1AxiomFailure(f"alpha commutes with {name}", x)
        bad = _xmod_failure(H, Hp, self.alpha, lambda y, x: m[y][x])
        if bad is not None:
            raise Cat1AxiomFailure(f"alpha crossed module {bad[0]}", bad[1])
        for y in Hp.elements():
            for x in H.elements():
                for d, dp, name in ((self.source.d0, self.target.d0, "d0"), (self.source.d1, self.target.d1, "d1")):
                    if d.images[m[y][x]] != m[dp.images[y]][d.images[x]]:
                        raise Cat1AxiomFailure(f"action compatible with {name}", (y, x))
        return self


def identity_cat1_xmod(C: Cat1Group) -> Cat1CrossedModule:
    """``id : C -> C`` with conjugation."""
    H = C.group
    return Cat1CrossedModule(C, C, GroupHom.identity(H), GroupAction.conjugation(H))


def cat1_xmod_to_square(X: Cat1CrossedModule) -> CrossedSquare:
    """The square ``T -> G`` over ``T' -> G'`` with ``h(g, t') = g . (t'.g^{-1})``."""
    H, Hp = X.source.group, X.target.group
    T, iT = H.subgroup(X.source.d0.kernel())
    G, iG = H.subgroup(X.source.d0.image())
    Tp, iTp = Hp.subgroup(X.target.d0.kernel())
    Gp, iGp = Hp.subgroup(X.target.d0.image())
    pos = lambda incl: {x: i for i, x in enumerate(incl.images)}
    pT, pG, pTp, pGp = pos(iT), pos(iG), pos(iTp), pos(iGp)
    a, m = X.alpha.images, X.action.maps
    lam = GroupHom(T, G, [pG[X.source.d1.images[x]] for x in iT.images], check=False)
    lam2 = GroupHom(T, Tp, [pTp[a[x]] for x in iT.images], check=False)
    mu = GroupHom(G, Gp, [pGp[a[x]] for x in iG.images], check=False)
    nu = GroupHom(Tp, Gp, [pGp[X.target.d1.images[x]] for x in iTp.images], check=False)
    act_L = GroupAction(Gp, T, [[pT[m[gp][x]] for x in iT.images] for gp in iGp.images], check=False)
    act_M = GroupAction(Gp, G, [[pG[m[gp][x]] for x in iG.images] for gp in iGp.images], check=False)
    act_N = GroupAction(Gp, Tp, [[pTp[Hp.conj(gp, x)] for x in iTp.images] for gp in iGp.images], check=False)
    h = tuple(
        tuple(pT[H.table[g][m[tp][H.inverse[g]]]] for tp in iTp.images)
        for g in iG.images
    )
    # top row T -> T', left column T -> G
    return CrossedSquare(T, G, Tp, Gp, lam, lam2, mu, nu, act_L, act_M, act_N, h).transpose()


def square_to_cat1_xmod(S: CrossedSquare) -> Cat1CrossedModule:
    """``(T x| G) -> (T' x| G')`` from a square with top row ``T -> T'`` and left column ``T -> G``."""
    T, Tp, G, Gp = S.L, S.M, S.N, S.P
    act_TG = S.act_L.pullback(S.nu)  # G on T through beta
    H, _, _, _ = semidirect_product(T, G, act_TG)
    Hp, _, _, _ = semidirect_product(Tp, Gp, S.act_M)
    nT, nTp = T.order, Tp.order

    def cat1(Hx, n, d):
        d0 = [n * (x // n) for x in Hx.elements()]
        d1 = [n * d.target.table[d.images[x % n]][x // n] for x in Hx.elements()]
        return Cat1Group(Hx, GroupHom(Hx, Hx, d0, check=False), GroupHom(Hx, Hx, d1, check=False))

    C = cat1(H, nT, S.lam2)
    Cp = cat1(Hp, nTp, S.mu)
    alpha = GroupHom(H, Hp, [S.lam.images[x % nT] + nTp * S.nu.images[x // nT] for x in H.elements()], check=False)
    maps = []
    for y in Hp.elements():
        tp, gp = y % nTp, y // nTp
        row = []
        for x in H.elements():
            t, g = x % nT, x // nT
            gt = S.act_L.maps[gp][t]
            tt = S.m_on_l(tp, gt)
            gg = S.act_N.maps[gp][g]
            row.append(T.table[tt][S.h[tp][gg]] + nT * gg)
        maps.append(row)
    return Cat1CrossedModule(C, Cp, alpha, GroupAction(Hp, H, maps, check=False))


def square_isomorphism(S: CrossedSquare, R: CrossedSquare):
    """Compatible isomorphisms ``(phi_L, phi_M, phi_N, phi_P)`` or ``None``."""
    for A, B in ((S.L, R.L), (S.M, R.M), (S.N, R.N), (S.P, R.P)):
        if A.order != B.order or order_profile(A) != order_profile(B):
            return None
    for fP in homomorphisms(S.P, R.P, bijective=True):
        for fM in homomorphisms(S.M, R.M, lambda s: [y for y in R.M.elements() if R.mu.images[y] == fP[S.mu.images[s]]], bijective=True):
            if any(fM[S.act_M.maps[p][m]] != R.act_M.maps[fP[p]][fM[m]] for p in S.P.elements() for m in S.M.elements()):
                continue
            for fN in homomorphisms(S.N, R.N, lambda s: [y for y in R.N.elements() if R.nu.images[y] == fP[S.nu.images[s]]], bijective=True):
                if any(fN[S.act_N.maps[p][n]] != R.act_N.maps[fP[p]][fN[n]] for p in S.P.elements() for n in S.N.elements()):
                    continue
                cand = lambda s: [
                    y for y in R.L.elements()
                    if R.lam.images[y] == fM[S.lam.images[s]] and R.lam2.images[y] == fN[S.lam2.images[s]]
                ]
                for fL in homomorphisms(S.L, R.L, cand, bijective=True):
                    if any(fL[S.act_L.maps[p][l]] != R.act_L.maps[fP[p]][fL[l]] for p in S.P.elements() for l in S.L.elements()):
                        continue
                    if all(fL[S.h[m][n]] == R.h[fM[m]][fN[n]] for m in S.M.elements() for n in S.N.elements()):
                        return fL, fM, fN, fP
    return None


def cat1_xmod_isomorphism(X: Cat1CrossedModule, Y: Cat1CrossedModule):
    """Compatible cat1 isomorphisms ``(phi, phi')`` of source and target, or ``None``."""
    H, Hp = X.source.group, X.target.group
    K, Kp = Y.source.group, Y.target.group
    if H.order != K.order or Hp.order != Kp.order:
        return None
    for fp in homomorphisms(Hp, Kp, bijective=True):
        if not all(
            fp[X.target.d0.images[x]] == Y.target.d0.images[fp[x]] and fp[X.target.d1.images[x]] == Y.target.d1.images[fp[x]]
            for x in Hp.elements()
        ):
            continue
        cand = lambda s: [y for y in K.elements() if Y.alpha.images[y] == fp[X.alpha.images[s]]]
        for f in homomorphisms(H, K, cand, bijective=True):
            if not all(
                f[X.source.d0.images[x]] == Y.source.d0.images[f[x]] and f[X.source.d1.images[x]] == Y.source.d1.images[f[x]]
                for x in H.elements()
            ):
                continue
            if all(f[X.action.maps[y][x]] == Y.action.maps[fp[y]][f[x]] for y in Hp.elements() for x in H.elements()):
                return f, fp
    return None


def trivial_square() -> CrossedSquare:
    one = FiniteGroup.trivial()
    idm = GroupHom.identity(one)
    act = GroupAction.trivial(one, one)
    return CrossedSquare(one, one, one, one, idm, idm, idm, idm, act, act, act, ((0,),))
