"""The simplicial group ``N^{-1}(T, G, mu)`` and Moore complexes.

Level ``n`` is ``T^n x| G`` with ``G`` acting diagonally.  The element
``(t_1, ..., t_n, g)`` has index ``t_1 + |T| t_2 + ... + |T|^{n-1} t_n + |T|^n g``.
Faces: ``d_0`` sends it to ``(t_2 t_1^{-1}, ..., t_n t_1^{-1}, mu(t_1) g)`` and
``d_i`` (``i > 0``) deletes ``t_i``.  Degeneracies: ``s_0`` inserts ``1`` in
front and ``s_i`` (``i > 0``) repeats ``t_i``, which is what the simplicial
identities force for these faces.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import DEFAULT_BUDGET, Budget
from ..errors import BudgetExceeded, MooreLengthExceeded, SimplicialIdentityFailure
from ..groups.finite import FiniteGroup, GroupAction, GroupHom, semidirect_product
from ..xmod.crossed import CrossedModule, PrecrossedModule, validate_crossed_module


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialGroup:
    """Levels ``0..max_level``; ``faces[n][i] : level n -> n-1`` and ``degeneracies[n][i] : level n -> n+1``."""

    levels: tuple
    faces: dict
    degeneracies: dict

    @property
    def max_level(self) -> int:
        return len(self.levels) - 1

    def identity_failure(self):
        """First simplicial identity that fails, as ``(name, n, i, j, x)``, or ``None``."""
        d, s = self.faces, self.degeneracies
        top = self.max_level
        for n in range(2, top + 1):
            for j in range(n + 1):
                for i in range(j):
                    a, b = d[n][j].then(d[n - 1][i]).images, d[n][i].then(d[n - 1][j - 1]).images
                    if a != b:
                        x = next(k for k in range(len(a)) if a[k] != b[k])
                        return ("d_i d_j = d_{j-1} d_i", n, i, j, x)
        for n in range(top):
            for i in range(n + 1):
                for j in range(n + 2):
                    comp = s[n][i].then(d[n + 1][j]).images
                    if j in (i, i + 1):
                        want = tuple(self.levels[n].elements())
                        name = "d_j s_j = d_{j+1} s_j = id"
                    elif j < i:
                        want = d[n][j].then(s[n - 1][i - 1]).images
                        name = "d_j s_i = s_{i-1} d_j"
                    else:
                        want = d[n][j - 1].then(s[n - 1][i]).images
                        name = "d_j s_i = s_i d_{j-1}"
                    if comp != want:
                        x = next(k for k in range(len(comp)) if comp[k] != want[k])
                        return (name, n, i, j, x)
        for n in range(top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    a = s[n][j].then(s[n + 1][i]).images
                    b = s[n][i].then(s[n + 1][j + 1]).images
                    if a != b:
                        x = next(k for k in range(len(a)) if a[k] != b[k])
                        return ("s_i s_j = s_{j+1} s_i", n, i, j, x)
        return None

    def check(self) -> "TruncatedSimplicialGroup":
        for maps in (self.faces, self.degeneracies):
            for n, fs in maps.items():
                for i, f in enumerate(fs):
                    bad = f.first_failure()
                    if bad is not None:
                        raise SimplicialIdentityFailure(f"map {i} at level {n} is not a homomorphism at {bad}")
        bad = self.identity_failure()
        if bad is not None:
            raise SimplicialIdentityFailure(f"{bad[0]} fails at level {bad[1]} (i={bad[2]}, j={bad[3]}, x={bad[4]})")
        return self


def _digits(x: int, base: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(x % base)
        x //= base
    return out


def _encode(ts, g: int, base: int) -> int:
    x = g
    for t in reversed(ts):
        x = x * base + t
    return x


def _power_with_diagonal_action(X: PrecrossedModule, n: int) -> tuple[FiniteGroup, GroupAction]:
    T, G = X.t_group, X.g_group
    Tn = FiniteGroup.trivial()
    for _ in range(n):
        Tn = FiniteGroup.direct_product(Tn, T)
    m = X.action.maps
    maps = [
        [_encode([m[g][t] for t in _digits(x, T.order, n)], 0, T.order) for x in Tn.elements()]
        for g in G.elements()
    ]
    return Tn, GroupAction(G, Tn, maps, check=False)


def level_group(X: PrecrossedModule, n: int, budget: Budget = DEFAULT_BUDGET) -> FiniteGroup:
    size = X.t_group.order**n * X.g_group.order
    if size > budget.level_order:
        raise BudgetExceeded(f"level {n} has order {size} > {budget.level_order}")
    if n == 0:
        return X.g_group
    Tn, act = _power_with_diagonal_action(X, n)
    return semidirect_product(Tn, X.g_group, act)[0]


def n_inverse(X: CrossedModule, max_level: int, budget: Budget = DEFAULT_BUDGET, check: bool = True) -> TruncatedSimplicialGroup:
    """Levels ``T^n x| G`` for ``n <= max_level`` with the standard faces and degeneracies."""
    T, G = X.t_group, X.g_group
    b = T.order
    mu = X.mu.images
    levels = tuple(level_group(X, n, budget) for n in range(max_level + 1))
    faces, degens = {}, {}
    for n in range(1, max_level + 1):
        src, tgt = levels[n], levels[n - 1]
        fs = []
        d0 = []
        for x in src.elements():
            ts, g = _digits(x, b, n), x // b**n
            inv1 = T.inverse[ts[0]]
            d0.append(_encode([T.table[t][inv1] for t in ts[1:]], G.table[mu[ts[0]]][g], b))
        fs.append(GroupHom(src, tgt, d0, check=False))
        for i in range(1, n + 1):
            di = []
            for x in src.elements():
                ts, g = _digits(x, b, n), x // b**n
                di.append(_encode(ts[: i - 1] + ts[i:], g, b))
            fs.append(GroupHom(src, tgt, di, check=False))
        faces[n] = fs
    for n in range(max_level):
        src, tgt = levels[n], levels[n + 1]
        ss = []
        for i in range(n + 1):
            si = []
            for x in src.elements():
                ts, g = _digits(x, b, n), x // b**n
                # s_0 inserts 1 in front, s_i (i > 0) repeats t_i
                si.append(_encode(ts[:i] + [ts[i - 1] if i else 0] + ts[i:], g, b))
            ss.append(GroupHom(src, tgt, si, check=False))
        degens[n] = ss
    S = TruncatedSimplicialGroup(levels, faces, degens)
    if check:
        S.check()
    return S


def constant_simplicial_group(G: FiniteGroup, max_level: int) -> TruncatedSimplicialGroup:
    ident = GroupHom.identity(G)
    return TruncatedSimplicialGroup(
        tuple([G] * (max_level + 1)),
        {n: [ident] * (n + 1) for n in range(1, max_level + 1)},
        {n: [ident] * (n + 1) for n in range(max_level)},
    )


def moore_subgroup(S: TruncatedSimplicialGroup, n: int) -> list[int]:
    """``N_n = intersection of ker d_i for i > 0``."""
    H = S.levels[n]
    return [x for x in H.elements() if all(S.faces[n][i].images[x] == 0 for i in range(1, n + 1))]


def moore_complex(S: TruncatedSimplicialGroup) -> CrossedModule:
    """``(N_1, G_0, d_0|)`` with ``G_0`` acting through ``s_0``; fails if some ``N_n`` (``n >= 2``) is nontrivial."""
    if S.max_level < 2:
        raise ValueError("levels up to 2 are needed")
    for n in range(2, S.max_level + 1):
        if len(moore_subgroup(S, n)) > 1:
            raise MooreLengthExceeded(n)
    H1, G0 = S.levels[1], S.levels[0]
    N1, incl = H1.subgroup(moore_subgroup(S, 1))
    pos = {x: i for i, x in enumerate(incl.images)}
    s0 = S.degeneracies[0][0].images
    mu = GroupHom(N1, G0, [S.faces[1][0].images[x] for x in incl.images], check=False)
    maps = [[pos[H1.conj(s0[g], x)] for x in incl.images] for g in G0.elements()]
    return validate_crossed_module(CrossedModule(N1, G0, mu, GroupAction(G0, N1, maps, check=False)))
