"""Bar (co)chains of the levels of ``N^{-1}(T, G, mu)`` and the beta complexes.

Entry ``(p, q)`` of the nerve bicomplex is the normalized bar group
``C_q(N_p, A)`` (or ``C^q``), with ``N_p`` acting on ``A`` through
``N_p -> G -> pi_1``.  The vertical differential is the bar differential and
the horizontal one is the alternating sum of the face maps.

The constant simplicial group on ``G`` sits inside as the tuples whose
entries all have trivial ``T``-part; the beta complexes are the complementary
coordinates (a quotient complex for chains, a subcomplex for cochains).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..algebra.abelian import AbelianMap, PresentedAbelianGroup
from ..algebra.complexes import ChainComplex, ChainMap
from ..algebra.matrix import IntMatrix
from ..config import DEFAULT_BUDGET, Budget
from ..errors import BudgetExceeded
from ..groups.bar import _faces, tuple_index
from ..xmod.coefficients import PiCoefficients
from ..xmod.crossed import CrossedModule
from . import cache as _cache
from .bicomplex import Bicomplex, totalize
from .nerve import n_inverse


def total_ranks(X: CrossedModule, na: int, max_total: int) -> list[int]:
    nT, nG = X.t_group.order, X.g_group.order
    return [sum((nT**p * nG - 1) ** (n - p) * na for p in range(n + 1)) for n in range(max_total + 1)]


def _check_budget(X: CrossedModule, na: int, max_total: int, budget: Budget) -> None:
    for n, r in enumerate(total_ranks(X, na, max_total)):
        if r > budget.total_rank:
            raise BudgetExceeded(f"total degree {n} has rank {r} > {budget.total_rank}")


class _Levels:
    """Group data for levels ``0..top`` and the coefficient action on each."""

    def __init__(self, X: CrossedModule, A: PiCoefficients, top: int, budget: Budget):
        self.X = X
        self.M = A.module.diagonalized()
        self.na = self.M.coefficients.generators
        self.orders = self.M.coefficients.orders
        self.S = n_inverse(X, top, budget, check=False) if top >= 0 else None
        proj = A.projection.images
        nT = X.t_group.order
        self.trivial = self.M.is_trivial()
        self.act = []
        for p in range(top + 1):
            H = self.S.levels[p]
            div = nT**p
            self.act.append([self.M.action[proj[x // div]].matrix for x in H.elements()])

    def order(self, p: int) -> int:
        return self.S.levels[p].order


def _add_action(rows, base_row: int, col: int, sign: int, mat: IntMatrix | None, na: int) -> None:
    for j in range(na):
        r = rows[base_row + j]
        if mat is None:
            r[col + j] = r.get(col + j, 0) + sign
        else:
            for k, v in mat.row(j).items():
                r[col + k] = r.get(col + k, 0) + sign * v


def _vertical_chain(L: _Levels, p: int, q: int) -> list[dict]:
    H = L.S.levels[p]
    base = H.order - 1
    na = L.na
    act = L.act[p]
    rows = [dict() for _ in range(base**q * na)]
    for k, t in enumerate(product(range(1, H.order), repeat=q)):
        for sign, face, a in _faces(H, t):
            fi = tuple_index(face, base) * na
            mat = None if (a is None or L.trivial) else act[H.inverse[a]]
            _add_action(rows, k * na, fi, sign, mat, na)
    return rows


def _vertical_cochain(L: _Levels, p: int, q: int) -> list[dict]:
    H = L.S.levels[p]
    base = H.order - 1
    na = L.na
    act = L.act[p]
    rows = [dict() for _ in range(base**q * na)]
    for k, t in enumerate(product(range(1, H.order), repeat=q + 1)):
        for sign, face, a in _faces(H, t):
            fi = tuple_index(face, base) * na
            mat = None if (a is None or L.trivial) else act[a]
            for j in range(na):
                r = rows[fi + j]
                if mat is None:
                    r[k * na + j] = r.get(k * na + j, 0) + sign
                else:
                    for c, v in mat.row(j).items():
                        r[k * na + c] = r.get(k * na + c, 0) + sign * v
    return rows


def _face_images(L: _Levels, p: int) -> list[tuple]:
    return [f.images for f in L.S.faces[p]]


def _horizontal(L: _Levels, p: int, q: int, cochain: bool) -> list[dict]:
    """Chain: ``(p, q) -> (p-1, q)``.  Cochain: ``(p-1, q) -> (p, q)`` (rows indexed by level ``p-1``)."""
    na = L.na
    hi_base = L.order(p) - 1
    lo_base = L.order(p - 1) - 1
    faces = _face_images(L, p)
    nrows = (lo_base if cochain else hi_base) ** q * na
    rows = [dict() for _ in range(nrows)]
    for k, t in enumerate(product(range(1, hi_base + 1), repeat=q)):
        for i, f in enumerate(faces):
            img = tuple(f[x] for x in t)
            if 0 in img:
                continue
            fi = tuple_index(img, lo_base)
            sign = -1 if i % 2 else 1
            for j in range(na):
                if cochain:
                    r, c = rows[fi * na + j], k * na + j
                else:
                    r, c = rows[k * na + j], fi * na + j
                r[c] = r.get(c, 0) + sign
    return rows


def nerve_bicomplex(
    X: CrossedModule, A: PiCoefficients, max_total: int, cochain: bool = False, budget: Budget = DEFAULT_BUDGET
) -> Bicomplex:
    """Entries ``(p, q)`` for ``p + q <= max_total``."""
    M = A.module.diagonalized()
    na = M.coefficients.generators
    _check_budget(X, na, max_total, budget)
    L = _Levels(X, A, max_total - 1, budget)
    orders = list(M.coefficients.orders)

    def group(p, q):
        if q == 0:
            return PresentedAbelianGroup.diagonal(orders)
        return PresentedAbelianGroup.diagonal(orders * (L.order(p) - 1) ** q)

    entries = {(p, n - p): group(p, n - p) for n in range(max_total + 1) for p in range(n + 1)}
    horizontal, vertical = {}, {}
    for (p, q), grp in entries.items():
        if q >= 1:
            rows = _vertical_cochain(L, p, q - 1) if cochain else _vertical_chain(L, p, q)
            src, tgt = ((p, q - 1), (p, q)) if cochain else ((p, q), (p, q - 1))
            vertical[src] = AbelianMap(entries[src], entries[tgt], IntMatrix.from_sparse(entries[src].generators, entries[tgt].generators, rows), check=False)
        if p >= 1:
            src, tgt = ((p - 1, q), (p, q)) if cochain else ((p, q), (p - 1, q))
            if q == 0:
                # alternating sum of p + 1 identities
                mat = IntMatrix.identity(na) if p % 2 == 0 else IntMatrix.zeros(na, na)
            else:
                rows = _horizontal(L, p, q, cochain)
                mat = IntMatrix.from_sparse(entries[src].generators, entries[tgt].generators, rows)
            horizontal[src] = AbelianMap(entries[src], entries[tgt], mat, check=False)
    return Bicomplex(entries, horizontal, vertical, extent=max_total, cochain=cochain)


def constant_indices(X: CrossedModule, na: int, max_total: int) -> dict[int, list[int]]:
    """Generators of each total degree coming from tuples with trivial ``T``-parts."""
    nT, nG = X.t_group.order, X.g_group.order
    out = {}
    for n in range(max_total + 1):
        idx, off = [], 0
        for p in range(n + 1):
            q = n - p
            size = nT**p * nG
            base = size - 1
            gonly = [x for x in range(1, size) if x % nT**p == 0]
            if q == 0:
                idx.extend(off + j for j in range(na))
            else:
                for t in product(gonly, repeat=q):
                    k = tuple_index(t, base)
                    idx.extend(off + k * na + j for j in range(na))
            off += base**q * na
        out[n] = idx
    return out


# totalized complexes, memoized in process and optionally on disk

_MEMO: dict = {}


def _key(X: CrossedModule, A: PiCoefficients, max_total: int, cochain: bool, sign: str) -> str:
    return _cache.make_key(X.fingerprint(), A.module.fingerprint(), A.projection.images, max_total, cochain, sign)


def _memo_key(X: CrossedModule, A: PiCoefficients, cochain: bool, sign: str):
    return (X.fingerprint(), A.module.fingerprint(), A.projection.images, cochain, sign)


def nerve_total_complex(
    X: CrossedModule,
    A: PiCoefficients,
    max_total: int,
    cochain: bool = False,
    budget: Budget = DEFAULT_BUDGET,
    cache_dir: str | None = None,
    sign: str = "q",
) -> ChainComplex:
    """``Tot`` of the nerve bicomplex through total degree ``max_total``."""
    mk = _memo_key(X, A, cochain, sign)
    hit = _MEMO.get(mk)
    if hit is not None and hit.hi >= max_total:
        return hit.truncated(max_total)
    key = _key(X, A, max_total, cochain, sign)
    cache_dir = _cache.resolve_dir(cache_dir)
    C = _cache.load(cache_dir, key) if cache_dir else None
    if C is None:
        C = totalize(nerve_bicomplex(X, A, max_total, cochain, budget), max_total, sign)
        if cache_dir:
            _cache.store(cache_dir, key, C)
    _MEMO[mk] = C
    return C


def clear_memo() -> None:
    _MEMO.clear()


@dataclass
class BetaData:
    """``0 -> L -> Tot -> beta -> 0`` (chains) or ``0 -> beta -> Tot -> L -> 0`` (cochains)."""

    complex: ChainComplex
    ambient: ChainComplex
    constant: ChainComplex
    inclusion: ChainMap
    projection: ChainMap


def _select(C: ChainComplex, idx: dict[int, list[int]]) -> ChainComplex:
    groups = {n: PresentedAbelianGroup.diagonal([C.group(n).orders[i] for i in idx[n]]) for n in C.degrees}
    diffs = {}
    step = 1 if C.cochain else -1
    for n, d in C.differentials.items():
        m = d.matrix.select_rows(idx[n]).select_cols(idx[n + step])
        diffs[n] = AbelianMap(groups[n], groups[n + step], m, check=False)
    return ChainComplex(groups, diffs, cochain=C.cochain)


def _coordinate_map(src: ChainComplex, tgt: ChainComplex, idx: dict[int, list[int]], into: bool) -> ChainMap:
    maps = {}
    for n in src.degrees:
        if into:
            rows = [{i: 1} for i in idx[n]]
        else:
            pos = {i: k for k, i in enumerate(idx[n])}
            rows = [({pos[i]: 1} if i in pos else {}) for i in range(src.group(n).generators)]
        maps[n] = AbelianMap(src.group(n), tgt.group(n), IntMatrix.from_sparse(src.group(n).generators, tgt.group(n).generators, rows), check=False)
    return ChainMap(src, tgt, maps)


def beta_sequence(
    X: CrossedModule,
    A: PiCoefficients,
    max_total: int,
    cochain: bool = False,
    budget: Budget = DEFAULT_BUDGET,
    cache_dir: str | None = None,
) -> BetaData:
    B = nerve_total_complex(X, A, max_total, cochain, budget, cache_dir)
    na = A.module.diagonalized().coefficients.generators
    sub = constant_indices(X, na, max_total)
    rest = {}
    for n in B.degrees:
        s = set(sub[n])
        rest[n] = [i for i in range(B.group(n).generators) if i not in s]
    L = _select(B, sub)
    beta = _select(B, rest)
    if cochain:
        incl = _coordinate_map(beta, B, rest, into=True)
        proj = _coordinate_map(B, L, sub, into=False)
    else:
        incl = _coordinate_map(L, B, sub, into=True)
        proj = _coordinate_map(B, beta, rest, into=False)
    return BetaData(beta, B, L, incl, proj)


def beta_chain(X, A, max_total: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> ChainComplex:
    """``beta_*(X, A)``: the cokernel of the constant part, through total degree ``max_total``."""
    return beta_sequence(X, A, max_total, False, budget, cache_dir).complex


def beta_cochain(X, A, max_total: int, budget: Budget = DEFAULT_BUDGET, cache_dir: str | None = None) -> ChainComplex:
    """``beta^*(X, A)``: the kernel of restriction to the constant part."""
    return beta_sequence(X, A, max_total, True, budget, cache_dir).complex
