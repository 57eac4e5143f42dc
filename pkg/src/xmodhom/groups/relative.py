"""Relative and equivariant bar complexes.

For a surjection ``f : G -> G'`` the bar chain map ``C_*(G, A) -> C_*(G', A)``
sends a tuple ``tau`` to ``f(tau)`` (zero when some entry maps to the
identity).  Each nondegenerate fiber gets a representative (its first tuple);
the remaining tuples give coordinates on both the kernel of the chain map and
the cokernel of the cochain map, so both complexes stay diagonal.
"""

from __future__ import annotations

from itertools import product

from ..algebra.abelian import AbelianMap, PresentedAbelianGroup
from ..algebra.complexes import ChainComplex
from ..algebra.matrix import IntMatrix
from ..config import DEFAULT_BUDGET, Budget
from ..errors import NotSurjective
from .bar import bar_chain_complex, bar_cochain_complex, tuple_index
from .finite import FiniteGroup, GroupAction, GroupHom, semidirect_product
from .modules import GModule


def _fibers(f: GroupHom, q: int) -> tuple[list[int], list[int]]:
    """Per tuple of ``G``: image index in ``G'`` (``-1`` if degenerate), and the representative tuple."""
    G, H = f.source, f.target
    gb, hb = G.order - 1, H.order - 1
    img, rep = [], []
    first: dict[int, int] = {}
    for k, t in enumerate(product(range(1, G.order), repeat=q)):
        s = tuple(f.images[x] for x in t)
        if 0 in s:
            img.append(-1)
            rep.append(-1)
            continue
        j = tuple_index(s, hb) if q else 0
        img.append(j)
        rep.append(first.setdefault(j, k))
    assert gb**q == len(img)
    return img, rep


def _check(f: GroupHom, M: GModule) -> GModule:
    if not f.is_surjective():
        raise NotSurjective("relative (co)homology needs a surjection")
    return M.diagonalized().pullback(f)


def relative_chain_complex(f: GroupHom, M: GModule, max_degree: int, budget: Budget = DEFAULT_BUDGET) -> ChainComplex:
    """``ker(C_*(G, A) -> C_*(G', A))`` for a ``G'``-module ``M``, in degrees ``0..max_degree``."""
    MG = _check(f, M)
    C = bar_chain_complex(MG, max_degree, budget)
    orders = list(MG.coefficients.orders)
    na = len(orders)
    keep, fib = {}, {}
    for q in C.degrees:
        img, rep = _fibers(f, q)
        keep[q] = [k for k in range(len(img)) if rep[k] != k]
        fib[q] = rep
    groups = {q: PresentedAbelianGroup.diagonal(orders * len(keep[q])) for q in C.degrees}
    diffs = {}
    for q in range(1, max_degree + 1):
        rows_full = C.outgoing(q).matrix.sparse_rows()
        pos = {k: i for i, k in enumerate(keep[q - 1])}
        rows = []
        for k in keep[q]:
            r0 = fib[q][k]
            for j in range(na):
                r: dict = {}
                for c, v in rows_full[k * na + j].items():
                    r[c] = r.get(c, 0) + v
                if r0 >= 0:
                    for c, v in rows_full[r0 * na + j].items():
                        r[c] = r.get(c, 0) - v
                out = {}
                for c, v in r.items():
                    p = pos.get(c // na)
                    if v and p is not None:
                        out[p * na + c % na] = v
                rows.append(out)
        src, tgt = groups[q], groups[q - 1]
        diffs[q] = AbelianMap(src, tgt, IntMatrix.from_sparse(src.generators, tgt.generators, rows), check=False)
    return ChainComplex(groups, diffs)


def relative_cochain_complex(f: GroupHom, M: GModule, max_degree: int, budget: Budget = DEFAULT_BUDGET) -> ChainComplex:
    """``coker(C^*(G', A) -> C^*(G, A))`` in degrees ``0..max_degree``."""
    MG = _check(f, M)
    C = bar_cochain_complex(MG, max_degree, budget)
    orders = list(MG.coefficients.orders)
    na = len(orders)
    keep, fib, pos = {}, {}, {}
    for q in C.degrees:
        img, rep = _fibers(f, q)
        keep[q] = [k for k in range(len(img)) if rep[k] != k]
        fib[q] = rep
        pos[q] = {k: i for i, k in enumerate(keep[q])}
    # in the cokernel a representative equals minus the rest of its fiber
    members: dict[int, dict[int, list[int]]] = {}
    for q in C.degrees:
        m: dict[int, list[int]] = {}
        for k in keep[q]:
            if fib[q][k] >= 0:
                m.setdefault(fib[q][k], []).append(k)
        members[q] = m
    groups = {q: PresentedAbelianGroup.diagonal(orders * len(keep[q])) for q in C.degrees}
    diffs = {}
    for q in range(max_degree):
        rows_full = C.outgoing(q).matrix.sparse_rows()
        p, mem = pos[q + 1], members[q + 1]
        rows = []
        for k in keep[q]:
            for j in range(na):
                out: dict = {}
                for c, v in rows_full[k * na + j].items():
                    t, a = divmod(c, na)
                    if t in p:
                        targets, s = [t], v
                    else:
                        targets, s = mem.get(t, []), -v
                    for u in targets:
                        col = p[u] * na + a
                        out[col] = out.get(col, 0) + s
                rows.append({c: v for c, v in out.items() if v})
        src, tgt = groups[q], groups[q + 1]
        diffs[q] = AbelianMap(src, tgt, IntMatrix.from_sparse(src.generators, tgt.generators, rows), check=False)
    return ChainComplex(groups, diffs, cochain=True)


def semidirect_module(action: GroupAction, t_module: GModule, g_module: GModule) -> GModule:
    """``A`` as a ``T x| G``-module via ``(t, g).a = t.(g.a)``."""
    T, G = action.carrier, action.actor
    H = semidirect_product(T, G, action)[0]
    nT = T.order
    mats = [g_module.action[x // nT].matrix @ t_module.action[x % nT].matrix for x in H.elements()]
    return GModule(H, g_module.coefficients, mats, check=False)


def equivariant_cochain_complex(
    action: GroupAction, t_module: GModule, g_module: GModule, max_degree: int, budget: Budget = DEFAULT_BUDGET
) -> ChainComplex:
    """``ker(C^*(T x| G, A) -> C^*(G, A))``: cochains vanishing on tuples from ``G``."""
    M = semidirect_module(action, t_module, g_module)
    C = bar_cochain_complex(M, max_degree, budget)
    nT = action.carrier.order
    na = M.diagonalized().coefficients.generators
    H = M.group
    idx = {}
    for q in C.degrees:
        sel = []
        for k, t in enumerate(product(range(1, H.order), repeat=q)):
            if any(x % nT for x in t):
                sel.extend(k * na + j for j in range(na))
        idx[q] = sel
    groups = {q: PresentedAbelianGroup.diagonal([C.group(q).orders[i] for i in idx[q]]) for q in C.degrees}
    diffs = {}
    for q in range(max_degree):
        m = C.outgoing(q).matrix.select_rows(idx[q]).select_cols(idx[q + 1])
        diffs[q] = AbelianMap(groups[q], groups[q + 1], m, check=False)
    return ChainComplex(groups, diffs, cochain=True)


def quotient_to_trivial(G: FiniteGroup) -> GroupHom:
    return GroupHom.trivial(G, FiniteGroup.trivial())
