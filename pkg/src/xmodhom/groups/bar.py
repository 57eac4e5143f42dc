"""Normalized inhomogeneous bar complexes and derivations.

Chains in degree ``q`` are ``A`` tensored over tuples ``[g_1|...|g_q]`` of
non-identity elements.  With ``a`` on the left,

    d(a[g_1|...|g_q]) = g_1^{-1}a[g_2|...|g_q]
                        + sum_{i<q} (-1)^i a[...|g_i g_{i+1}|...]
                        + (-1)^q a[g_1|...|g_{q-1}]

and cochains use the dual formula with ``g_1 f(g_2, ...)`` in front.  Faces
that produce the identity are degenerate and vanish.
"""

from __future__ import annotations

from itertools import product

from ..algebra.abelian import AbelianMap, PresentedAbelianGroup, direct_sum, kernel
from ..algebra.complexes import ChainComplex
from ..algebra.matrix import IntMatrix
from ..config import DEFAULT_BUDGET, Budget
from ..errors import DegreeTooLarge
from .finite import FiniteGroup
from .modules import GModule


def tuple_index(t, base: int) -> int:
    """Index of a tuple of non-identity elements (first entry slowest)."""
    i = 0
    for g in t:
        i = i * base + (g - 1)
    return i


def nondegenerate_tuples(G: FiniteGroup, q: int):
    return product(range(1, G.order), repeat=q)


def _check_budget(G: FiniteGroup, M: GModule, max_degree: int, budget: Budget) -> None:
    n = M.coefficients.generators
    for q in range(max_degree + 1):
        rank = (G.order - 1) ** q * n
        if rank > budget.bar_rank:
            raise DegreeTooLarge(f"bar complex rank {rank} in degree {q} exceeds budget {budget.bar_rank}")


def _faces(G: FiniteGroup, t: tuple):
    """Yield ``(sign, face_tuple, acting_element)`` for the bar differential of ``t``.

    ``acting_element`` is the first entry for face 0 and ``None`` otherwise;
    degenerate faces are skipped.
    """
    q = len(t)
    yield 1, t[1:], t[0]
    for i in range(1, q):
        m = G.table[t[i - 1]][t[i]]
        if m == 0:
            continue
        yield (-1) ** i, t[: i - 1] + (m,) + t[i + 1 :], None
    yield (-1) ** q, t[:-1], None


def bar_chain_complex(M: GModule, max_degree: int, budget: Budget = DEFAULT_BUDGET) -> ChainComplex:
    """``C_q(G, A)`` for ``0 <= q <= max_degree``; homology is exact below ``max_degree``."""
    M = M.diagonalized()
    G, A = M.group, M.coefficients
    _check_budget(G, M, max_degree, budget)
    na = A.generators
    base = G.order - 1
    groups = {q: direct_sum([A] * base**q) if base**q else PresentedAbelianGroup(0) for q in range(max_degree + 1)}
    inv_action = [M.action[G.inverse[g]].matrix for g in G.elements()]
    diffs = {}
    for q in range(1, max_degree + 1):
        rows = []
        for t in nondegenerate_tuples(G, q):
            tri = [dict() for _ in range(na)]
            for sign, face, act in _faces(G, t):
                fi = tuple_index(face, base) * na
                for j in range(na):
                    r = tri[j]
                    if act is not None:
                        for k, v in inv_action[act].row(j).items():
                            r[fi + k] = r.get(fi + k, 0) + sign * v
                    else:
                        r[fi + j] = r.get(fi + j, 0) + sign
            rows.extend(tri)
        src, tgt = groups[q], groups[q - 1]
        diffs[q] = AbelianMap(src, tgt, IntMatrix.from_sparse(src.generators, tgt.generators, rows), check=False)
    return ChainComplex(groups, diffs)


def bar_cochain_complex(M: GModule, max_degree: int, budget: Budget = DEFAULT_BUDGET) -> ChainComplex:
    """``C^q(G, A)`` for ``0 <= q <= max_degree``; cohomology is exact below ``max_degree``."""
    M = M.diagonalized()
    G, A = M.group, M.coefficients
    _check_budget(G, M, max_degree, budget)
    na = A.generators
    base = G.order - 1
    groups = {q: direct_sum([A] * base**q) if base**q else PresentedAbelianGroup(0) for q in range(max_degree + 1)}
    diffs = {}
    for q in range(max_degree):
        src, tgt = groups[q], groups[q + 1]
        rows = [dict() for _ in range(src.generators)]
        for t in nondegenerate_tuples(G, q + 1):
            ti = tuple_index(t, base) * na
            for sign, face, act in _faces(G, t):
                fi = tuple_index(face, base) * na
                for j in range(na):
                    r = rows[fi + j]
                    if act is not None:
                        for k, v in M.action[act].matrix.row(j).items():
                            r[ti + k] = r.get(ti + k, 0) + sign * v
                    else:
                        r[ti + j] = r.get(ti + j, 0) + sign
        diffs[q] = AbelianMap(src, tgt, IntMatrix.from_sparse(src.generators, tgt.generators, rows), check=False)
    return ChainComplex(groups, diffs, cochain=True)


def group_homology(M: GModule, n: int, budget: Budget = DEFAULT_BUDGET) -> PresentedAbelianGroup:
    from ..algebra.complexes import homology_at

    return homology_at(bar_chain_complex(M, n + 1, budget), n)


def group_cohomology(M: GModule, n: int, budget: Budget = DEFAULT_BUDGET) -> PresentedAbelianGroup:
    from ..algebra.complexes import homology_at

    return homology_at(bar_cochain_complex(M, n + 1, budget), n)


def derivation_group(G: FiniteGroup, M: GModule) -> PresentedAbelianGroup:
    """``Der(G, A)``: maps with ``D(gh) = D(g) + g.D(h)``, as the kernel of the 1-cocycle condition."""
    return derivations(G, M)[0]


def derivations(G: FiniteGroup, M: GModule) -> tuple[PresentedAbelianGroup, AbelianMap]:
    """``Der(G, A)`` with its inclusion into ``A^{G - 1}`` (values on non-identity elements)."""
    if M.group != G:
        from ..errors import GroupMismatch

        raise GroupMismatch("module is over a different group")
    C = bar_cochain_complex(M, 2)
    return kernel(C.outgoing(1))
