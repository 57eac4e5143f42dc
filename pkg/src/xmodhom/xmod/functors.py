"""The Der and Diff functors of a crossed module.

``Der(X, A)`` is computed as ``Hom_G(T_ab, A)``.  ``Diff X`` has two
constructions: a literal presentation on the elements of ``T x| G`` (the
oracle) and the induced module ``Z pi_1 (x)_{ZG} T_ab`` (the default).
"""

from __future__ import annotations

from ..algebra.abelian import AbelianMap, PresentedAbelianGroup, direct_sum, kernel
from ..algebra.matrix import IntMatrix, solve_hnf
from ..groups.bar import bar_cochain_complex, derivations
from ..groups.finite import GroupHom
from ..groups.modules import GModule, hom_over_group, induced_module, tensor_over_group
from .coefficients import (
    EquivariantModule,
    PiCoefficients,
    abelianization_module,
    augmentation_ideal,
)
from .crossed import CrossedModule, PrecrossedModule, homotopy_groups


def der_xmod(X: PrecrossedModule, A: PiCoefficients) -> PresentedAbelianGroup:
    """``Der(X, A) = Hom_G(T, A)`` with ``G`` acting on ``A`` through ``pi_1``."""
    return der_xmod_with_inclusion(X, A)[0]


def der_xmod_with_inclusion(X: PrecrossedModule, A: PiCoefficients):
    """``Hom_G(T_ab, A)`` with its inclusion into ``A^{T - 1}`` (values on non-identity elements)."""
    Tab = abelianization_module(X.t_group, X.action)
    return hom_over_group(Tab, A.g_module.diagonalized())


def diff_xmod(X: PrecrossedModule) -> GModule:
    """``Z pi_1 (x)_{Z(T x| G)} I/J`` presented on ``p[x]`` for ``p in pi_1``, ``x in T x| G``."""
    hg = homotopy_groups(X)
    pi1, proj = hg.pi1, hg.projection
    H, _, inj_G, pH = X.semidirect()
    nT = X.t_group.order
    P, nH = pi1.order, H.order
    # pi : T x| G -> pi_1
    piH = [proj.images[x // nT] for x in H.elements()]
    N = P * nH
    gen = lambda p, x: p * nH + x
    rows = []
    for p in pi1.elements():
        for x in H.elements():
            px = pi1.table[p][piH[x]]
            hx = H.table[x]
            for y in H.elements():
                r: dict = {}
                for k, v in ((gen(p, hx[y]), 1), (gen(p, x), -1), (gen(px, y), -1)):
                    r[k] = r.get(k, 0) + v
                rows.append({k: v for k, v in r.items() if v})
        for g in X.g_group.elements():
            rows.append({gen(p, inj_G.images[g]): 1})
    coeffs = PresentedAbelianGroup(N, IntMatrix.from_sparse(len(rows), N, rows))
    mats = []
    for q in pi1.elements():
        mats.append(IntMatrix.from_sparse(N, N, ({gen(pi1.table[q][p], x): 1} for p in pi1.elements() for x in H.elements())))
    return GModule(pi1, coeffs, mats, check=False)


def diff_fast(X: PrecrossedModule) -> GModule:
    """``Z pi_1 (x)_{ZG} T_ab``."""
    hg = homotopy_groups(X)
    Tab = abelianization_module(X.t_group, X.action)
    return induced_module(hg.pi1, hg.projection, Tab)


def diff_with_coefficients(X: PrecrossedModule, A: PiCoefficients, fast: bool = True) -> PresentedAbelianGroup:
    """``Diff(X, A) = A (x)_{Z pi_1} Diff X``."""
    D = diff_fast(X) if fast else diff_xmod(X)
    return tensor_over_group(A.module, D)


def der_precrossed(P: PrecrossedModule, A: EquivariantModule) -> PresentedAbelianGroup:
    """``Der_G(T, A)``: derivations ``T -> A`` with ``D(g.t) = g.D(t)``."""
    return der_precrossed_with_inclusion(P, A)[0]


def der_precrossed_with_inclusion(P: PrecrossedModule, A: EquivariantModule):
    A.validate()
    T, G = P.t_group, P.g_group
    Mt = A.t_module.diagonalized()
    # the G-action must be expressed in the same (diagonal) coordinates
    if Mt is A.t_module:
        Mg = A.g_module
    else:
        from ..algebra.abelian import diagonalize

        D, to_d, from_d = diagonalize(A.t_module.coefficients)
        Mg = GModule(G, D, [from_d.matrix @ f.matrix @ to_d.matrix for f in A.g_module.action], check=False)
    coeffs = Mt.coefficients
    na = coeffs.generators
    C = bar_cochain_complex(Mt, 2)
    delta1 = C.outgoing(1)
    src = C.group(1)
    # equivariance blocks, one copy of A per (g, t) with g, t non-identity
    pairs = [(g, t) for g in range(1, G.order) for t in range(1, T.order)]
    eq_target = direct_sum([coeffs] * len(pairs)) if pairs else PresentedAbelianGroup(0)
    rows = [dict(r) for r in delta1.matrix.sparse_rows()]
    off = delta1.target.generators
    for k, (g, t) in enumerate(pairs):
        gt = P.action.maps[g][t]
        base = off + k * na
        for i in range(na):
            # +D(g.t)
            r = rows[(gt - 1) * na + i]
            r[base + i] = r.get(base + i, 0) + 1
            # -g.D(t)
            r = rows[(t - 1) * na + i]
            for j, v in Mg.action[g].matrix.row(i).items():
                r[base + j] = r.get(base + j, 0) - v
    target = direct_sum([delta1.target, eq_target])
    f = AbelianMap(src, target, IntMatrix.from_sparse(src.generators, target.generators, rows), check=False)
    return kernel(f)


# exact sequences around Der and Diff

def _map_between_subgroups(f_matrix: IntMatrix, src_incl: AbelianMap, tgt_incl: AbelianMap) -> AbelianMap:
    """Restrict an ambient linear map to subgroups given by Hermite inclusions."""
    basis = tgt_incl.matrix.tolist()
    rows = []
    for v in (src_incl.matrix @ f_matrix).tolist():
        x = solve_hnf(basis, v)
        if x is None:
            # the ambient image may differ from a lattice vector by target relations
            x = _solve_mod_relations(basis, v, tgt_incl.target)
        rows.append(x)
    return AbelianMap(src_incl.source, tgt_incl.source, IntMatrix(rows, tgt_incl.source.generators), check=False)


def _solve_mod_relations(basis, v, ambient: PresentedAbelianGroup):
    from ..algebra.complexes import _augmented_solve

    rel = ambient.relations.tolist()
    x = _augmented_solve(basis + rel, list(v), ambient.generators)
    return x[: len(basis)]


def der_five_term_sequence(f: GroupHom, section: GroupHom, A: GModule) -> list[AbelianMap]:
    """``0 -> Der(G', A) -> Der(G, A) -> Der(f, A) -> 0`` for a split surjection ``f: G -> G'``.

    ``A`` is a ``G'``-module.  The maps are inflation along ``f`` and
    restriction of a derivation to ``N = ker f``.
    """
    G, Gp = f.source, f.target
    assert section.then(f).images == tuple(Gp.elements()), "section must split f"
    Ap = A.diagonalized()
    coeffs = Ap.coefficients
    na = coeffs.generators
    Ag = Ap.pullback(f)
    Dp, ip = derivations(Gp, Ap)
    Dg, ig = derivations(G, Ag)
    X = CrossedModule.from_surjection(f)
    Df, i_f = der_xmod_with_inclusion(X, validate_pi_coefficients_for(X, Ag))
    # inflation on values: D(g) = D'(f(g))
    infl_rows = [dict() for _ in range((Gp.order - 1) * na)]
    for g in range(1, G.order):
        fg = f.images[g]
        if fg:
            for i in range(na):
                infl_rows[(fg - 1) * na + i][(g - 1) * na + i] = 1
    infl = IntMatrix.from_sparse((Gp.order - 1) * na, (G.order - 1) * na, infl_rows)
    # restriction to N: values at n in N (T_ab generators are the non-identity elements of N)
    N_elems = X.mu.images
    res_rows = [dict() for _ in range((G.order - 1) * na)]
    for k, n in enumerate(N_elems[1:]):
        for i in range(na):
            res_rows[(n - 1) * na + i][k * na + i] = 1
    res = IntMatrix.from_sparse((G.order - 1) * na, (len(N_elems) - 1) * na, res_rows)
    zero = PresentedAbelianGroup(0)
    m_infl = _map_between_subgroups(infl, ip, ig)
    m_res = _map_between_subgroups(res, ig, i_f)
    return [AbelianMap.zero(zero, Dp), m_infl, m_res, AbelianMap.zero(Df, zero)]


def validate_pi_coefficients_for(X, Ag):
    from .coefficients import validate_pi_coefficients

    return validate_pi_coefficients(X, Ag)


def _tensor_map(A: GModule, M: GModule, Mp: GModule, phi: IntMatrix):
    """``id_A (x) phi : A (x)_G M -> A (x)_G M'``."""
    src = tensor_over_group(A, M)
    tgt = tensor_over_group(A, Mp)
    na, nm, nmp = A.coefficients.generators, M.coefficients.generators, Mp.coefficients.generators
    rows = []
    for i in range(na):
        for j in range(nm):
            rows.append({i * nmp + l: v for l, v in phi.row(j).items()})
    return AbelianMap(src, tgt, IntMatrix.from_sparse(na * nm, na * nmp, rows), check=False)


def diff_augmentation_sequence(X: PrecrossedModule, A: PiCoefficients) -> list[AbelianMap]:
    """``A (x) Diff X -> A (x)_{pi_1} (Z pi_1 (x)_G I_G) -> A (x)_{pi_1} I_{pi_1} -> 0``.

    All three terms are computed as ``A (x)_{ZG} -`` of ``T_ab``, ``I_G`` and
    ``I_{pi_1}`` (pulled back to ``G``), which agrees with tensoring over
    ``pi_1`` after inducing.  The maps are ``[t] -> mu(t) - 1`` and
    ``g - 1 -> [g] - 1``.
    """
    hg = homotopy_groups(X)
    G, pi1, proj = X.g_group, hg.pi1, hg.projection
    Ag = A.g_module.diagonalized()
    Tab = abelianization_module(X.t_group, X.action)
    IG = augmentation_ideal(G)
    Ipi = augmentation_ideal(pi1).pullback(proj)
    nT = X.t_group.order
    phi1 = IntMatrix.from_sparse(
        nT - 1, G.order - 1, ({X.mu.images[t] - 1: 1} if X.mu.images[t] else {} for t in range(1, nT))
    )
    phi2 = IntMatrix.from_sparse(
        G.order - 1, pi1.order - 1, ({proj.images[g] - 1: 1} if proj.images[g] else {} for g in range(1, G.order))
    )
    m1 = _tensor_map(Ag, Tab, IG, phi1)
    m2 = _tensor_map(Ag, IG, Ipi, phi2)
    zero = PresentedAbelianGroup(0)
    return [m1, m2, AbelianMap.zero(m2.target, zero)]
