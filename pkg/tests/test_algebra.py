from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from xmodhom.algebra import (
    AbelianMap,
    ChainComplex,
    ChainMap,
    IntMatrix,
    PresentedAbelianGroup,
    cokernel,
    connecting_sequence,
    direct_sum,
    ext_group,
    hom_group,
    homology_at,
    kernel,
    smith_normal_form,
    tensor_product,
    tor_product,
    verify_exact,
)
from xmodhom.algebra.matrix import HnfSolver, determinant, hnf_rows, left_kernel
from xmodhom.errors import CompositionNonzero, IllFormedMap, NotExact

from conftest import Zn, cf


# independent oracles


def det_frac(M):
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(M)
    A = [[Fraction(x) for x in r] for r in M]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(d)


def determinantal_factors(M):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    m = len(M)
    n = len(M[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det_frac([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def matmul(A, B):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*B)] for r in A]


small_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


# Smith normal form


def test_snf_identity():
    d = smith_normal_form(IntMatrix.identity(2))
    assert d.invariant_factors == [1, 1]
    assert d.S.tolist() == [[1, 0], [0, 1]]


def test_snf_zero():
    d = smith_normal_form(IntMatrix.zeros(3, 2))
    assert d.rank == 0 and d.invariant_factors == []
    assert d.S.is_zero()


def test_snf_two_by_two():
    d = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
    assert d.invariant_factors == [2, 4]
    assert abs(det_frac([[2, 4], [6, 8]])) == 2 * 4


@given(small_matrices)
def test_snf_properties(rows):
    A = IntMatrix(rows)
    d = smith_normal_form(A)
    assert matmul(matmul(d.U.tolist(), rows), d.V.tolist()) == d.S.tolist()
    assert abs(det_frac(d.U.tolist())) == 1 and abs(det_frac(d.V.tolist())) == 1
    S = d.S.tolist()
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    f = d.invariant_factors
    assert all(x > 0 for x in f)
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    assert f == determinantal_factors(rows)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_matches_fraction_elimination(rows):
    assert determinant(IntMatrix(rows)) == det_frac(rows)


@given(small_matrices)
def test_left_kernel_spans_rational_kernel(rows):
    K = left_kernel(IntMatrix(rows))
    assert all(v == 0 for r in K for v in matmul([r], rows)[0])
    rank = sympy.Matrix(rows).rank()
    assert len(K) == len(rows) - rank


@given(small_matrices, st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_hnf_solver_finds_lattice_combinations(rows, coeffs):
    n = len(rows[0])
    basis = hnf_rows(IntMatrix(rows))
    y = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(n)]
    x = HnfSolver(basis).solve(y)
    assert x is not None
    assert [sum(a * b[j] for a, b in zip(x, basis)) for j in range(n)] == y


# presented groups


def test_canonical_form_examples():
    assert PresentedAbelianGroup(1, [[2]]).canonical_form() == ([2], 0)
    assert PresentedAbelianGroup(2, []).canonical_form() == ([], 2)
    assert PresentedAbelianGroup(2, [[2, 0], [0, 4]]).canonical_form() == ([2, 4], 0)
    assert PresentedAbelianGroup(2, [[2, 0], [0, 3]]).canonical_form() == ([6], 0)


def unimodular(n, ops):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, c in ops:
        i, j = i % n, j % n
        if i != j:
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return U


@given(
    st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), max_size=6),
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(-3, 3)), max_size=6),
)
def test_canonical_form_invariant_under_unimodular_change(rel, gen_ops, rel_ops):
    G = PresentedAbelianGroup(3, rel)
    P = unimodular(3, gen_ops)
    Q = unimodular(len(rel), rel_ops)
    H = PresentedAbelianGroup(3, matmul(matmul(Q, rel), P))
    assert G.canonical_form() == H.canonical_form()
    assert G == H


def test_kernel_and_cokernel_examples():
    Z = PresentedAbelianGroup.free(1)
    double = AbelianMap(Z, Z, [[2]])
    assert kernel(double)[0].is_trivial()
    assert cf(cokernel(double)[0]) == ([2], 0)
    Z4 = Zn(4)
    K, incl = kernel(AbelianMap(Z4, Z4, [[2]]))
    assert cf(K) == ([2], 0)
    assert AbelianMap(Z4, Z4, [[2]]).matrix.nrows == 1
    assert incl.then(AbelianMap(Z4, Z4, [[2]])).is_zero()


def test_ill_formed_map():
    with pytest.raises(IllFormedMap):
        AbelianMap(Zn(2), PresentedAbelianGroup.free(1), [[1]])
    with pytest.raises(IllFormedMap):
        AbelianMap(Zn(2), Zn(2), IntMatrix([[1, 0]]))


def test_tensor_tor_hom_ext():
    Z, Z2, Z4, Z6 = PresentedAbelianGroup.free(1), Zn(2), Zn(4), Zn(6)
    assert cf(tensor_product(Z4, Z6)) == ([2], 0)
    assert cf(tor_product(Z4, Z6)) == ([2], 0)
    assert cf(hom_group(Z4, Z2)) == ([2], 0)
    assert cf(hom_group(Z, Z4)) == ([4], 0)
    assert cf(ext_group(Z4, Z2)) == ([2], 0)
    assert cf(ext_group(Z, Z4)) == ([], 0)
    assert cf(ext_group(Z4, Z)) == ([4], 0)
    assert cf(direct_sum([Z2, Z4, Z])) == ([2, 4], 1)


# complexes


def two_term(mat, lo_group, hi_group):
    """0 -> hi_group -> lo_group -> 0 in degrees 1, 0."""
    d = AbelianMap(hi_group, lo_group, mat)
    return ChainComplex({0: lo_group, 1: hi_group}, {1: d})


def test_homology_examples():
    Z = PresentedAbelianGroup.free(1)
    C = two_term([[2]], Z, Z)
    assert cf(homology_at(C, 0)) == ([2], 0)
    assert homology_at(C, 1).is_trivial()
    C0 = two_term([[0]], Z, Z)
    assert cf(homology_at(C0, 0)) == ([], 1) and cf(homology_at(C0, 1)) == ([], 1)


@given(st.lists(st.sampled_from([0, 2, 3, 4]), min_size=1, max_size=4), st.integers(1, 3))
def test_zero_differentials_give_the_groups(orders, k):
    G = PresentedAbelianGroup.diagonal(orders)
    C = ChainComplex({n: G for n in range(k + 1)}, {n: AbelianMap.zero(G, G) for n in range(1, k + 1)})
    for n in range(k + 1):
        assert homology_at(C, n) == G


def test_composition_nonzero():
    Z = PresentedAbelianGroup.free(1)
    one = AbelianMap(Z, Z, [[1]])
    C = ChainComplex({0: Z, 1: Z, 2: Z}, {1: one, 2: one})
    with pytest.raises(CompositionNonzero):
        homology_at(C, 1)


@given(
    st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
    st.lists(st.integers(-3, 3), min_size=9, max_size=9),
    st.lists(st.integers(-3, 3), min_size=9, max_size=9),
    st.sampled_from([2, 3, 4, 6]),
)
def test_euler_characteristic_multiplicative(r0, r1, r2, a, b, N):
    # 0 -> (Z/N)^r2 -> (Z/N)^r1 -> (Z/N)^r0 -> 0 with d2 d1 = 0 over Z
    M2 = sympy.Matrix(r2, r1, a[: r2 * r1])
    cols = []
    for v in M2.nullspace():
        den = lcm(*[sympy.fraction(e)[1] for e in v])
        cols.append([int(e * den) for e in v])
    if cols:
        K = sympy.Matrix(cols).T
        M1 = K * sympy.Matrix(len(cols), r0, (b * 3)[: len(cols) * r0])
    else:
        M1 = sympy.zeros(r1, r0)
    assert (M2 * M1).is_zero_matrix
    C = [PresentedAbelianGroup.diagonal([N] * r) for r in (r0, r1, r2)]
    d1 = AbelianMap(C[1], C[0], IntMatrix(M1.tolist(), r0))
    d2 = AbelianMap(C[2], C[1], IntMatrix(M2.tolist(), r1))
    X = ChainComplex({0: C[0], 1: C[1], 2: C[2]}, {1: d1, 2: d2})
    chain = Fraction(N**r0 * N**r2, N**r1)
    hom = Fraction(homology_at(X, 0).order() * homology_at(X, 2).order(), homology_at(X, 1).order())
    assert chain == hom


def test_verify_exact_examples():
    Z = PresentedAbelianGroup.free(1)
    zero = PresentedAbelianGroup(0)
    seq = [AbelianMap.zero(zero, Z), AbelianMap(Z, Z, [[1]]), AbelianMap.zero(Z, zero)]
    assert verify_exact(seq).exact
    Z2 = Zn(2)
    bad = verify_exact([AbelianMap.zero(zero, Z2), AbelianMap.zero(Z2, Z2), AbelianMap.zero(Z2, zero)])
    assert not bad.exact
    assert [j.exact for j in bad.junctions] == [False, False]
    assert [j.defect for j in bad.junctions] == [([2], 0), ([2], 0)]


def constant(G, degrees):
    return ChainComplex({n: G for n in degrees}, {})


def test_connecting_sequence_identity_middle():
    Z = PresentedAbelianGroup.free(1)
    zero = PresentedAbelianGroup(0)
    A = constant(zero, range(3))
    B = constant(Z, range(3))
    incl = ChainMap(A, B, {n: AbelianMap.zero(zero, Z) for n in range(3)})
    proj = ChainMap(B, B, {n: AbelianMap.identity(Z) for n in range(3)})
    les = connecting_sequence(incl, proj)
    assert les.report().exact
    for (label, _, G) in les.terms:
        if label == "A":
            assert G.is_trivial()
    mids = [m for m, t in zip(les.maps[1:], les.terms[1:]) if t[0] == "B"]
    assert all(m.is_isomorphism() for m in mids)


def test_connecting_sequence_doubling():
    Z = PresentedAbelianGroup.free(1)
    Z2, zero = Zn(2), PresentedAbelianGroup(0)
    degs = range(3)
    A = ChainComplex({n: (Z if n == 0 else zero) for n in degs}, {})
    B = ChainComplex({n: (Z if n == 0 else zero) for n in degs}, {})
    C = ChainComplex({n: (Z2 if n == 0 else zero) for n in degs}, {})
    incl = ChainMap(A, B, {0: AbelianMap(Z, Z, [[2]])})
    proj = ChainMap(B, C, {0: AbelianMap(Z, Z2, [[1]])})
    les = connecting_sequence(incl, proj)
    labels = [(t[0], t[1]) for t in les.terms]
    assert labels == [("C", 2), ("A", 1), ("B", 1), ("C", 1), ("A", 0), ("B", 0), ("C", 0), ("0", None)]
    assert les.report().exact
    # the connecting map H_1(C) -> H_0(A) is zero
    assert les.maps[3].is_zero()


def test_connecting_sequence_rejects_non_exact():
    Z = PresentedAbelianGroup.free(1)
    A, B = constant(Z, [0]), constant(Z, [0])
    incl = ChainMap(A, B, {0: AbelianMap(Z, Z, [[2]])})
    proj = ChainMap(B, B, {0: AbelianMap(Z, Z, [[1]])})
    with pytest.raises(NotExact):
        connecting_sequence(incl, proj)
