import gzip
import os

import pytest

from conftest import Zn, c2_eq_c2, c2_in_c4, cf, coeffs, corpus_instance, one_c2, triv, z2_1_0
from xmodhom.algebra import (
    AbelianMap,
    IntMatrix,
    PresentedAbelianGroup,
    connecting_sequence,
    homology_at,
)
from xmodhom.algebra.complexes import check_short_exact
from xmodhom.config import DEFAULT_BUDGET
from xmodhom.errors import BudgetExceeded, CompositionNonzero, InsufficientRectangle, MooreLengthExceeded
from xmodhom.groups import FiniteGroup, GModule, GroupAction, GroupHom, group_homology, group_cohomology
from xmodhom.invariants import classifying_cohomology, classifying_homology, d_cohomology, d_homology
from xmodhom.simplicial import (
    Bicomplex,
    TruncatedSimplicialGroup,
    beta_chain,
    beta_cochain,
    beta_sequence,
    constant_simplicial_group,
    moore_complex,
    n_inverse,
    nerve_bicomplex,
    nerve_total_complex,
    totalize,
)
from xmodhom.simplicial import cache as disk_cache
from xmodhom.simplicial.nerve_complex import clear_memo
from xmodhom.xmod import CrossedModule, validate_crossed_module, validate_pi_coefficients, xmod_isomorphism
from xmodhom.xmod.functors import der_xmod, diff_with_coefficients

Z = PresentedAbelianGroup.free(1)
C2, C4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(4)


def z4_onto_z2():
    return CrossedModule(C4, C2, GroupHom(C4, C2, [0, 1, 0, 1]), GroupAction.trivial(C2, C4), "(Z/4->>Z/2)")


STANDARD = [one_c2, z2_1_0, c2_in_c4, c2_eq_c2, z4_onto_z2]


# N^-1


@pytest.mark.parametrize("make", STANDARD)
def test_n_inverse_satisfies_simplicial_identities(make):
    S = n_inverse(make(), 3, check=False)
    assert S.identity_failure() is None
    assert [H.order for H in S.levels] == [make().t_group.order**n * make().g_group.order for n in range(4)]


@pytest.mark.parametrize("make", STANDARD)
def test_moore_complex_recovers_crossed_module(make):
    X = validate_crossed_module(make())
    Y = moore_complex(n_inverse(X, 3))
    assert xmod_isomorphism(X, Y) is not None


def test_constant_simplicial_group():
    S = constant_simplicial_group(FiniteGroup.symmetric(3), 3)
    assert S.identity_failure() is None
    Y = moore_complex(S)
    assert Y.t_group.order == 1 and Y.g_group.order == 6


def test_moore_length_exceeded():
    one = FiniteGroup.trivial()
    z1 = GroupHom.trivial(C2, one)
    z2 = GroupHom.trivial(one, C2)
    S = TruncatedSimplicialGroup(
        (one, one, C2),
        {1: [GroupHom.identity(one)] * 2, 2: [z1] * 3},
        {0: [GroupHom.identity(one)], 1: [z2] * 2},
    )
    assert S.identity_failure() is None
    with pytest.raises(MooreLengthExceeded):
        moore_complex(S)


def test_broken_face_is_reported():
    X = validate_crossed_module(c2_in_c4())
    S = n_inverse(X, 2)
    faces = dict(S.faces)
    faces[2] = [faces[2][1], faces[2][1], faces[2][2]]
    bad = TruncatedSimplicialGroup(S.levels, faces, S.degeneracies)
    assert bad.identity_failure() is not None


def test_level_budget():
    X = validate_crossed_module(z4_onto_z2())
    with pytest.raises(BudgetExceeded):
        n_inverse(X, 3, DEFAULT_BUDGET.with_(level_order=100))


# nerve complexes


@pytest.mark.parametrize("G", [C2, FiniteGroup.cyclic(3), FiniteGroup.abelian([2, 2]), FiniteGroup.symmetric(3)], ids=["C2", "C3", "V4", "S3"])
def test_nerve_of_group_matches_bar(G):
    X = CrossedModule.of_group(G)
    for M in (GModule.trivial(G, Z), GModule.trivial(G, Zn(4))):
        A = validate_pi_coefficients(X, M)
        for n in range(4):
            assert cf(classifying_homology(X, A, n)) == cf(group_homology(M, n)), n
            assert cf(classifying_cohomology(X, A, n)) == cf(group_cohomology(M, n)), n


def test_nerve_of_group_twisted():
    X = CrossedModule.of_group(C2)
    M = GModule.from_signs(C2, Zn(4), [1, -1])
    A = validate_pi_coefficients(X, M)
    for n in range(4):
        assert cf(classifying_cohomology(X, A, n)) == cf(group_cohomology(M, n))


def test_k_z2_2_low_degrees():
    X = z2_1_0()
    A = triv(X, 0)
    assert cf(classifying_homology(X, A, 1)) == ([], 0)
    assert cf(classifying_homology(X, A, 2)) == ([2], 0)
    assert cf(classifying_homology(X, A, 3)) == ([], 0)


def test_weakly_equivalent_models_agree():
    # (Z/4 ->> Z/2) and (Z/2, 1, 0) both have pi_1 = 1 and pi_2 = Z/2
    X, Y = z4_onto_z2(), z2_1_0()
    for n in range(4):
        for k in (0, 2):
            assert cf(classifying_homology(X, triv(X, k), n)) == cf(classifying_homology(Y, triv(Y, k), n)), (n, k)


@pytest.mark.parametrize("make", STANDARD)
def test_nerve_bicomplex_is_a_double_complex(make):
    X = make()
    for k in (0, 2):
        for cochain in (False, True):
            nerve_bicomplex(X, triv(X, k), 3, cochain).check()


def test_total_complexes_square_to_zero():
    for make in STANDARD:
        X = make()
        for cochain in (False, True):
            nerve_total_complex(X, triv(X, 4), 4, cochain).check()


# totalization


def _square(sign_flip: bool = False):
    # Z --1--> Z in both directions: entries (0,0), (1,0), (0,1), (1,1)
    one = IntMatrix([[1]])
    E = {(p, q): Z for p in range(2) for q in range(2)}
    h = {(1, 0): AbelianMap(Z, Z, one), (1, 1): AbelianMap(Z, Z, one)}
    v = {(0, 1): AbelianMap(Z, Z, one), (1, 1): AbelianMap(Z, Z, one.scale(-1) if sign_flip else one)}
    return Bicomplex(E, h, v, extent=2)


def test_totalize_square():
    B = _square().check()
    T = totalize(B, 2)
    T.check()
    assert [T.group(n).generators for n in range(3)] == [1, 2, 1]
    assert [cf(homology_at(T, n)) for n in range(3)] == [([], 0), ([], 0), ([], 0)]


def test_totalize_detects_noncommuting_square():
    with pytest.raises(CompositionNonzero):
        _square(sign_flip=True).check()


def test_totalize_rectangle():
    with pytest.raises(InsufficientRectangle):
        totalize(_square(), 3)


def test_tot_sign_conventions_agree():
    X = c2_in_c4()
    A = triv(X, 2)
    for cochain in (False, True):
        P = nerve_total_complex(X, A, 3, cochain, sign="p")
        Q = nerve_total_complex(X, A, 3, cochain, sign="q")
        for n in range(3):
            assert cf(homology_at(P, n)) == cf(homology_at(Q, n))


# beta complexes


@pytest.mark.parametrize("make", STANDARD)
def test_beta_degree_zero(make):
    X = make()
    for k in (0, 2, 4):
        A = triv(X, k)
        assert cf(d_homology(X, A, 0)) == cf(diff_with_coefficients(X, A))
        assert cf(d_cohomology(X, A, 0)) == cf(der_xmod(X, A))


@pytest.mark.parametrize("make", STANDARD)
def test_beta_low_degrees_vanish(make):
    X = make()
    A = triv(X, 2)
    b, c = beta_chain(X, A, 3), beta_cochain(X, A, 3)
    for n in (0, 1):
        assert homology_at(b, n).is_trivial()
        assert homology_at(c, n).is_trivial()


@pytest.mark.parametrize("cochain", [False, True])
@pytest.mark.parametrize("make", STANDARD)
def test_beta_sequence_exact(make, cochain):
    X = make()
    data = beta_sequence(X, triv(X, 2), 3, cochain)
    assert data.inclusion.commutes() and data.projection.commutes()
    for n in data.ambient.degrees:
        assert check_short_exact(data.inclusion.at(n), data.projection.at(n)) is None
    les = connecting_sequence(data.inclusion, data.projection)
    assert les.report().exact


def test_constant_part_is_group_homology():
    X = c2_in_c4()
    A = triv(X, 2)
    L = beta_sequence(X, A, 3).constant
    M = GModule.trivial(C4, Zn(2))
    for n in range(3):
        assert cf(homology_at(L, n)) == cf(group_homology(M, n))


# disk cache


def test_cache_round_trip(tmp_cache):
    X = c2_in_c4()
    A = triv(X, 4)
    clear_memo()
    built = nerve_total_complex(X, A, 3, True, cache_dir=tmp_cache)
    assert len(os.listdir(tmp_cache)) == 1
    clear_memo()
    loaded = nerve_total_complex(X, A, 3, True, cache_dir=tmp_cache)
    assert loaded is not built
    assert loaded.lo == built.lo and loaded.hi == built.hi and loaded.cochain == built.cochain
    for n in built.degrees:
        assert loaded.group(n).orders == built.group(n).orders
    for n, d in built.differentials.items():
        assert loaded.differentials[n].matrix.entries == d.matrix.entries
    clear_memo()


def test_cache_ignores_foreign_files(tmp_cache):
    os.makedirs(tmp_cache)
    key = disk_cache.make_key("x")
    with open(os.path.join(tmp_cache, key + ".cx.gz"), "wb") as fh:
        fh.write(gzip.compress(b"not a cache\n"))
    assert disk_cache.load(tmp_cache, key) is None


def test_cache_preserves_results(tmp_cache):
    inst = corpus_instance("c2_in_c4")
    A = coeffs(inst, "Z4sign")
    clear_memo()
    cold = d_cohomology(inst.xmod, A, 1)
    clear_memo()
    d_cohomology(inst.xmod, A, 1, cache_dir=tmp_cache)
    clear_memo()
    warm = d_cohomology(inst.xmod, A, 1, cache_dir=tmp_cache)
    assert cf(cold) == cf(warm)
    clear_memo()
