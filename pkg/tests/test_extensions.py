import random

import pytest

from conftest import Zn, c2_eq_c2, c2_in_c4, cf, one_c2, triv, z2_1_0
from xmodhom.errors import CapExceeded, InfiniteCoefficients
from xmodhom.extensions import (
    alpha,
    alpha_inverse,
    baer_sum,
    classify_congruence,
    enumerate_relative,
    enumerate_singular_1ai,
    enumerate_singular_a10,
    extensions_suite,
    find_congruence,
    finite_coefficients,
    split_extension_a10,
)
from xmodhom.groups import FiniteGroup, GModule, GroupHom
from xmodhom.groups.finite import order_profile
from xmodhom.invariants import classifying_cohomology, d_cohomology, relative_cohomology
from xmodhom.xmod import CrossedModule, validate_crossed_module, validate_pi_coefficients

C2, C4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(4)
STANDARD = [one_c2, z2_1_0, c2_in_c4, c2_eq_c2]


def test_k_z2_2_carriers():
    # (A,1,0)-extensions of (Z/2,1,0) by Z/2 live on Z/4 and Z/2 x Z/2
    X = z2_1_0()
    classes = classify_congruence(enumerate_singular_a10(X, triv(X, 2)))
    profiles = sorted(order_profile(c.representative.total.t_group) for c in classes)
    assert profiles == [(1, 2, 2, 2), (1, 2, 4, 4)]


def test_every_extension_is_a_crossed_module():
    for make in STANDARD:
        X = make()
        A = triv(X, 2)
        for E in enumerate_singular_a10(X, A) + enumerate_singular_1ai(X, A):
            validate_crossed_module(E.total)
            assert E.inclusion.is_injective() and E.projection.is_surjective()


@pytest.mark.parametrize("make,k", [(m, 2) for m in STANDARD] + [(one_c2, 4), (z2_1_0, 4), (c2_eq_c2, 4)])
def test_class_counts_match_cohomology(make, k):
    X = make()
    A = triv(X, k)
    assert len(classify_congruence(enumerate_singular_1ai(X, A))) == classifying_cohomology(X, A, 2).order()
    assert len(classify_congruence(enumerate_singular_a10(X, A))) == d_cohomology(X, A, 1).order()


def test_twisted_coefficients():
    X = one_c2()
    A = triv(X, 4)
    sign = GModule.from_signs(C2, Zn(4), [1, -1])
    B = validate_pi_coefficients(X, sign)
    # H^2(C2, Z/4) = Z/2 and H^2(C2, Z/4 sign) = Z/2
    assert len(classify_congruence(enumerate_singular_1ai(X, A))) == 2
    assert len(classify_congruence(enumerate_singular_1ai(X, B))) == classifying_cohomology(X, B, 2).order() == 2


def test_classification_is_order_independent():
    X = c2_in_c4()
    exts = enumerate_singular_a10(X, triv(X, 2))
    base = {frozenset(E.key for E in c.members) for c in classify_congruence(exts)}
    rng = random.Random(7)
    for _ in range(5):
        shuffled = exts[:]
        rng.shuffle(shuffled)
        assert {frozenset(E.key for E in c.members) for c in classify_congruence(shuffled)} == base


@pytest.mark.parametrize("make", STANDARD)
def test_find_congruence_agrees_with_classes(make):
    X = make()
    A = triv(X, 2)
    for exts in (enumerate_singular_a10(X, A), enumerate_singular_1ai(X, A)):
        classes = classify_congruence(exts)
        owner = {id(E): i for i, c in enumerate(classes) for E in c.members}
        for E1 in exts:
            for E2 in exts:
                assert (find_congruence(E1, E2) is not None) == (owner[id(E1)] == owner[id(E2)])


@pytest.mark.parametrize("make", STANDARD)
def test_baer_sum_laws(make):
    X = make()
    rep = extensions_suite(X, triv(X, 2))
    assert rep.passed, rep.text()


def test_baer_sum_with_split_is_identity():
    X = z2_1_0()
    A = triv(X, 2)
    split = split_extension_a10(X, A)
    for E in enumerate_singular_a10(X, A):
        assert find_congruence(baer_sum(E, split), E) is not None
    nonsplit = next(E for E in enumerate_singular_a10(X, A) if find_congruence(E, split) is None)
    assert find_congruence(baer_sum(nonsplit, nonsplit), split) is not None


def test_zero_coefficients_give_only_split():
    X = one_c2()
    A = triv(X, 1)
    exts = enumerate_singular_a10(X, A)
    assert len(exts) == 1
    assert find_congruence(exts[0], split_extension_a10(X, A)) is not None


def test_trivial_crossed_module_has_one_class():
    X = CrossedModule.of_group(FiniteGroup.trivial())
    assert len(classify_congruence(enumerate_singular_1ai(X, triv(X, 2)))) == 1


def test_caps():
    X = z2_1_0()
    with pytest.raises(CapExceeded):
        enumerate_singular_a10(X, triv(X, 16))
    Y = CrossedModule.of_group(FiniteGroup.cyclic(6))
    with pytest.raises(CapExceeded):
        enumerate_singular_1ai(Y, triv(Y, 4))
    with pytest.raises(InfiniteCoefficients):
        finite_coefficients(GModule.trivial(C2, triv(one_c2(), 0).coefficients))


# relative extensions


def test_relative_extensions_c4_onto_c2():
    f = GroupHom(C4, C2, [0, 1, 0, 1])
    A = GModule.trivial(C2, Zn(2))
    rel = enumerate_relative(f, A)
    assert rel.count == relative_cohomology(f, A, 2).order() == 4
    assert len(rel.a10_classes) == 4


def test_relative_extensions_of_identity():
    rel = enumerate_relative(GroupHom.identity(C2), GModule.trivial(C2, Zn(2)))
    assert rel.count == 1


def test_alpha_round_trip():
    f = GroupHom(C4, C2, [0, 1, 0, 1])
    X = CrossedModule.from_surjection(f)
    A = validate_pi_coefficients(X, GModule.trivial(C2, Zn(2)).pullback(f))
    coeffs = finite_coefficients(GModule.trivial(C2, Zn(2)))
    for E in enumerate_singular_a10(X, A):
        R = alpha(E, f, coeffs)
        assert R.validate()
        assert alpha_inverse(R, X, E.coefficients).key == E.key


def test_relative_expected_order_is_enforced():
    f = GroupHom(C4, C2, [0, 1, 0, 1])
    with pytest.raises(AssertionError):
        enumerate_relative(f, GModule.trivial(C2, Zn(2)), expected_order=3)
    assert cf(d_cohomology(CrossedModule.from_surjection(f), triv(CrossedModule.from_surjection(f), 2), 1)) == ([2, 2], 0)
