from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coherentpairs import NuParam, Poly, apply, derived_smop, discrete, expand_in_basis, hankel_regularity, \
    kravchuk, smop_from_moments
from coherentpairs.errors import NonRegularError
from coherentpairs.smop import expand_in_monic_basis, polys_from_ttrr


def test_charlier_hand_values(P1):
    assert P1[1] == Poly([-1, 1])
    assert P1[2] == Poly([1, -3, 1])
    assert (P1.alpha[0], P1.alpha[1], P1.beta[1], P1.beta[2]) == (1, 2, 1, 2)


def test_two_point_centroid():
    P = smop_from_moments(discrete([0, 1], [1, 1]), 1)
    assert P[1] == Poly([Fraction(-1, 2), 1])
    assert smop_from_moments(discrete([0, 1], [1, 1]), 0)[0] == Poly.const(1)


def test_non_regular_reports_index():
    with pytest.raises(NonRegularError) as err:
        smop_from_moments(discrete([0, 1], [1, 1]), 2)
    assert err.value.index == 2


def test_derived_examples(P1):
    w = NuParam.omega(1)
    assert derived_smop(P1, 1, w)[1] == Poly([-1, 1])
    assert derived_smop(P1, 0, NuParam.q(3)).polys == P1.polys
    K = smop_from_moments(kravchuk(4, "1/2"), 2)
    assert derived_smop(K, 2, w)[0] == Poly.const(1)


def test_expand_examples(P1):
    assert expand_in_basis(P1[3], P1) == [0, 0, 0, 1]
    assert expand_in_basis(Poly.monomial(2), P1) == [2, 3, 1]
    assert expand_in_basis(Poly(), P1) == [0]


@pytest.mark.parametrize("U_name", ["charlier", "kravchuk"])
def test_orthogonality_and_favard(U_name, C1):
    U = C1 if U_name == "charlier" else kravchuk(12, "1/3")
    P = smop_from_moments(U, 12)
    for n in range(13):
        for j in range(n):
            assert apply(U, P[n] * P[j]) == 0
        assert apply(U, P[n] * P[n]) == P.norms[n] != 0
    assert tuple(polys_from_ttrr(P.alpha, P.beta, 12)) == P.polys
    pd = hankel_regularity(U, 12).positive_definite_prefix
    assert P.is_positive_definite() == (pd == 12)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7), max_size=12))
def test_expansion_round_trip(coeffs):
    from coherentpairs import charlier
    P = smop_from_moments(charlier(1), 12)
    f = Poly(coeffs)
    c = expand_in_basis(f, P)
    total = Poly()
    for i, ci in enumerate(c):
        total = total + P[i] * ci
    assert total == f
    assert expand_in_monic_basis(f, P.polys) == c
