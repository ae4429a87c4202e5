from fractions import Fraction

import mpmath
import pytest

from coherentpairs import (Charlier, Discrete, Hahn, Kravchuk, NuParam, charlier, class_estimate,
                           derived_smop, discrete, family, finite_lattice, geronimus, hahn,
                           hankel_regularity, kravchuk, smop_from_moments)

BELL = [1, 1, 2, 5, 15, 52, 203]


def test_charlier_bell_numbers():
    C = charlier(1)
    assert [C.moment(n) for n in range(7)] == BELL


@pytest.mark.parametrize("mu", [Fraction(1), Fraction(1, 2), Fraction(3)])
def test_charlier_against_truncated_series(mu):
    mpmath.mp.dps = 40
    C = charlier(mu)
    m = mpmath.mpf(mu.numerator) / mu.denominator
    for n in range(10):
        series = mpmath.nsum(lambda x: x**n * m**x * mpmath.exp(-m) / mpmath.factorial(x), [0, mpmath.inf])
        exact = C.moment(n)
        assert abs(series - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("mu", [1, Fraction(1, 2), 3])
def test_charlier_lowering_gate(mu):
    P = smop_from_moments(charlier(mu), 16)
    assert derived_smop(P, 1, NuParam.omega(1)).polys[:16] == P.polys[:16]


def test_charlier_rejects_nonpositive():
    with pytest.raises(ValueError):
        charlier(0)


def test_kravchuk_example():
    K = kravchuk(2, "1/2")
    assert [K.moment(n) for n in range(3)] == [1, 1, Fraction(3, 2)]
    assert smop_from_moments(K, 1).polys[1].coeffs == (-1, 1)


def test_discrete_examples():
    point = discrete([1], [1])
    assert all(point.moment(n) == 1 for n in range(6))
    assert hankel_regularity(point, 1).regular_prefix == 0
    D = discrete(["1", "1/2", "1/4"], ["1/2", "1/3", "1/6"])
    assert D.moment(1) == Fraction(17, 24)


def test_discrete_validation():
    with pytest.raises(ValueError):
        discrete([1, 1], [1, 2])
    with pytest.raises(ValueError):
        discrete([1, 2], [1, 0])
    with pytest.raises(ValueError):
        Kravchuk(3, 1)


@pytest.mark.parametrize("spec,support", [
    (Kravchuk(6, "1/3"), 7),
    (Hahn("1/2", 2, 5), 6),
    (Discrete((0, 1, 3, 7), (1, 2, 3, 4)), 4),
])
def test_positive_definite_prefix_equals_support(spec, support):
    U = finite_lattice(spec)
    rep = hankel_regularity(U, support)
    assert rep.positive_definite_prefix == support - 1
    assert U.horizon == support - 1


def test_family_dispatch():
    assert family(Charlier(2)).moment(1) == 2
    assert hahn(0, 0, 3).moment(0) == 1


def test_kravchuk_class_zero():
    assert class_estimate(kravchuk(8, "1/2"), NuParam.omega(1), 1) == 0


def test_geronimus_is_a_division():
    C = charlier(1)
    V = geronimus(C, -1, 1)
    for n in range(12):
        assert V.moment(n + 1) + V.moment(n) == C.moment(n)
    assert hankel_regularity(V, 8).positive_definite_prefix == 8
