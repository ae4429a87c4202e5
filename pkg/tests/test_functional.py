import threading
from fractions import Fraction

import pytest

from coherentpairs import (MomentFunctional, NuParam, Poly, apply, charlier, discrete, dnu, dnu_functional,
                           from_moments, hankel_regularity, kravchuk, leibniz_expand, poly_mul)
from coherentpairs.errors import InsufficientMomentsError
from coherentpairs.functional import first_disagreement, linear_combination

from conftest import LATTICES

BELL = [1, 1, 2, 5, 15, 52, 203]


def _random_poly(rng, deg):
    return Poly([Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(deg + 1)])


def test_apply_examples(C1):
    U = from_moments([7, 0, 0])
    assert apply(U, Poly.const(1)) == 7
    assert apply(C1, Poly.monomial(2)) == 2
    assert apply(from_moments([1, 0, 0]), Poly([5, 3])) == 5


def test_explicit_list_is_finite():
    U = from_moments([1, 2, 3])
    with pytest.raises(InsufficientMomentsError):
        U.moment(3)


def test_poly_mul_examples(C1):
    shifted = poly_mul(Poly.x(), C1)
    assert [shifted.moment(n) for n in range(6)] == BELL[1:]
    assert first_disagreement(poly_mul(Poly.const(1), C1), C1, 20) is None
    assert poly_mul(Poly([-1, 1]), C1).moment(1) == 1


def test_poly_mul_commutes(C1, rng):
    for _ in range(5):
        a, b = _random_poly(rng, 2), _random_poly(rng, 3)
        assert first_disagreement(poly_mul(a, poly_mul(b, C1)), poly_mul(a * b, C1), 15) is None


def test_dnu_functional_examples(C1):
    for nu in LATTICES:
        assert dnu_functional(C1, nu).moment(0) == 0
    w = NuParam.omega(Fraction(5, 3))
    assert dnu_functional(C1, w).moment(1) == -C1.moment(0)
    assert dnu_functional(C1, NuParam.q(2)).moment(2) == Fraction(-3, 2) * C1.moment(1)


def test_dnu_functional_sign_duality(C1, rng):
    for nu in LATTICES:
        for _ in range(3):
            p = _random_poly(rng, 5)
            assert apply(dnu_functional(C1, nu), p) == -apply(C1, dnu(p, nu.dual()))


def test_leibniz_examples(C1, rng):
    for nu in LATTICES:
        assert first_disagreement(leibniz_expand(Poly.const(1), C1, 1, nu), dnu_functional(C1, nu), 15) is None
    w = NuParam.omega(1)
    assert leibniz_expand(Poly.x(), C1, 1, w).moment(0) == 0
    for _ in range(4):
        p = _random_poly(rng, rng.randint(0, 3))
        lhs = dnu_functional(poly_mul(p, C1), w, 2)
        assert first_disagreement(lhs, leibniz_expand(p, C1, 2, w), 15) is None


def test_hankel_examples(C1):
    rep = hankel_regularity(C1, 3)
    assert list(rep.hankel_dets) == [1, 1, 2, 12]
    assert rep.positive_definite_prefix == 3
    point = hankel_regularity(discrete([0], [1]), 1)
    assert list(point.hankel_dets) == [1, 0] and point.regular_prefix == 0
    zero = hankel_regularity(from_moments([0, 0, 0]), 0)
    assert list(zero.hankel_dets) == [0] and zero.regular_prefix == -1


def test_linear_combination(C1):
    K = kravchuk(4, "1/3")
    L = linear_combination([(2, C1), (Fraction(-1, 2), K)])
    assert all(L.moment(n) == 2 * C1.moment(n) - K.moment(n) / 2 for n in range(10))


def test_concurrent_reads_are_consistent():
    calls = []

    def gen(n):
        calls.append(n)
        return Fraction(n * n + 1, n + 1)

    U = MomentFunctional(gen)
    out = []

    def worker():
        out.append([U.moment(n) for n in range(40)])

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(row == out[0] for row in out)
