from fractions import Fraction

import pytest

from coherentpairs import (NuParam, PearsonPair, Poly, charlier, class_estimate, discrete, dual_pair, hahn,
                           kravchuk, pearson_residual, pearson_solve, poly_mul, sigma_tilde,
                           smop_from_moments, structure_window_check)
from coherentpairs.errors import NonRegularError
from coherentpairs.functional import MomentFunctional

W = NuParam.omega(1)


def test_residual_examples(C1):
    assert not any(pearson_residual(C1, W, Poly.x(), Poly([1, -1]), 20))
    with pytest.raises(ValueError):
        pearson_residual(C1, W, Poly.const(1), Poly(), 5)
    assert pearson_residual(C1, W, Poly.x(), Poly.x(), 2)[0] != 0


def test_solve_examples(C1):
    pair = pearson_solve(C1, W, 1, 1)
    assert pair.sigma == Poly.x()
    c = pair.tau[0]
    assert c != 0 and pair.tau == Poly([1, -1]) * c
    assert pearson_solve(C1, W, 0, 1) is None


def test_non_regular_rejected():
    with pytest.raises(NonRegularError):
        pearson_solve(discrete([0], [1]), W, 1, 1)


def test_sigma_tilde_examples():
    assert sigma_tilde(Poly.x(), Poly([1, -1]), W) == Poly.const(1)
    assert sigma_tilde(Poly.x(), Poly.x(), NuParam.q(2)) == Poly([0, 2, 1])


FAMILIES = [charlier(1), charlier(3), kravchuk(12, "1/3"), hahn(1, 2, 15), hahn("1/2", "3/2", 12)]


@pytest.mark.parametrize("U", FAMILIES, ids=lambda U: U.label)
@pytest.mark.parametrize("nu", [NuParam.omega(1), NuParam.omega(-1)], ids=str)
def test_duality_for_every_solved_pair(U, nu):
    pair = pearson_solve(U, nu, 2, 1)
    assert pair is not None
    assert not any(pearson_residual(U, nu, pair.sigma, pair.tau, pair.verified_degree))
    dual = dual_pair(pair)
    assert dual.nu == nu.dual()
    assert not any(pearson_residual(U, dual.nu, dual.sigma, dual.tau, pair.verified_degree - 1))


def test_class_examples(C1, K20):
    assert class_estimate(C1, W, 3) == 0
    assert class_estimate(K20, W, 3) == 0
    bell = [C1.moment(n) for n in range(80)]
    bell[4] += 1
    perturbed = MomentFunctional(lambda n: bell[n], label="perturbed")
    assert class_estimate(perturbed, W, 1) is None


def test_rational_modification_class_bound(C1):
    V = poly_mul(Poly.x(), C1)
    s = class_estimate(V, W, 1)
    assert s is not None and s <= 0 + 1 + 0


def test_window_examples(P1):
    assert structure_window_check(P1, Poly.const(1), 0, W).passed
    assert structure_window_check(P1, Poly.const(1), P1.n_max, W).passed
    H = smop_from_moments(hahn(1, 2, 20), 10)
    report = structure_window_check(H, Poly.const(1), 0, W)
    assert not report.passed and report.failures


def test_window_for_kravchuk_structure():
    K = smop_from_moments(kravchuk(20, "1/2"), 14)
    pair = pearson_solve(kravchuk(20, "1/2"), W, 2, 1)
    st = sigma_tilde(pair.sigma, pair.tau, W)
    s = max(pair.sigma.degree - 2, pair.tau.degree - 1, 0)
    assert structure_window_check(K, st, s, W).passed
