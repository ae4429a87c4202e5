import itertools
from fractions import Fraction

import pytest

from coherentpairs import (CoherenceData, DistributionalRelation, NuParam, PearsonPair, Poly, charlier,
                           coherence_fit, coherence_residual, converse_coherence_check, derived_smop,
                           geronimus, l_matrix, leading_coeff_check, poly_mul, r_polys,
                           relation_at_coherence_degrees, smop_from_moments, solve_distributional_relation,
                           solve_rational_modification)
from coherentpairs.coherence import distributional_residual, rational_modification_residual
from coherentpairs.errors import IncompleteDataError
from coherentpairs.smop import expand_in_monic_basis

W = NuParam.omega(1)


def synthetic(M, n_max=10, m=1, coeff=lambda i, n: 1):
    return CoherenceData.from_rules(M, M, m, 0, n_max, coeff, coeff)


@pytest.fixture(scope="module")
def geronimus_pair():
    U = charlier(1)
    V = geronimus(U, -1, 1)
    return U, V, smop_from_moments(U, 16), smop_from_moments(V, 16)


def test_fit_examples(P1):
    C = coherence_fit(P1, P1, 0, 0, 1, 0, W, 10)
    assert C is not None and C.a == {} and C.b == {}
    for nu in (W, NuParam.q(3)):
        C = coherence_fit(P1, P1, 0, 0, 0, 0, nu, 8)
        assert C is not None and C.a == {} and C.b == {}
    assert coherence_fit(P1, smop_from_moments(charlier(2), 6), 0, 0, 1, 0, W, 5) is None


def test_residual_examples(P1):
    assert not any(coherence_residual(P1, P1, synthetic(1), W))
    C = CoherenceData.from_rules(1, 1, 1, 0, 10, lambda i, n: 1, lambda i, n: 2)
    res = coherence_residual(P1, P1, C, W)
    assert res[0] == Poly()
    for n in range(1, 11):
        assert res[n] == -P1[n - 1]
    assert r_polys(P1, synthetic(1), W)[3] == P1[3] + P1[2]


def test_fit_closure_and_order(geronimus_pair):
    U, V, P, Q = geronimus_pair
    C = coherence_fit(P, Q, 1, 0, 1, 0, W, 12)
    assert C is not None and C.extremes_nonzero()
    assert all(C.a[(1, n)] == n for n in range(1, 13))
    assert not any(coherence_residual(P, Q, C, W))
    assert l_matrix(C) == ([[1]], 1)


def test_l_matrix_examples():
    assert l_matrix(CoherenceData(1, 0, 1, 0, {(1, 1): Fraction(5)}, {}, 1)) == ([[1]], 1)
    C = CoherenceData(1, 1, 1, 0, {(1, 1): Fraction(2)}, {(1, 1): Fraction(3)}, 1)
    assert l_matrix(C) == ([[1, 2], [1, 3]], 1)
    assert l_matrix(synthetic(1))[1] == 0
    with pytest.raises(IncompleteDataError):
        l_matrix(CoherenceData(1, 1, 1, 0, {}, {(1, 1): Fraction(3)}, 1))


def _brute_force_l(P, C, nu, rng):
    """Assemble L from expansion coefficients of R_j over P^{[m]} and over a Q built to match."""
    size = C.M + C.N
    Pm = derived_smop(P, C.m, nu).polys
    R = r_polys(P, C, nu)
    Q = []
    for j in range(size):
        q = R[j]
        for i in range(1, min(C.N, j) + 1):
            q = q - Q[j - i] * C.b_coef(i, j)
        Q.append(q)
    rows = []
    for i in range(size):
        if i < C.N:
            rows.append([expand_in_monic_basis(R[j], Pm)[i] if i <= R[j].degree else 0 for j in range(size)])
        else:
            t = i - C.N
            rows.append([expand_in_monic_basis(R[j], Q)[t] if t <= R[j].degree else 0 for j in range(size)])
    return rows


def test_l_matrix_matches_brute_force(P1, rng):
    cases = [(M, N) for M, N in itertools.product(range(4), repeat=2) if 1 <= M + N <= 3]
    for M, N in cases:
        for _ in range(3):
            def rand(i, n):
                return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
            C = CoherenceData.from_rules(M, N, 1, 0, M + N, rand, rand)
            L, _ = l_matrix(C)
            assert L == _brute_force_l(P1, C, W, rng), (M, N)


def test_rational_modification_examples(C1):
    rel = solve_rational_modification(C1, C1, 0, 0)
    assert (rel.phi, rel.psi) == (Poly.const(1), Poly.const(1))
    rel = solve_rational_modification(C1, poly_mul(Poly.x(), C1), 1, 0)
    assert (rel.phi, rel.psi) == (Poly.x(), Poly.const(1))
    assert not any(rational_modification_residual(C1, poly_mul(Poly.x(), C1), rel.phi, rel.psi,
                                                  rel.verified_degree))
    assert solve_rational_modification(C1, charlier(2), 0, 0) is None


def test_rational_modification_geronimus(geronimus_pair):
    U, V, _, _ = geronimus_pair
    rel = solve_rational_modification(U, V, 1, 1)
    assert (rel.phi, rel.psi) == (Poly.const(1), Poly([1, 1]))


def test_distributional_examples(C1):
    rel = solve_distributional_relation(C1, C1, 1, 0, 1, W)
    assert (rel.phi, rel.psi) == (Poly.const(1), Poly([1, -1]))
    assert rel.verified_degree >= 20
    assert solve_distributional_relation(C1, C1, 1, 0, 0, W) is None
    rel2 = solve_distributional_relation(C1, C1, 2, 1, 2, W)
    assert rel2 is not None and rel2.verified_degree >= 20
    assert not any(distributional_residual(C1, C1, 2, rel2.phi, rel2.psi, W, rel2.verified_degree))


def test_leading_coeff_examples(P1, geronimus_pair):
    C00 = coherence_fit(P1, P1, 0, 0, 1, 0, W, 6)
    rel = relation_at_coherence_degrees(P1, P1, C00, 0, W)
    rep = leading_coeff_check(P1, P1, C00, rel, 0, W)
    assert rep.applicable and rep.passed and rep.predicted == -1
    C11 = synthetic(1)
    assert not leading_coeff_check(P1, P1, C11, rel, 0, W).applicable
    wrong = DistributionalRelation(1, Poly.x(), Poly([1, -1]), 20, W)
    assert not leading_coeff_check(P1, P1, C00, wrong, 0, W).applicable

    U, V, P, Q = geronimus_pair
    C = coherence_fit(P, Q, 1, 0, 1, 0, W, 8)
    for n in range(4):
        rel = relation_at_coherence_degrees(P, Q, C, n, W)
        rep = leading_coeff_check(P, Q, C, rel, n, W)
        assert rep.applicable and rep.passed


ONE = DistributionalRelation(0, Poly.const(1), Poly.const(1), 20)
GOOD = PearsonPair(Poly.x(), Poly([1, -1]), W)


def test_converse_windows(P1):
    nu = NuParam.omega(-1)
    rep = converse_coherence_check(P1, P1, GOOD, ONE, nu, 4)
    assert rep.passed and rep.hypotheses_hold
    assert (rep.ell, rep.t, rep.j, rep.r, rep.s) == (1, 1, 0, 0, 0)
    assert converse_coherence_check(P1, P1, GOOD, ONE, nu, 0).passed
    bad = PearsonPair(Poly([0, 0, 1]), Poly([1, -1]), W)
    assert not converse_coherence_check(P1, P1, bad, ONE, nu, 4).passed


def test_converse_converts_pair_given_for_nu(P1):
    for n in range(0, 9):
        rep = converse_coherence_check(P1, P1, GOOD, ONE, W, n)
        assert rep.passed and rep.ell == 0


def test_converse_rejects_foreign_lattice(P1):
    with pytest.raises(ValueError):
        converse_coherence_check(P1, P1, PearsonPair(Poly.x(), Poly([1, -1]), NuParam.q(2)), ONE, W, 2)


@pytest.mark.parametrize("mu", [1, Fraction(1, 2)])
@pytest.mark.parametrize("M", [1, 2])
def test_synthetic_pairs_close(mu, M, rng):
    P = smop_from_moments(charlier(mu), 12)
    coeffs = {}

    def rand(i, n):
        return coeffs.setdefault((i, n), Fraction(rng.choice([-5, -1, 2, 7]), rng.randint(1, 3)))

    C = CoherenceData.from_rules(M, M, 1, 0, 10, rand, rand)
    assert not any(coherence_residual(P, P, C, W))
