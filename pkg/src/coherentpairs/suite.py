"""Invariant battery behind ``verify-suite``: each check returns ``(passed, detail)``."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, List, Tuple

from .calculus import NuParam, Poly
from .coherence import (CoherenceData, coherence_fit, coherence_residual, converse_coherence_check,
                        DistributionalRelation, l_matrix, solve_distributional_relation,
                        solve_rational_modification)
from .families import charlier, geronimus, kravchuk, q_lattice
from .functional import first_disagreement, leibniz_expand, dnu_functional, poly_mul
from .semiclassical import PearsonPair, class_estimate, dual_pair, pearson_residual, pearson_solve
from .smop import derived_smop, smop_from_moments
from .sobolev import (SobolevContext, coherent_coeffs, coherent_recursion, limit_basis, sobolev_inner,
                      sobolev_smop_gram, sobolev_to_coherence, verify_limit_link)

Check = Tuple[str, Callable[[], Tuple[bool, str]]]
OMEGA = NuParam.omega(1)


def _lowering():
    for mu in (1, Fraction(1, 2), 3):
        P = smop_from_moments(charlier(mu), 16)
        D = derived_smop(P, 1, OMEGA)
        if D.polys[:16] != P.polys[:16]:
            return False, f"mu={mu}"
    return True, "mu in {1, 1/2, 3}, n <= 15"


def _leibniz():
    rng = random.Random(7)
    nus = [NuParam.omega(1), NuParam.omega(-2), NuParam.q(2), NuParam.q(Fraction(1, 3))]
    for trial in range(8):
        nu = nus[trial % 4]
        U = charlier(1) if trial % 2 else kravchuk(10, Fraction(1, 2))
        p = Poly([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))])
        m = rng.randint(0, 3)
        lhs = dnu_functional(poly_mul(p, U), nu, m)
        bad = first_disagreement(lhs, leibniz_expand(p, U, m, nu), 20)
        if bad is not None:
            return False, f"{nu}, m={m}, moment {bad}"
    return True, "8 random cases, moments 0..20"


def _duality():
    for U in (charlier(1), kravchuk(12, Fraction(1, 3))):
        pair = pearson_solve(U, OMEGA, 1, 1)
        if pair is None:
            return False, f"no pair for {U.label}"
        dual = dual_pair(pair)
        if any(pearson_residual(U, dual.nu, dual.sigma, dual.tau, pair.verified_degree)):
            return False, U.label
    return True, "Charlier(1), Kravchuk(12,1/3)"


def _orthogonality():
    contexts = [
        SobolevContext(charlier(1), kravchuk(20, Fraction(1, 2)), 1, OMEGA, 1),
        SobolevContext(q_lattice(Fraction(1, 2), 12, [1] * 12), q_lattice(Fraction(1, 2), 12, range(1, 13)),
                       2, NuParam.q(Fraction(1, 2)), Fraction(1, 2)),
    ]
    for ctx in contexts:
        S = sobolev_smop_gram(ctx, 8)
        for n, Sn in enumerate(S.polys):
            if any(sobolev_inner(Sn, Poly.monomial(i), ctx) for i in range(n)):
                return False, f"{ctx.U.label}/{ctx.V.label}, n={n}"
    return True, "uniform and q-lattice contexts, n <= 8"


def _routes():
    U = charlier(1)
    V = geronimus(U, -1, 1)
    P, Q = smop_from_moments(U, 12), smop_from_moments(V, 12)
    C = coherence_fit(P, Q, 1, 0, 1, 0, OMEGA, 9)
    if C is None:
        return False, "Geronimus pair did not fit"
    ctx = SobolevContext(U, V, 1, OMEGA, 2)
    S = sobolev_smop_gram(ctx, 10)
    R = coherent_recursion(ctx, P, Q, C, 9)
    ok = S.polys == R.polys and S.s_norms == R.s_norms
    ok = ok and coherent_coeffs(ctx, P, Q, C, S, 9).c == R.c
    return ok, "Charlier(1) with its Geronimus partner, n <= 10"


def _synthetic():
    U = charlier(1)
    P = smop_from_moments(U, 13)
    C = CoherenceData.from_rules(1, 1, 1, 0, 10, lambda i, n: 1, lambda i, n: 1)
    ctx = SobolevContext(U, U, 1, OMEGA, 1)
    R = coherent_recursion(ctx, P, P, C, 10)
    ok = all(R.c[(1, n)] == Fraction(n + 1, n) for n in range(1, 11))
    ok = ok and sobolev_to_coherence(ctx, P, P, R, 1, C.a, 10).b == C.b
    return ok, "c_{1,n} = (n+1)/n and b round-trip"


def _limit():
    U = charlier(1)
    P = smop_from_moments(U, 12)
    ctx = SobolevContext(U, U, 1, OMEGA, 3)
    T = limit_basis(ctx, 10)
    ok = T.polys == P.polys[:11] and verify_limit_link(ctx, T, P, P, 8).passed
    return ok, "T_n = P_n and D T_{n+1}/(n+1) = Q_n"


def _coherence_machinery():
    U = charlier(1)
    P = smop_from_moments(U, 12)
    if coherence_fit(P, smop_from_moments(charlier(2), 7), 0, 0, 1, 0, OMEGA, 5) is not None:
        return False, "Charlier(1)/Charlier(2) fitted"
    C = CoherenceData(1, 1, 1, 0, {(1, 1): Fraction(2)}, {(1, 1): Fraction(3)}, 1)
    if l_matrix(C)[1] != 1:
        return False, "l_matrix determinant"
    rm = solve_rational_modification(U, poly_mul(Poly.x(), U), 1, 0)
    if rm is None or (rm.phi, rm.psi) != (Poly.x(), Poly.const(1)):
        return False, "rational modification"
    rel = solve_distributional_relation(U, U, 1, 0, 1, OMEGA)
    if rel is None or rel.verified_degree < 20:
        return False, "order-1 relation"
    return True, "fit, L matrix, rational and order-1 relations"


def _windows():
    U = charlier(1)
    P = smop_from_moments(U, 14)
    one = DistributionalRelation(0, Poly.const(1), Poly.const(1), 20)
    good = PearsonPair(Poly.x(), Poly([1, -1]), OMEGA)
    bad = PearsonPair(Poly([0, 0, 1]), Poly([1, -1]), OMEGA)
    nu = NuParam.omega(-1)
    ok = all(converse_coherence_check(P, P, good, one, nu, n).passed for n in range(2, 9))
    ok = ok and not all(converse_coherence_check(P, P, bad, one, nu, n).passed for n in range(2, 9))
    return ok, "Charlier(1) windows, 2 <= n <= 8, plus negative control"


def _class():
    ok = class_estimate(charlier(1), OMEGA, 1) == 0
    ok = ok and class_estimate(kravchuk(20, Fraction(1, 2)), OMEGA, 1) == 0
    return ok, "Charlier(1) and Kravchuk(20,1/2) have class 0"


CHECKS: List[Check] = [
    ("charlier-lowering", _lowering),
    ("leibniz", _leibniz),
    ("pearson-duality", _duality),
    ("sobolev-orthogonality", _orthogonality),
    ("route-equivalence", _routes),
    ("synthetic-pair", _synthetic),
    ("limit-basis", _limit),
    ("coherence-machinery", _coherence_machinery),
    ("converse-windows", _windows),
    ("semiclassical-class", _class),
]


def run_suite() -> List[Tuple[str, bool, str]]:
    rows = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed row, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append((name, ok, detail))
    return rows
