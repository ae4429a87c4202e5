"""Discrete Sobolev inner products and their monic orthogonal sequences.

Two independent routes are provided: direct Gram-Schmidt against the Sobolev
inner product, and a Gram-free recursion that only needs the coherence
coefficients and the norms of ``P`` and ``Q``.  Both are exact.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg
from .calculus import NuParam, Poly, as_fraction, dnu, eta_factor
from .coherence import CoherenceData, Coeffs, coherence_residual
from .errors import (ConverseHypothesisError, InconsistencyError, NonRegularError,
                     PositiveDefinitenessError)
from .functional import MomentFunctional, apply, hankel_regularity
from .smop import Smop, derived_polys, expand_in_monic_basis, smop_from_moments


class CoherenceOrderWarning(UserWarning):
    """Recovered coherence coefficients have a vanishing extreme term."""


@dataclass(frozen=True)
class SobolevContext:
    U: MomentFunctional
    V: MomentFunctional
    m: int
    nu: NuParam
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", as_fraction(self.lam))
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.m < 1:
            raise ValueError("m must be a positive integer")

    def check_positive(self, n_max: int) -> None:
        """Require ``U`` positive definite through ``n_max`` and ``V`` through ``n_max - m``."""
        for F, depth in ((self.U, n_max), (self.V, n_max - self.m)):
            if depth < 0:
                continue
            rep = hankel_regularity(F, depth)
            if rep.positive_definite_prefix < depth:
                bad = rep.positive_definite_prefix + 1
                raise PositiveDefinitenessError(f"{F.label} is not positive definite at order {bad}", index=bad)


@dataclass
class SobolevBasis:
    ctx: SobolevContext
    polys: List[Poly]
    s_norms: List[Fraction]
    c: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    zeta: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    case_checks: Dict[int, bool] = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1

    def c_coef(self, j: int, n: int) -> Fraction:
        if j == 0:
            return Fraction(1)
        return self.c.get((j, n), Fraction(0))


@dataclass(frozen=True)
class LimitBasis:
    polys: Tuple[Poly, ...]

    def __getitem__(self, n: int) -> Poly:
        return self.polys[n]


def sobolev_inner(p: Poly, r: Poly, ctx: SobolevContext) -> Fraction:
    """``<U, p r> + lambda <V, D^m p D^m r>``."""
    out = apply(ctx.U, p * r)
    dp, dr = dnu(p, ctx.nu, ctx.m), dnu(r, ctx.nu, ctx.m)
    if dp and dr:
        out += ctx.lam * apply(ctx.V, dp * dr)
    return out


def sobolev_gram(ctx: SobolevContext, n: int) -> List[List[Fraction]]:
    """``[<x^i, x^j>]_{i,j=0..n}`` under the Sobolev inner product."""
    derived = [dnu(Poly.monomial(i), ctx.nu, ctx.m) for i in range(n + 1)]
    W = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(i, n + 1):
            w = ctx.U.moment(i + j)
            if derived[i] and derived[j]:
                w += ctx.lam * apply(ctx.V, derived[i] * derived[j])
            W[i][j] = W[j][i] = w
    return W


def sobolev_gram_closed_form(ctx: SobolevContext, n: int) -> List[List[Fraction]]:
    """``u_{i+j} + lambda eta_{i-m} eta_{j-m} v_{i+j-2m}`` (eta taken as zero below ``m``).

    This treats ``D^m x^i`` as the single monomial ``eta_{i-m,m} x^{i-m}``,
    which is exact for the q-lattice.  On the uniform lattice ``D^m x^i``
    has lower terms, so agreement with :func:`sobolev_gram` is only
    guaranteed when ``min(i, j) < m`` or ``i = j = m``.
    """
    m, nu = ctx.m, ctx.nu

    def eta(i):
        return eta_factor(i - m, m, nu) if i >= m else Fraction(0)

    return [[ctx.U.moment(i + j) + (ctx.lam * eta(i) * eta(j) * ctx.V.moment(i + j - 2 * m)
                                    if i >= m and j >= m else 0)
             for j in range(n + 1)] for i in range(n + 1)]


def sobolev_smop_gram(ctx: SobolevContext, n_max: int) -> SobolevBasis:
    """Gram-Schmidt against the Sobolev inner product.

    Raises :class:`PositiveDefinitenessError` at the first leading minor of
    the Gram matrix that is not positive (``index`` is its order).
    """
    W = sobolev_gram(ctx, n_max)
    polys: List[Poly] = []
    norms: List[Fraction] = []
    for n in range(n_max + 1):
        S = Poly.monomial(n)
        s = W[n][n]
        for k in range(n):
            proj = sum((polys[k][d] * W[n][d] for d in range(k + 1)), Fraction(0))
            S = S - polys[k] * (proj / norms[k])
            s -= proj * proj / norms[k]
        if s <= 0:
            raise PositiveDefinitenessError(
                f"Sobolev Gram matrix: leading minor of order {n + 1} is not positive", index=n + 1)
        polys.append(S)
        norms.append(s)

    low = min(ctx.m, n_max)
    P = smop_from_moments(ctx.U, low).polys
    for n in range(low + 1):
        if polys[n] != P[n]:
            raise InconsistencyError(f"S_{n} differs from P_{n} although n <= m")
    return SobolevBasis(ctx, polys, norms)


def limit_basis(ctx: SobolevContext, n_max: int) -> LimitBasis:
    """``T_n``: monic, ``U``-orthogonal to ``x^i`` for ``i < min(n, m)``, ``D^m T_n`` ``V``-orthogonal to ``x^j``, ``j < n - m``."""
    m, nu = ctx.m, ctx.nu
    derived = [dnu(Poly.monomial(k), nu, m) for k in range(n_max + 1)]
    out = []
    for n in range(n_max + 1):
        rows, rhs = [], []
        for i in range(min(n, m)):
            rows.append([ctx.U.moment(k + i) for k in range(n)])
            rhs.append(-ctx.U.moment(n + i))
        for j in range(max(n - m, 0)):
            xj = Poly.monomial(j)
            rows.append([apply(ctx.V, derived[k] * xj) for k in range(n)])
            rhs.append(-apply(ctx.V, derived[n] * xj))
        t = linalg.solve_unique(rows, rhs)
        if t is None:
            raise NonRegularError(f"limit basis: conditions for T_{n} are singular", index=n)
        out.append(Poly(t + [1]))
    return LimitBasis(tuple(out))


@dataclass
class LinkReport:
    passed: bool = True
    checked: List[int] = field(default_factory=list)
    failures: List[Tuple[int, str]] = field(default_factory=list)

    def fail(self, n, why):
        self.passed = False
        self.failures.append((n, why))


def verify_limit_link(ctx: SobolevContext, T: LimitBasis, P: Smop, Q: Smop, n_max: int) -> LinkReport:
    """Check ``D^m T_{n+m} / eta_{n,m} = Q_n`` and the expansion of ``Q_n`` over ``P^{[m]}``."""
    m, nu = ctx.m, ctx.nu
    Pm = derived_polys(P.polys[: n_max + m + 1], m, nu)
    report = LinkReport()
    for n in range(n_max + 1):
        report.checked.append(n)
        eta_n = eta_factor(n, m, nu)
        if dnu(T[n + m], nu, m) / eta_n != Q[n]:
            report.fail(n, "(a) D^m T_{n+m} / eta differs from Q_n")
        coeffs = expand_in_monic_basis(Q[n], Pm)
        for j in range(n):
            want = (eta_factor(j, m, nu) / eta_n * apply(P.source, T[n + m] * P[j + m])
                    / P.norms[j + m])
            if coeffs[j] != want:
                report.fail(n, f"(b) coefficient of P^[m]_{j} in Q_{n} differs")
                break
    return report


def _a_tilde(C: CoherenceData, i: int, n: int, nu: NuParam) -> Fraction:
    if i > n:
        return Fraction(0)
    a = C.a_coef(i, n)
    if not a:
        return Fraction(0)
    return eta_factor(n, C.m, nu) / eta_factor(n - i, C.m, nu) * a


def _b_tilde(C: CoherenceData, i: int, n: int, nu: NuParam) -> Fraction:
    if i > n:
        return Fraction(0)
    return eta_factor(n, C.m, nu) * C.b_coef(i, n)


def _lhs(P: Smop, C: CoherenceData, n: int, nu: NuParam) -> Poly:
    """``P_{n+m} + sum_i a~_{i,n} P_{n-i+m}``."""
    m = C.m
    out = P[n + m]
    for i in range(1, min(C.M, n) + 1):
        at = _a_tilde(C, i, n, nu)
        if at:
            out = out + P[n - i + m] * at
    return out


def _check_pair(ctx, C):
    if C.k != 0:
        raise ValueError("the Sobolev routes need coherence of order (m, 0)")
    if C.m != ctx.m:
        raise ValueError(f"coherence order m={C.m} differs from the context's m={ctx.m}")


def coherent_coeffs(ctx: SobolevContext, P: Smop, Q: Smop, C: CoherenceData, S: SobolevBasis,
                    n_max: int) -> SobolevBasis:
    """Fill ``c_{j,n}`` from inner products and verify the relation linking ``P`` and ``S``.

    The relation is ``P_{n+m} + sum a~_{i,n} P_{n-i+m} = S_{n+m} + sum_{j=1}^K c_{j,n} S_{n-j+m}``.
    ``case_checks[n]`` records, for ``n >= K``, whether the predicted
    (non)vanishing of ``c_{K,n}`` matches.
    """
    _check_pair(ctx, C)
    m, nu, lam = ctx.m, ctx.nu, ctx.lam
    U, V = ctx.U, ctx.V
    K = C.K
    c: Dict[Tuple[int, int], Fraction] = {}
    cases: Dict[int, bool] = {}
    for n in range(n_max + 1):
        eta_n = eta_factor(n, m, nu)
        for j in range(1, min(K, n) + 1):
            Sj = S.polys[n - j + m]
            dSj = dnu(Sj, nu, m)
            acc = Fraction(0)
            for i in range(j, min(C.M, n) + 1):
                a = C.a_coef(i, n)
                if a:
                    acc += a / eta_factor(n - i, m, nu) * apply(U, P[n - i + m] * Sj)
            for i in range(j, min(C.N, n) + 1):
                b = C.b_coef(i, n)
                if b:
                    acc += lam * b * apply(V, Q[n - i] * dSj)
            c[(j, n)] = eta_n / S.s_norms[n - j + m] * acc

        rhs = S.polys[n + m]
        for j in range(1, min(K, n) + 1):
            rhs = rhs + S.polys[n - j + m] * c[(j, n)]
        if _lhs(P, C, n, nu) != rhs:
            raise InconsistencyError(f"relation between P and S fails at n={n}")

        if K and n >= K:
            cases[n] = (c[(K, n)] != 0) == case_predicate(ctx, P, Q, C, n)
    return SobolevBasis(ctx, list(S.polys), list(S.s_norms), c, dict(S.zeta), cases)


def case_predicate(ctx: SobolevContext, P: Smop, Q: Smop, C: CoherenceData, n: int) -> bool:
    """Predicted ``c_{K,n} != 0`` for ``n >= K`` from the extreme coherence coefficients."""
    M, N, K, m = C.M, C.N, C.K, ctx.m
    a, b = C.a_coef(M, n), C.b_coef(N, n)
    if M > N:
        return a != 0
    if M < N:
        return b != 0
    eta = eta_factor(n - K, m, ctx.nu)
    return (a * P.norms[n - K + m] + ctx.lam * eta * eta * b * Q.norms[n - K]) != 0


def coherent_recursion(ctx: SobolevContext, P: Smop, Q: Smop, C: CoherenceData, n_max: int) -> SobolevBasis:
    """``s_n`` and ``c_{j,n}`` without a Gram matrix, then ``S_0..S_{n_max+m}``.

    For each ``n`` the rows ``j = K, ..., 1`` give ``c_{j,n}`` and the row
    ``j = 0`` gives ``s_{n+m}``; this order makes every right-hand term
    available.
    """
    _check_pair(ctx, C)
    m, nu, lam, K = ctx.m, ctx.nu, ctx.lam, C.K
    s: Dict[int, Fraction] = {i: P.norms[i] for i in range(m)}
    c: Dict[Tuple[int, int], Fraction] = {}
    zeta: Dict[Tuple[int, int], Fraction] = {}

    def cc(j, n):
        if j == 0:
            return Fraction(1)
        return c.get((j, n), Fraction(0))

    def z(j, n):
        if (j, n) not in zeta:
            val = Fraction(0)
            for i in range(j, min(C.M, n + j) + 1):
                val += _a_tilde(C, i, n + j, nu) * _a_tilde(C, i - j, n, nu) * P.norms[n + j - i + m]
            for i in range(j, min(C.N, n + j) + 1):
                val += lam * _b_tilde(C, i, n + j, nu) * _b_tilde(C, i - j, n, nu) * Q.norms[n + j - i]
            zeta[(j, n)] = val
        return zeta[(j, n)]

    for n in range(n_max + 1):
        for j in range(min(K, n), 0, -1):
            base = n - j
            val = z(j, base)
            for ell in range(1, K - j + 1):
                if ell <= base:
                    val -= cc(ell, base) * cc(j + ell, n) * s[base - ell + m]
            c[(j, n)] = val / s[base + m]
        val = z(0, n)
        for ell in range(1, min(K, n) + 1):
            val -= cc(ell, n) ** 2 * s[n - ell + m]
        if val <= 0:
            raise PositiveDefinitenessError(f"recursion produced s_{n + m} = {val}", index=n + m)
        s[n + m] = val

    polys: List[Poly] = list(P.polys[:m])
    for n in range(n_max + 1):
        Sn = _lhs(P, C, n, nu)
        for j in range(1, min(K, n) + 1):
            Sn = Sn - polys[n - j + m] * c[(j, n)]
        polys.append(Sn)
    norms = [s[i] for i in range(n_max + m + 1)]
    return SobolevBasis(ctx, polys, norms, c, zeta)


def sobolev_to_coherence(ctx: SobolevContext, P: Smop, Q: Smop, S: SobolevBasis, M: int, a: Coeffs,
                         n_max: int) -> CoherenceData:
    """Recover ``b_{j,n}`` from a relation ``P_{n+m} + sum a~ P = S_{n+m} + sum c S``.

    ``K`` is the largest ``j`` present in ``S.c``.  Raises
    :class:`ConverseHypothesisError` when the relation fails or some
    ``b_{j,n}`` with ``j > K`` is nonzero.  A vanishing ``b_{K,n}`` for
    ``n >= K`` only triggers a :class:`CoherenceOrderWarning`.
    """
    m, nu = ctx.m, ctx.nu
    K = max((j for j, _ in S.c), default=0)
    C_a = CoherenceData(M, K, m, 0, dict(a), {}, n_max)
    for n in range(n_max + 1):
        rhs = S.polys[n + m]
        for j in range(1, min(K, n) + 1):
            rhs = rhs + S.polys[n - j + m] * S.c_coef(j, n)
        if _lhs(P, C_a, n, nu) != rhs:
            raise ConverseHypothesisError(f"relation between P and S fails at n={n}")

    Pm = derived_polys(P.polys[: n_max + m + 1], m, nu)
    b: Coeffs = {}
    vanishing = []
    for n in range(n_max + 1):
        R = Pm[n]
        for i in range(1, min(M, n) + 1):
            R = R + Pm[n - i] * C_a.a_coef(i, n)
        for j in range(1, n + 1):
            val = apply(ctx.V, R * Q[n - j]) / Q.norms[n - j]
            if j > K:
                if val:
                    raise ConverseHypothesisError(f"b_{{{j},{n}}} = {val} is nonzero beyond K={K}")
                continue
            b[(j, n)] = val
        if K and n >= K and b[(K, n)] == 0:
            vanishing.append(n)
    if vanishing:
        warnings.warn(f"b_{{K,n}} vanishes for n in {vanishing}; coherence order not asserted",
                      CoherenceOrderWarning, stacklevel=2)
    C = CoherenceData(M, K, m, 0, dict(a), b, n_max)
    if any(coherence_residual(P, Q, C, nu)):
        raise ConverseHypothesisError("recovered coefficients do not satisfy the coherence relation")
    return C
