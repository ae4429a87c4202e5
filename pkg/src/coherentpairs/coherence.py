"""(M,N)-D_nu-coherent pairs of order (m,k): fitting, residuals, the L matrix and the
distributional relations tying the two functionals together.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import linalg
from .calculus import NuParam, Poly, arg_map, dnu, eta_factor
from .errors import IncompleteDataError
from .functional import MomentFunctional, apply
from .semiclassical import PearsonPair, WindowReport, dual_pair, pearson_residual
from .smop import Smop, derived_polys, expand_in_monic_basis

Coeffs = Dict[Tuple[int, int], Fraction]


@dataclass
class CoherenceData:
    """Coefficients of

        P^{[m]}_n + sum_{i=1}^M a_{i,n} P^{[m]}_{n-i} = Q^{[k]}_n + sum_{i=1}^N b_{i,n} Q^{[k]}_{n-i}

    for ``0 <= n <= n_max``.  Missing entries read as zero, ``a_{0,n} = b_{0,n} = 1``.
    """

    M: int
    N: int
    m: int
    k: int
    a: Coeffs = field(default_factory=dict)
    b: Coeffs = field(default_factory=dict)
    n_max: int = 0

    @classmethod
    def from_rules(cls, M, N, m, k, n_max, a_rule: Callable[[int, int], object],
                   b_rule: Callable[[int, int], object]) -> "CoherenceData":
        """Populate ``a_{i,n} = a_rule(i, n)`` and ``b_{i,n} = b_rule(i, n)`` for ``i <= n``."""
        a = {(i, n): Fraction(a_rule(i, n)) for n in range(n_max + 1) for i in range(1, min(M, n) + 1)}
        b = {(i, n): Fraction(b_rule(i, n)) for n in range(n_max + 1) for i in range(1, min(N, n) + 1)}
        return cls(M, N, m, k, a, b, n_max)

    @property
    def K(self) -> int:
        return max(self.M, self.N)

    def a_coef(self, i: int, n: int, strict: bool = False) -> Fraction:
        return _coef(self.a, i, n, strict, "a")

    def b_coef(self, i: int, n: int, strict: bool = False) -> Fraction:
        return _coef(self.b, i, n, strict, "b")

    def extremes_nonzero(self) -> bool:
        ok_a = all(self.a_coef(self.M, n) != 0 for n in range(self.M, self.n_max + 1))
        ok_b = all(self.b_coef(self.N, n) != 0 for n in range(self.N, self.n_max + 1))
        return ok_a and ok_b


def _coef(table, i, n, strict, name):
    if i == 0:
        return Fraction(1)
    if i > n or i < 0:
        return Fraction(0)
    if strict and (i, n) not in table:
        raise IncompleteDataError(f"{name}_{{{i},{n}}} is required but missing")
    return table.get((i, n), Fraction(0))


def _combine(basis, n, width, coef) -> Poly:
    out = Poly.zero()
    for i in range(0, min(width, n) + 1):
        c = coef(i, n)
        if c:
            out = out + basis[n - i] * c
    return out


def r_polys(P: Smop, C: CoherenceData, nu: NuParam) -> List[Poly]:
    """``R_n = sum_{i=0}^M a_{i,n} P^{[m]}_{n-i}`` for ``0 <= n <= n_max``."""
    Pm = derived_polys(P.polys[: C.n_max + C.m + 1], C.m, nu)
    if len(Pm) <= C.n_max:
        raise IndexError("P is not stored far enough for this coherence data")
    return [_combine(Pm, n, C.M, C.a_coef) for n in range(C.n_max + 1)]


def coherence_residual(P: Smop, Q: Smop, C: CoherenceData, nu: NuParam) -> List[Poly]:
    """Per-``n`` difference of the two sides of the coherence relation."""
    Pm = derived_polys(P.polys[: C.n_max + C.m + 1], C.m, nu)
    Qk = derived_polys(Q.polys[: C.n_max + C.k + 1], C.k, nu)
    if len(Pm) <= C.n_max or len(Qk) <= C.n_max:
        raise IndexError("P or Q is not stored far enough for this coherence data")
    return [_combine(Pm, n, C.M, C.a_coef) - _combine(Qk, n, C.N, C.b_coef)
            for n in range(C.n_max + 1)]


def coherence_fit(P: Smop, Q: Smop, M: int, N: int, m: int, k: int, nu: NuParam,
                  n_max: int) -> Optional[CoherenceData]:
    """Fit the coherence coefficients degree by degree.

    Each ``n`` gives an exactly solvable linear system in
    ``a_{1..min(M,n), n}`` and ``b_{1..min(N,n), n}``.  When the solution is
    not unique, the free coefficients are set to zero; if that violates
    ``a_{M,n} != 0`` or ``b_{N,n} != 0`` they are set to one instead.
    Returns ``None`` when some ``n`` has no solution or the extreme
    coefficients cannot be made nonzero.
    """
    Pm = derived_polys(P.polys[: n_max + m + 1], m, nu)
    Qk = derived_polys(Q.polys[: n_max + k + 1], k, nu)
    if len(Pm) <= n_max or len(Qk) <= n_max:
        raise IndexError("P or Q is not stored far enough")
    a: Coeffs = {}
    b: Coeffs = {}
    for n in range(n_max + 1):
        na, nb = min(M, n), min(N, n)
        cols = [Pm[n - i] for i in range(1, na + 1)] + [-Qk[n - i] for i in range(1, nb + 1)]
        target = Qk[n] - Pm[n]
        if not cols:
            if target:
                return None
            continue
        rows = [[c[d] for c in cols] for d in range(n + 1)]
        sol = linalg.solve_affine(rows, [target[d] for d in range(n + 1)])
        if sol is None:
            return None
        x, null = sol

        if not _extremes_ok(x, n, M, N, na) and null:
            shifted = [xi + sum(vec[j] for vec in null) for j, xi in enumerate(x)]
            if _extremes_ok(shifted, n, M, N, na):
                x = shifted
        if not _extremes_ok(x, n, M, N, na):
            return None
        for i in range(1, na + 1):
            a[(i, n)] = x[i - 1]
        for i in range(1, nb + 1):
            b[(i, n)] = x[na + i - 1]
    return CoherenceData(M, N, m, k, a, b, n_max)


def _extremes_ok(v, n, M, N, na):
    a_ok = M == 0 or n < M or v[M - 1] != 0
    b_ok = N == 0 or n < N or v[na + N - 1] != 0
    return a_ok and b_ok


def l_matrix(C: CoherenceData) -> Tuple[List[List[Fraction]], Fraction]:
    """The ``(M+N) x (M+N)`` matrix built from the first coherence coefficients, and its determinant."""
    size = C.M + C.N
    L = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if i <= C.N - 1 and i <= j <= C.M + i:
                L[i][j] = C.a_coef(j - i, j, strict=True)
            elif C.N <= i and i - C.N <= j <= i:
                L[i][j] = C.b_coef(j - i + C.N, j, strict=True)
    return L, linalg.det(L)


@dataclass(frozen=True)
class DistributionalRelation:
    """``D_{nu*}^{order} [phi V] = psi U`` verified on moments ``0..verified_degree``.

    With ``order == 0`` this is the rational modification ``phi U = psi V``
    (``phi`` multiplies ``U``, ``psi`` multiplies ``V``).
    """

    order: int
    phi: Poly
    psi: Poly
    verified_degree: int
    nu: Optional[NuParam] = None


def _canonical(basis, lead_col=None):
    """Pick the canonical null vector: reduced echelon, optionally forcing ``lead_col`` to pivot first."""
    if not basis:
        return None
    ncols = len(basis[0])
    if lead_col is None:
        return basis[0]
    order = [lead_col] + [c for c in range(ncols) if c != lead_col]
    red, _ = linalg.rref([[v[c] for c in order] for v in basis], ncols)
    vec = red[0]
    if vec[0] == 0:
        return None
    full = [Fraction(0)] * ncols
    for pos, c in enumerate(order):
        full[c] = vec[pos]
    return full


def _grid_search(row_builder, check, caps, guard, exact=False):
    da_cap, db_cap = caps
    if exact:
        cells = [(da_cap, db_cap)]
    else:
        cells = sorted(((i, j) for i in range(da_cap + 1) for j in range(db_cap + 1)),
                       key=lambda c: (c[0] + c[1], c[0]))
    for da, db in cells:
        top = da + db + guard + 5
        rows = row_builder(da, db, top)
        basis = linalg.nullspace(rows, da + db + 2)
        vec = _canonical(basis, lead_col=da if exact else None)
        if vec is None:
            continue
        first, second = Poly(vec[: da + 1]), Poly(vec[da + 1:])
        if check(first, second, top + guard):
            return first, second, top + guard
    return None


def rational_modification_residual(U, V, phi: Poly, rho: Poly, degree: int) -> List[Fraction]:
    """Moments ``0..degree`` of ``phi U - rho V``."""
    return [apply(U, phi * Poly.monomial(n)) - apply(V, rho * Poly.monomial(n)) for n in range(degree + 1)]


def solve_rational_modification(U: MomentFunctional, V: MomentFunctional, deg_phi: int, deg_rho: int,
                                guard: int = 10) -> Optional[DistributionalRelation]:
    """Smallest-degree nonzero ``(phi, rho)`` with ``phi U = rho V``, searched up to the degree caps."""

    def rows(da, db, top):
        return [[U.moment(n + j) for j in range(da + 1)] + [-V.moment(n + j) for j in range(db + 1)]
                for n in range(top + 1)]

    def check(phi, rho, degree):
        return not any(rational_modification_residual(U, V, phi, rho, degree))

    found = _grid_search(rows, check, (deg_phi, deg_rho), guard)
    if found is None:
        return None
    phi, rho, deg = found
    return DistributionalRelation(0, phi, rho, deg)


def distributional_residual(U, V, order: int, phi: Poly, psi: Poly, nu: NuParam, degree: int) -> List[Fraction]:
    """Moments ``0..degree`` of ``D_{nu*}^{order}[phi V] - psi U``."""
    sign = -1 if order % 2 else 1
    return [sign * apply(V, phi * dnu(Poly.monomial(n), nu, order)) - apply(U, psi * Poly.monomial(n))
            for n in range(degree + 1)]


def solve_distributional_relation(U: MomentFunctional, V: MomentFunctional, order: int, deg_phi: int,
                                  deg_psi: int, nu: NuParam, guard: int = 10,
                                  exact: bool = False) -> Optional[DistributionalRelation]:
    """Nonzero ``(phi, psi)`` with ``D_{nu*}^{order}[phi V] = psi U``.

    By default the smallest-degree solution within the caps is returned,
    normalized so its first nonzero coefficient is 1.  With ``exact=True``
    only the given degrees are solved and ``phi`` is made monic of exactly
    ``deg_phi``.
    """
    sign = -1 if order % 2 else 1

    def rows(da, db, top):
        out = []
        for n in range(top + 1):
            d = dnu(Poly.monomial(n), nu, order)
            out.append([sign * apply(V, d * Poly.monomial(j)) for j in range(da + 1)]
                       + [-U.moment(n + j) for j in range(db + 1)])
        return out

    def check(phi, psi, degree):
        if not phi and not psi:
            return False
        return not any(distributional_residual(U, V, order, phi, psi, nu, degree))

    found = _grid_search(rows, check, (deg_phi, deg_psi), guard, exact=exact)
    if found is None:
        return None
    phi, psi, deg = found
    return DistributionalRelation(order, phi, psi, deg, nu)


def relation_at_coherence_degrees(P: Smop, Q: Smop, C: CoherenceData, n: int, nu: NuParam,
                                  guard: int = 10) -> Optional[DistributionalRelation]:
    """Solve ``D_{nu*}^{m-k}[phi V] = psi U`` with ``deg phi = M+k+n`` and ``deg psi = N+m+n``."""
    return solve_distributional_relation(P.source, Q.source, C.m - C.k, C.M + C.k + n, C.N + C.m + n,
                                         nu, guard, exact=True)


@dataclass
class LeadingCoeffReport:
    applicable: bool
    passed: bool = False
    predicted: Optional[Fraction] = None
    observed: Optional[Fraction] = None
    reason: str = ""


def leading_coeff_check(P: Smop, Q: Smop, C: CoherenceData, rel: DistributionalRelation, n: int,
                        nu: NuParam) -> LeadingCoeffReport:
    """Compare ``lead(psi)/lead(phi)`` with the ratio predicted from the coherence coefficients."""
    M, N, m, k = C.M, C.N, C.m, C.k
    try:
        _, d = l_matrix(C)
    except IncompleteDataError as exc:
        return LeadingCoeffReport(False, reason=f"incomplete data: {exc}")
    if d == 0:
        return LeadingCoeffReport(False, reason="det L vanishes")
    if rel.phi.degree != M + k + n or rel.psi.degree != N + m + n:
        return LeadingCoeffReport(False, reason="relation degrees differ from M+k+n, N+m+n")
    if M + N + n > C.n_max:
        return LeadingCoeffReport(False, reason="coherence data too short")
    lead_phi = (-1) ** k * eta_factor(M + n, k, nu) * C.a_coef(M, M + N + n) / Q.norms[M + k + n]
    lead_psi = (-1) ** m * eta_factor(N + n, m, nu) * C.b_coef(N, M + N + n) / P.norms[N + m + n]
    if lead_phi == 0:
        return LeadingCoeffReport(False, reason="predicted leading coefficient of phi vanishes")
    predicted = lead_psi / lead_phi
    observed = rel.psi.lead / rel.phi.lead
    return LeadingCoeffReport(True, predicted == observed, predicted, observed)


@dataclass
class ConverseReport(WindowReport):
    ell: int = 0
    t: int = 0
    j: int = 0
    r: int = 0
    s: int = 0
    lhs_coeffs: List[Fraction] = field(default_factory=list)
    rhs_coeffs: List[Fraction] = field(default_factory=list)
    hypotheses_hold: bool = True


def converse_coherence_check(P: Smop, Q: Smop, pearson: PearsonPair, rel: DistributionalRelation,
                             nu: NuParam, n: int, check_degree: int = 20) -> ConverseReport:
    """Banded expansions of ``D_nu[phi(x) sigma(x nu*) Q_{n+1}]`` over ``P^{[1,nu]}`` and over ``Q``.

    ``pearson`` describes ``V`` (the functional of ``Q``).  A pair given for
    ``D_{nu*}`` is used as is; a pair given for ``D_nu`` is first converted
    to its ``D_{nu*}`` form.  ``rel`` is the rational modification
    ``phi U = rho V`` (``rel.phi`` and ``rel.psi``).
    """
    if pearson.nu == nu:
        pearson = dual_pair(pearson)
        lead = pearson.sigma.lead
        pearson = PearsonPair(pearson.sigma / lead, pearson.tau / lead, pearson.nu, pearson.verified_degree)
    elif pearson.nu != nu.dual():
        raise ValueError("Pearson pair belongs to a different lattice")
    sigma, tau = pearson.sigma, pearson.tau
    phi, rho = rel.phi, rel.psi
    ell, t, jj, r = sigma.degree, tau.degree, phi.degree, rho.degree
    s = max(ell - 2, t - 1)
    report = ConverseReport(ell=ell, t=t, j=jj, r=r, s=s)

    U, V = P.source, Q.source
    if U is not None and V is not None:
        pearson_ok = not any(pearson_residual(V, pearson.nu, sigma, tau, check_degree))
        rel_ok = not any(rational_modification_residual(U, V, phi, rho, check_degree))
        report.hypotheses_hold = pearson_ok and rel_ok

    top = n + jj + ell
    if top + 1 > P.n_max or max(top, n + 1) > Q.n_max:
        raise IndexError(f"stored sequences too short for n={n} (need index {top + 1})")
    f = dnu(phi * arg_map(sigma, nu, -1) * Q.polys[n + 1], nu)
    P1 = derived_polys(P.polys[: top + 2], 1, nu)
    lhs = expand_in_monic_basis(f, P1)
    rhs = expand_in_monic_basis(f, Q.polys[: top + 1])
    report.lhs_coeffs, report.rhs_coeffs = lhs, rhs
    report.checked.append(n)

    lo_l, lo_r = max(0, n - r - ell), max(0, n - jj - s)
    bad_l = [i for i, c in enumerate(lhs) if c and not lo_l <= i <= top]
    bad_r = [i for i, c in enumerate(rhs) if c and not lo_r <= i <= top]
    if bad_l:
        report.fail(n, f"P^[1] expansion has terms outside [{lo_l}, {top}] at {bad_l}")
    if bad_r:
        report.fail(n, f"Q expansion has terms outside [{lo_r}, {top}] at {bad_r}")
    if f.degree != top or lhs[top] == 0 or rhs[top] == 0:
        report.fail(n, f"extreme coefficient at index {top} vanishes")
    return report
