"""Pearson equations ``D_nu(sigma U) = tau U``: residuals, solvers, class search and window checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from . import linalg
from .calculus import NuParam, Poly, dnu
from .errors import NonRegularError
from .functional import MomentFunctional, apply, hankel_regularity
from .smop import Smop, derived_polys, expand_in_monic_basis


@dataclass(frozen=True)
class PearsonPair:
    sigma: Poly
    tau: Poly
    nu: NuParam
    verified_degree: int = 0

    @property
    def class_bound(self) -> int:
        return max(self.sigma.degree - 2, self.tau.degree - 1, 0)


def pearson_residual(U: MomentFunctional, nu: NuParam, sigma: Poly, tau: Poly,
                     deg_check: int) -> List[Fraction]:
    """Moments ``0..deg_check`` of ``D_nu(sigma U) - tau U``."""
    if tau.degree < 1:
        raise ValueError("Pearson pair needs deg tau >= 1")
    dual = nu.dual()
    out = []
    for n in range(deg_check + 1):
        xn = Poly.monomial(n)
        out.append(-apply(U, sigma * dnu(xn, dual)) - apply(U, tau * xn))
    return out


def _pearson_rows(U, nu, ds, dt, top):
    """Linear equations in the unknowns (sigma_0..sigma_ds, tau_0..tau_dt)."""
    dual = nu.dual()
    rows = []
    for n in range(top + 1):
        dxn = dnu(Poly.monomial(n), dual)
        row = [-apply(U, dxn * Poly.monomial(k)) for k in range(ds + 1)]
        row += [-U.moment(n + k) for k in range(dt + 1)]
        rows.append(row)
    return rows


def _check_regular(U: MomentFunctional, depth: int):
    if U.horizon is not None:
        depth = min(depth, max(U.horizon, 1))
    report = hankel_regularity(U, depth)
    if report.regular_prefix < depth:
        bad = report.regular_prefix + 1
        raise NonRegularError(f"{U.label} is not regular (Hankel determinant {bad} vanishes)", index=bad)


def pearson_solve(U: MomentFunctional, nu: NuParam, deg_sigma: int, deg_tau: int,
                  guard: int = 10) -> Optional[PearsonPair]:
    """Find ``(sigma, tau)`` with ``sigma`` monic of degree ``deg_sigma`` solving the Pearson equation.

    The homogeneous system is imposed on residual moments
    ``0..deg_sigma + deg_tau + guard + 5`` and the solution is re-verified
    on ``guard`` further moments.  When every solution forces a lower
    degree for ``sigma`` the search falls back to that degree; the returned
    pair reports the degree actually found.  ``None`` means no pair exists
    within the caps.
    """
    if deg_tau < 1:
        raise ValueError("deg_tau must be at least 1")
    _check_regular(U, deg_sigma + deg_tau + 1)
    top = deg_sigma + deg_tau + guard + 5
    for ds in range(deg_sigma, -1, -1):
        pair = _solve_at(U, nu, ds, deg_tau, top, guard)
        if pair is not None:
            return pair
    return None


def _solve_at(U, nu, ds, dt, top, guard):
    ncols = ds + dt + 2
    basis = linalg.nullspace(_pearson_rows(U, nu, ds, dt, top), ncols)
    # Columns are reordered so sigma's leading coefficient pivots first.
    order = [ds] + [i for i in range(ncols) if i != ds]
    reordered = linalg.rref([[v[i] for i in order] for v in basis], ncols)[0] if basis else []
    if not reordered or reordered[0][0] == 0:
        return None
    head, rest = reordered[0], reordered[1:]
    # a constant tau is not admissible; mixing in sigma-lead-free vectors may fix it
    for extra in [None] + rest:
        vec = head if extra is None else [a + b for a, b in zip(head, extra)]
        full = [Fraction(0)] * ncols
        for pos, col in enumerate(order):
            full[col] = vec[pos]
        sigma, tau = Poly(full[: ds + 1]), Poly(full[ds + 1:])
        if tau.degree < 1:
            continue
        if any(pearson_residual(U, nu, sigma, tau, top + guard)):
            return None
        return PearsonPair(sigma, tau, nu, verified_degree=top + guard)
    return None


def sigma_tilde(sigma: Poly, tau: Poly, nu: NuParam) -> Poly:
    """Polynomial turning a ``D_nu`` Pearson pair into a ``D_{nu*}`` one with the same ``tau``."""
    if nu.is_omega:
        return sigma + tau * nu.value
    q = nu.value
    return sigma * q + Poly([0, q - 1]) * tau


def dual_pair(pair: PearsonPair) -> PearsonPair:
    """The ``D_{nu*}`` Pearson pair ``(sigma~, tau)`` equivalent to ``pair``."""
    return PearsonPair(sigma_tilde(pair.sigma, pair.tau, pair.nu), pair.tau, pair.nu.dual(),
                       verified_degree=max(pair.verified_degree - 1, 0))


def class_estimate(U: MomentFunctional, nu: NuParam, s_max: int, guard: int = 10) -> Optional[int]:
    """Smallest class ``s <= s_max`` realized by a Pearson pair on the searched grid.

    This is an upper bound on the true class of ``U`` restricted to the grid
    ``deg sigma <= s + 2``, ``1 <= deg tau <= s + 1``; ``None`` when no pair
    is found.
    """
    for s in range(s_max + 1):
        for ds in range(s + 3):
            for dt in range(1, s + 2):
                if max(ds - 2, dt - 1) != s:
                    continue
                pair = pearson_solve(U, nu, ds, dt, guard)
                if pair is not None and pair.class_bound <= s:
                    return s
    return None


@dataclass
class WindowReport:
    """Per-index outcome of a banded-expansion check."""

    passed: bool = True
    checked: List[int] = field(default_factory=list)
    failures: List[Tuple[int, str]] = field(default_factory=list)

    def fail(self, n: int, why: str):
        self.passed = False
        self.failures.append((n, why))


def structure_window_check(P: Smop, sigma_t: Poly, s: int, nu: NuParam) -> WindowReport:
    """Check ``sigma_t P^{[1,nu]}_n = sum_{j=n-s}^{n+deg sigma_t} lambda_{j,n} P_j`` with ``lambda_{n-s,n} != 0``.

    Every ``n`` whose product fits inside the stored basis is examined.
    """
    report = WindowReport()
    derived = derived_polys(P.polys, 1, nu)
    for n in range(len(derived)):
        f = sigma_t * derived[n]
        if f.degree > P.n_max:
            break
        coeffs = expand_in_monic_basis(f, P.polys)
        report.checked.append(n)
        if n < s:
            continue
        low = [j for j in range(n - s) if coeffs[j] != 0]
        if low:
            report.fail(n, f"nonzero coefficients below the window at {low}")
        if n >= s + 1 and coeffs[n - s] == 0:
            report.fail(n, f"coefficient at n - s = {n - s} vanishes")
    return report
