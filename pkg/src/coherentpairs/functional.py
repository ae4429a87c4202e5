"""Moment functionals and their distributional calculus.

A functional is represented by its moment sequence ``u_n = <U, x^n>``.
Every identity between functionals is checked as an equality of moments up
to an explicit degree; with exact arithmetic such a check is conclusive for
the degrees it covers.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .calculus import NuParam, Poly, arg_map, as_fraction, dnu, lattice_binom
from .errors import InsufficientMomentsError


class MomentFunctional:
    """Linear functional on polynomials, given by a deterministic moment generator.

    Parameters
    ----------
    generator : callable
        ``generator(n)`` returns the exact moment of order ``n``.
    limit : int, optional
        Largest moment index available; queries past it raise
        :class:`InsufficientMomentsError`.  ``None`` means unbounded.
    horizon : int, optional
        Largest ``n`` for which the Hankel determinant can be nonzero (finite
        support of size ``N + 1`` gives ``N``).  ``None`` means unbounded.
    spec : dict, optional
        JSON description used for serialization.

    Moments are cached behind a lock, so concurrent readers always observe
    the same values.
    """

    def __init__(
        self,
        generator: Callable[[int], Fraction],
        *,
        limit: Optional[int] = None,
        horizon: Optional[int] = None,
        spec: Optional[dict] = None,
        label: str = "",
    ):
        self._generator = generator
        self.limit = limit
        self.horizon = horizon
        self.spec = spec
        self.label = label
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"MomentFunctional({self.label or 'anonymous'})"

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("negative moment index")
        if self.limit is not None and n > self.limit:
            raise InsufficientMomentsError(
                f"{self.label or 'functional'}: moment {n} requested, only 0..{self.limit} available"
            )
        with self._lock:
            hit = self._cache.get(n)
        if hit is not None:
            return hit
        value = as_fraction(self._generator(n))
        with self._lock:
            return self._cache.setdefault(n, value)

    def moments(self, count: int) -> List[Fraction]:
        """The first ``count`` moments ``u_0 .. u_{count-1}``."""
        return [self.moment(k) for k in range(count)]

    def apply(self, p: Poly) -> Fraction:
        return apply(self, p)


def from_moments(values: Sequence, label: str = "moments") -> MomentFunctional:
    """Functional with an explicit finite moment list; reading past its end is an error."""
    vals = [as_fraction(v) for v in values]
    return MomentFunctional(
        vals.__getitem__,
        limit=len(vals) - 1,
        spec={"kind": "moments", "values": [str(v) for v in vals]},
        label=label,
    )


def apply(U: MomentFunctional, p: Poly) -> Fraction:
    """``<U, p>``."""
    return sum((c * U.moment(k) for k, c in enumerate(p.coeffs) if c), Fraction(0))


def _shrink(limit, by):
    return None if limit is None else limit - by


def poly_mul(pi: Poly, U: MomentFunctional) -> MomentFunctional:
    """The functional ``pi U`` defined by ``<pi U, p> = <U, pi p>``."""
    coeffs = pi.coeffs

    def gen(n):
        return sum((c * U.moment(n + k) for k, c in enumerate(coeffs) if c), Fraction(0))

    spec = None
    if U.spec is not None:
        spec = {"kind": "polymul", "pi": [str(c) for c in coeffs], "base": U.spec}
    return MomentFunctional(
        gen,
        limit=_shrink(U.limit, max(pi.degree, 0)),
        horizon=U.horizon,
        spec=spec,
        label=f"({pi})*{U.label}",
    )


def dnu_functional(U: MomentFunctional, nu: NuParam, times: int = 1) -> MomentFunctional:
    """``D_nu U`` defined by ``<D_nu U, p> = -<U, D_{nu*} p>``, applied ``times`` times."""
    for _ in range(times):
        U = _dnu_once(U, nu)
    return U


def _dnu_once(U: MomentFunctional, nu: NuParam) -> MomentFunctional:
    dual = nu.dual()

    def gen(n, U=U):
        return -apply(U, dnu(Poly.monomial(n), dual))

    spec = None
    if U.spec is not None:
        spec = {"kind": "dnu", "nu": {"type": nu.kind, "value": str(nu.value)}, "base": U.spec}
    return MomentFunctional(
        gen,
        limit=None if U.limit is None else U.limit + 1,
        horizon=U.horizon,
        spec=spec,
        label=f"D[{nu}]{U.label}",
    )


def linear_combination(terms: Iterable[Tuple[object, MomentFunctional]]) -> MomentFunctional:
    """``sum c_i U_i`` for rational ``c_i``."""
    terms = [(as_fraction(c), U) for c, U in terms]

    def gen(n):
        return sum((c * U.moment(n) for c, U in terms if c), Fraction(0))

    limits = [U.limit for _, U in terms if U.limit is not None]
    return MomentFunctional(
        gen,
        limit=min(limits) if limits else None,
        label=" + ".join(f"{c}*{U.label}" for c, U in terms),
    )


def leibniz_expand(p: Poly, U: MomentFunctional, m: int, nu: NuParam) -> MomentFunctional:
    """Right-hand side of the higher-order product rule for ``D_nu^m [p U]``.

    Uniform lattice::

        sum_j C(m, j) (D^j p)(x + (m - j) omega) D^{m-j} U

    q-lattice::

        sum_j [m, j]_q q^j (D^j p)(q^{m-j} x) D^{m-j} U
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    terms = []
    for j in range(m + 1):
        factor = lattice_binom(m, j, nu)
        if not nu.is_omega:
            factor *= nu.value**j
        coeff_poly = arg_map(dnu(p, nu, j), nu, m - j) * factor
        if coeff_poly:
            terms.append((1, poly_mul(coeff_poly, dnu_functional(U, nu, m - j))))
    if not terms:
        return MomentFunctional(lambda n: Fraction(0), label="0")
    return linear_combination(terms)


def first_disagreement(U: MomentFunctional, V: MomentFunctional, degree: int) -> Optional[int]:
    """Smallest ``n <= degree`` with ``u_n != v_n``, or ``None`` if they agree."""
    for n in range(degree + 1):
        if U.moment(n) != V.moment(n):
            return n
    return None


def default_check_degree(n_max: int) -> int:
    return 2 * n_max + 5


@dataclass(frozen=True)
class RegularityReport:
    """Hankel determinants and the prefixes on which they are nonzero / positive.

    A prefix of ``-1`` means the first determinant already fails.
    """

    hankel_dets: Tuple[Fraction, ...]
    regular_prefix: int
    positive_definite_prefix: int


def hankel_matrix(U: MomentFunctional, n: int) -> List[List[Fraction]]:
    return [[U.moment(i + j) for j in range(n + 1)] for i in range(n + 1)]


def hankel_regularity(U: MomentFunctional, n_max: int) -> RegularityReport:
    dets = []
    full = hankel_matrix(U, n_max)
    for n in range(n_max + 1):
        dets.append(linalg.det([row[: n + 1] for row in full[: n + 1]]))
    regular = positive = -1
    for n, d in enumerate(dets):
        if d == 0:
            break
        regular = n
    for n, d in enumerate(dets):
        if d <= 0:
            break
        positive = n
    return RegularityReport(tuple(dets), regular, positive)
