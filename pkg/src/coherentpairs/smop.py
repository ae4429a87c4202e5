"""Monic orthogonal polynomial sequences from moments, their TTRR and derived sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .calculus import NuParam, Poly, dnu, eta_factor
from .errors import NonRegularError
from .functional import MomentFunctional, apply

_X = Poly.x()


@dataclass(frozen=True)
class Smop:
    """Monic orthogonal sequence with respect to ``source``.

    ``polys[n]`` is ``P_n``; ``alpha[n]`` and ``beta[n]`` are the TTRR
    coefficients in ``P_{n+1} = (x - alpha_n) P_n - beta_n P_{n-1}``;
    ``norms[n] = <U, P_n^2>``.  By convention ``beta[0] = norms[0]``.
    """

    polys: Tuple[Poly, ...]
    alpha: Tuple[Fraction, ...]
    beta: Tuple[Fraction, ...]
    norms: Tuple[Fraction, ...]
    source: Optional[MomentFunctional] = field(default=None, compare=False)

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n: int) -> Poly:
        return self.polys[n]

    def is_positive_definite(self) -> bool:
        return all(b > 0 for b in self.beta)


def smop_from_moments(U: MomentFunctional, n_max: int) -> Smop:
    """Stieltjes/Gram-Schmidt orthogonalization of ``1, x, ..., x^{n_max}`` against ``U``.

    Raises
    ------
    NonRegularError
        If ``<U, P_n^2>`` vanishes; ``.index`` is the first bad ``n``.
    """
    polys: List[Poly] = [Poly.const(1)]
    norms: List[Fraction] = []
    alpha: List[Fraction] = []
    beta: List[Fraction] = []
    prev = Poly.zero()
    for n in range(n_max + 1):
        P = polys[n]
        sq = P * P
        xi = apply(U, sq)
        if xi == 0:
            raise NonRegularError(f"{U.label}: Hankel determinant vanishes at n={n}", index=n)
        norms.append(xi)
        a = apply(U, _X * sq) / xi
        b = xi if n == 0 else xi / norms[n - 1]
        alpha.append(a)
        beta.append(b)
        if n < n_max:
            nxt = (_X - a) * P - (prev * b if n > 0 else Poly.zero())
            polys.append(nxt)
            prev = P
    return Smop(tuple(polys), tuple(alpha), tuple(beta), tuple(norms), U)


def polys_from_ttrr(alpha: Sequence[Fraction], beta: Sequence[Fraction], n_max: int) -> List[Poly]:
    """Rebuild ``P_0..P_{n_max}`` from recurrence coefficients (Favard)."""
    polys = [Poly.const(1)]
    prev = Poly.zero()
    for n in range(n_max):
        nxt = (_X - alpha[n]) * polys[n] - (prev * beta[n] if n > 0 else Poly.zero())
        prev = polys[n]
        polys.append(nxt)
    return polys


@dataclass(frozen=True)
class DerivedSmop:
    """``P^{[m, nu]}_n = D_nu^m P_{n+m} / eta_{n,m,nu}``."""

    m: int
    nu: NuParam
    polys: Tuple[Poly, ...]

    def __getitem__(self, n: int) -> Poly:
        return self.polys[n]


def derived_polys(polys: Sequence[Poly], m: int, nu: NuParam) -> List[Poly]:
    out = []
    for n in range(len(polys) - m):
        d = dnu(polys[n + m], nu, m) / eta_factor(n, m, nu)
        if not d.is_monic() or d.degree != n:
            raise ArithmeticError(f"derived polynomial {n} is not monic of degree {n}")
        out.append(d)
    return out


def derived_smop(P: Smop, m: int, nu: NuParam) -> DerivedSmop:
    return DerivedSmop(m, nu, tuple(derived_polys(P.polys, m, nu)))


def expand_in_basis(f: Poly, P: Smop) -> List[Fraction]:
    """Fourier coefficients ``<U, f P_i> / <U, P_i^2>`` of ``f`` in the orthogonal basis."""
    if f.degree > P.n_max:
        raise IndexError(f"degree {f.degree} exceeds stored basis (n_max={P.n_max})")
    size = max(f.degree, 0) + 1
    return [apply(P.source, f * P.polys[i]) / P.norms[i] for i in range(size)]


def expand_in_monic_basis(f: Poly, basis: Sequence[Poly]) -> List[Fraction]:
    """Coefficients of ``f`` in any basis with ``deg basis[i] = i`` (triangular solve)."""
    if f.degree >= len(basis):
        raise IndexError(f"degree {f.degree} exceeds basis length {len(basis)}")
    coeffs = [Fraction(0)] * (max(f.degree, 0) + 1)
    r = f
    while r:
        d = r.degree
        c = r.lead / basis[d].lead
        coeffs[d] = c
        r = r - basis[d] * c
        if r and r.degree >= d:
            raise ArithmeticError("basis element has wrong degree")
    return coeffs
