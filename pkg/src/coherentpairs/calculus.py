"""Exact polynomials over the rationals and the difference operators D_omega, D_q.

Scalars are :class:`fractions.Fraction` throughout.  Polynomials are dense,
immutable, and store coefficients in ascending degree order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

from .errors import DegenerateParameterError

Scalar = Union[int, Fraction, str]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and canonical strings ``"p/q"`` to Fraction.

    Floats are rejected: every value in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; pass a string or Fraction")
    # gmpy2.mpq, sympy Rational and friends
    try:
        return Fraction(int(value.numerator), int(value.denominator))
    except AttributeError:
        raise TypeError(f"cannot interpret {value!r} as an exact rational") from None


class Poly:
    """Dense polynomial with exact rational coefficients, ascending order.

    The zero polynomial has an empty coefficient tuple and degree -1.

    >>> p = Poly([1, -3, 1])
    >>> p.degree, p(2)
    (2, Fraction(-1, 1))
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent")
        return cls([0] * n + [c])

    # -- inspection -------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"({c})*{mono}" if c.denominator != 1 else f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_fraction(other)
        if other == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return Poly([c / other for c in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic normalization")
        return self / self.lead

    def shift(self, h: Scalar) -> "Poly":
        """Return ``p(x + h)``."""
        h = as_fraction(h)
        if h == 0:
            return self
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            hp = Fraction(1)
            for i in range(k, -1, -1):
                out[i] += c * comb(k, i) * hp
                hp *= h
        return Poly(out)

    def dilate(self, c: Scalar) -> "Poly":
        """Return ``p(c x)``."""
        c = as_fraction(c)
        out, ck = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * ck)
            ck *= c
        return Poly(out)


def _coerce(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
        return Poly.const(other)
    return None


@dataclass(frozen=True)
class NuParam:
    """Lattice parameter: ``kind`` is ``"omega"`` (uniform) or ``"q"`` (q-lattice)."""

    kind: str
    value: Fraction

    def __post_init__(self):
        if self.kind not in ("omega", "q"):
            raise ValueError(f"unknown lattice kind {self.kind!r}")
        v = as_fraction(self.value)
        object.__setattr__(self, "value", v)
        if self.kind == "omega" and v == 0:
            raise ValueError("omega must be nonzero")
        if self.kind == "q" and v in (0, 1, -1):
            raise ValueError("q must not be 0, 1 or -1")

    @classmethod
    def omega(cls, w: Scalar) -> "NuParam":
        return cls("omega", as_fraction(w))

    @classmethod
    def q(cls, q: Scalar) -> "NuParam":
        return cls("q", as_fraction(q))

    @property
    def is_omega(self) -> bool:
        return self.kind == "omega"

    def dual(self) -> "NuParam":
        if self.kind == "omega":
            return NuParam("omega", -self.value)
        return NuParam("q", 1 / self.value)

    def __str__(self):
        return f"{self.kind}:{self.value}"


def q_pochhammer(a: Scalar, q: Scalar, n: int) -> Fraction:
    """``(a; q)_n = (1 - a)(1 - a q) ... (1 - a q^{n-1})``."""
    a, q = as_fraction(a), as_fraction(q)
    out, t = Fraction(1), a
    for _ in range(n):
        out *= 1 - t
        t *= q
    return out


def q_number(n: int, q: Scalar) -> Fraction:
    """``[n]_q = 1 + q + ... + q^{n-1}``."""
    q = as_fraction(q)
    return sum((q**i for i in range(n)), Fraction(0))


def q_binom(n: int, j: int, q: Scalar) -> Fraction:
    """Gaussian binomial coefficient ``(q;q)_n / ((q;q)_j (q;q)_{n-j})``."""
    if n < 0 or j < 0:
        raise ValueError("q_binom needs nonnegative arguments")
    if j > n:
        raise ValueError(f"q_binom: j={j} exceeds n={n}")
    q = as_fraction(q)
    num = q_pochhammer(q, q, n)
    den = q_pochhammer(q, q, j) * q_pochhammer(q, q, n - j)
    if num == 0 or den == 0:
        raise DegenerateParameterError(f"(q;q)_k vanishes for q={q}, k<={n}")
    return num / den


def eta_factor(n: int, m: int, nu: NuParam) -> Fraction:
    """Normalization making ``D_nu^m P_{n+m} / eta`` monic.

    ``(n+1)_m`` on the uniform lattice, ``(q^{n+1}; q)_m / (1-q)^m`` on the
    q-lattice.
    """
    if n < 0 or m < 0:
        raise ValueError("eta_factor needs n >= 0 and m >= 0")
    if nu.is_omega:
        out = Fraction(1)
        for j in range(m):
            out *= n + 1 + j
        return out
    q = nu.value
    out = q_pochhammer(q ** (n + 1), q, m) / (1 - q) ** m
    if out == 0:
        raise DegenerateParameterError(f"eta_{{{n},{m}}} vanishes for q={q}")
    return out


def arg_map(p: Poly, nu: NuParam, j: int) -> Poly:
    """``p(x + j omega)`` or ``p(q^j x)``."""
    if j == 0:
        return p
    if nu.is_omega:
        return p.shift(j * nu.value)
    return p.dilate(nu.value**j)


def dnu(p: Poly, nu: NuParam, times: int = 1) -> Poly:
    """Apply the difference operator ``D_nu`` ``times`` times."""
    for _ in range(times):
        if p.degree < 1:
            return Poly.zero()
        if nu.is_omega:
            p = (p.shift(nu.value) - p) / nu.value
        else:
            q = nu.value
            # coefficient of x^k contributes [k]_q x^{k-1}
            out, qk = [], Fraction(1)
            for c in p.coeffs[1:]:
                qk *= q
                out.append(c * (qk - 1) / (q - 1))
            p = Poly(out)
    return p


def dnu_antiderivative(f: Poly, nu: NuParam) -> Poly:
    """Unique ``F`` with ``D_nu F = f`` and zero constant term."""
    if not nu.is_omega:
        q = nu.value
        out = [Fraction(0)]
        for k, c in enumerate(f.coeffs):
            qn = q_number(k + 1, q)
            if qn == 0:
                raise DegenerateParameterError(f"[{k + 1}]_q vanishes for q={q}")
            out.append(c / qn)
        return Poly(out)
    # uniform lattice: peel off the leading term, D_omega x^{d+1} has lead d+1
    F, r = Poly.zero(), f
    while r:
        d = r.degree
        term = Poly.monomial(d + 1, r.lead / (d + 1))
        F = F + term
        r = r - dnu(term, nu)
    return F


def lattice_binom(m: int, j: int, nu: NuParam) -> Fraction:
    """Binomial factor of the higher-order product rule on the given lattice."""
    if nu.is_omega:
        return Fraction(comb(m, j))
    return q_binom(m, j, nu.value)


def poly_from_roots(roots: Sequence[Scalar]) -> Poly:
    out = Poly.const(1)
    for r in roots:
        out = out * Poly([-as_fraction(r), 1])
    return out
