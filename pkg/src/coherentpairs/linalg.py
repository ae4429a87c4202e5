"""Exact linear algebra over Q.

Thin wrappers around sympy's ``DomainMatrix`` over ``QQ`` (gmpy2-backed when
available).  Inputs and outputs are lists of :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = List[List[Fraction]]


def _to_dm(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    data = [[QQ(int(v.numerator), int(v.denominator)) for v in row] for row in rows]
    return DomainMatrix(data, (nrows, ncols), QQ)


def _to_frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def _from_dm(dm: DomainMatrix) -> Matrix:
    return [[_to_frac(v) for v in row] for row in dm.to_list()]


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant; the empty matrix has determinant 1."""
    if len(rows) == 0:
        return Fraction(1)
    return _to_frac(_to_dm(rows).det())


def rref(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None):
    """Reduced row echelon form and pivot columns."""
    if not rows:
        return [], ()
    red, pivots = _to_dm(rows, ncols).rref()
    return _from_dm(red)[: len(pivots)], tuple(pivots)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Canonical basis of the right null space.

    The basis is returned in reduced row echelon form, so every vector has a
    leading 1 and the result is independent of how the equations were ordered.
    """
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    basis = _to_dm(rows, ncols).nullspace()
    if basis.shape[0] == 0:
        return []
    red, _ = rref(_from_dm(basis), ncols)
    return red


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Solve ``A x = b`` exactly.

    Returns the solution with every free variable set to zero, or ``None`` when
    the system is inconsistent.  Overdetermined systems are allowed.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Solve a square nonsingular system; ``None`` if singular."""
    n = len(rows)
    if n == 0:
        return []
    A = _to_dm(rows)
    if A.rank() < n:
        return None
    b = _to_dm([[Fraction(v)] for v in rhs], 1)
    sol = A.lu_solve(b)
    return [_to_frac(row[0]) for row in sol.to_list()]


def solve_affine(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Particular solution (free variables zero) and null-space basis of ``A x = b``.

    Returns ``None`` if the system is inconsistent.
    """
    x = solve(rows, rhs)
    if x is None:
        return None
    ncols = len(rows[0]) if rows else 0
    return x, nullspace(rows, ncols)
