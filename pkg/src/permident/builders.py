"""Constructors for the structured matrices studied by the identity suite."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .cyclotomic import CycloNum, cyclo_field
from .errors import DegenerateDenominator, DomainError, DuplicatePoints
from .matrix import RATIONALS, SquareMatrix
from .rational import RatLike, to_rat


def check_points(xs: Sequence[RatLike]) -> list[Fraction]:
    """Coerce to rationals and reject duplicates; zeros are allowed."""
    pts = [to_rat(x) for x in xs]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints(f"points must be pairwise distinct: {[str(p) for p in pts]}")
    return pts


def build_X(xs: Sequence[RatLike]) -> SquareMatrix:
    """Entries (x_j + x_k)/(x_j - x_k) off the diagonal, 1 on it."""
    pts = check_points(xs)
    return SquareMatrix.from_function(
        len(pts),
        lambda j, k: Fraction(1) if j == k else (pts[j - 1] + pts[k - 1]) / (pts[j - 1] - pts[k - 1]),
        RATIONALS,
    )


def build_X_minus_J(xs: Sequence[RatLike]) -> SquareMatrix:
    """build_X minus the all-ones matrix: 2 x_k/(x_j - x_k) off the diagonal, 0 on it."""
    pts = check_points(xs)
    return SquareMatrix.from_function(
        len(pts),
        lambda j, k: Fraction(0) if j == k else 2 * pts[k - 1] / (pts[j - 1] - pts[k - 1]),
        RATIONALS,
    )


def build_A(n: int) -> SquareMatrix:
    """2n x 2n sign matrix: +1 on and below the diagonal, -1 above."""
    if n < 1:
        raise DomainError("build_A needs n >= 1")
    return SquareMatrix.from_function(2 * n, lambda i, j: 1 if i >= j else -1, RATIONALS)


def build_M(n: int) -> SquareMatrix:
    """(2n+1) x (2n+1) matrix over indices 0..2n with (j + k)/(j - k) off the diagonal."""
    if n < 1:
        raise DomainError("build_M needs n >= 1")
    return SquareMatrix(
        [
            [Fraction(1) if j == k else Fraction(j + k, j - k) for k in range(2 * n + 1)]
            for j in range(2 * n + 1)
        ],
        RATIONALS,
    )


def build_C(n: int, size: int, k: int = 1) -> SquareMatrix:
    """size x size matrix over Q(zeta_n) with (1 + w^(j-l))/(1 - w^(j-l)) off the diagonal.

    ``w = zeta^k``; the default k = 1 is the class of x. ``k`` must be a unit
    mod n so that w is again primitive.
    """
    if n < 2:
        raise DomainError("build_C needs n > 1")
    if not 1 <= size <= n:
        raise DomainError(f"size {size} must lie in 1..{n}")
    if gcd(k, n) != 1:
        raise DomainError(f"zeta^{k} is not primitive of order {n}")
    field = cyclo_field(n)
    one = field.one
    # c_{j,l} depends only on (j - l) mod n
    table: dict[int, CycloNum] = {}
    for d in range(1, n):
        w = field.root_power(k * d)
        den = one - w
        if den.is_zero():
            raise DegenerateDenominator(f"1 - zeta^{k * d} vanished in Q(zeta_{n})")
        table[d] = (one + w) / den

    return SquareMatrix.from_function(
        size, lambda j, l: one if j == l else table[(j - l) % n], field
    )
