"""Exact arithmetic in the cyclotomic field Q(zeta_n) = Q[x]/Phi_n.

Elements are residues modulo the n-th cyclotomic polynomial, so every
nonzero element is invertible. Internally an element is an integer
coefficient vector over a single positive common denominator, normalized so
that the gcd of all of them is 1; this keeps products to integer
convolutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .errors import FieldMismatch
from .rational import format_rat, parse_rat, to_rat

Scalar = Union[int, Fraction, "CycloNum"]


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPoly:
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + IntPoly(tuple(-c for c in other.coeffs))

    def __mul__(self, other: IntPoly) -> IntPoly:
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def divmod_monic(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                quot[i - d] = c
                for t, m in enumerate(divisor.coeffs):
                    rem[i - d + t] -= c * m
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:d]))

    def __call__(self, x):
        """Horner evaluation at any value supporting ``+`` and ``*`` with ints."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                if mono and abs(c) == 1:
                    coef = "-" if c < 0 else ""
                else:
                    coef = str(c)
                terms.append(coef + mono)
        return " + ".join(reversed(terms)).replace("+ -", "- ") or "0"


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """Phi_n by exact division of x^n - 1 by Phi_d over proper divisors d of n."""
    if n < 1:
        raise ValueError("cyclotomic_poly requires n >= 1")
    poly = IntPoly.monomial(n) - IntPoly((1,))
    for d in range(1, n):
        if n % d == 0:
            poly, rem = poly.divmod_monic(cyclotomic_poly(d))
            assert not rem.coeffs, "inexact cyclotomic division"
    return poly


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycloField:
    """The field Q(zeta_n), with zeta the class of x modulo Phi_n."""

    is_field = True

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("field order must be positive")
        self.order = order
        self.modulus = cyclotomic_poly(order)
        self.phi = self.modulus.degree
        # x^e mod Phi_n for phi <= e <= 2*phi - 2, enough to reduce any product
        self._fold = []
        for e in range(self.phi, 2 * self.phi - 1):
            _, r = IntPoly.monomial(e).divmod_monic(self.modulus)
            self._fold.append(list(r.coeffs) + [0] * (self.phi - len(r.coeffs)))

    def __repr__(self) -> str:
        return f"CycloField({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("CycloField", self.order))

    def _reduce_long(self, coeffs: Sequence[int]) -> list[int]:
        _, r = IntPoly(tuple(coeffs)).divmod_monic(self.modulus)
        return list(r.coeffs) + [0] * (self.phi - len(r.coeffs))

    def _make(self, num: Sequence[int], den: int = 1) -> CycloNum:
        obj = CycloNum.__new__(CycloNum)
        obj.field = self
        obj._num, obj._den = _normalize(list(num), den)
        return obj

    def element(self, coeffs: Iterable) -> CycloNum:
        """Class of sum coeffs[k] x^k, reduced modulo Phi_n."""
        fr = [to_rat(c) for c in coeffs]
        if not fr:
            return self.zero
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in fr]
        if len(ints) > self.phi:
            ints = self._reduce_long(ints)
        else:
            ints += [0] * (self.phi - len(ints))
        return self._make(ints, den)

    def constant(self, value) -> CycloNum:
        if isinstance(value, CycloNum):
            if value.field.order != self.order:
                raise FieldMismatch(f"Q(zeta_{value.field.order}) vs Q(zeta_{self.order})")
            return value
        r = to_rat(value)
        return self._make([r.numerator] + [0] * (self.phi - 1), r.denominator)

    @property
    def zero(self) -> CycloNum:
        return self._make([0] * self.phi)

    @property
    def one(self) -> CycloNum:
        return self.constant(1)

    def root_power(self, k: int) -> CycloNum:
        """zeta^k with k taken modulo n."""
        e = k % self.order
        if e < self.phi:
            return self._make([0] * e + [1] + [0] * (self.phi - e - 1))
        return self._make(self._reduce_long([0] * e + [1]))

    @property
    def zeta(self) -> CycloNum:
        return self.root_power(1)

    def coerce(self, value) -> CycloNum:
        return self.constant(value)

    def parse(self, text: str) -> CycloNum:
        """Parse ``"(a0,a1,...)"`` or a bare rational."""
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            return self.element(parse_rat(p) for p in s[1:-1].split(",") if p.strip())
        return self.constant(parse_rat(s))


@lru_cache(maxsize=None)
def cyclo_field(order: int) -> CycloField:
    """Shared field instance per order."""
    return CycloField(order)


class CycloNum:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("field", "_num", "_den")

    def __init__(self, field: CycloField, coeffs: Iterable = ()):
        made = field.element(coeffs)
        self.field = field
        self._num = made._num
        self._den = made._den

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def _other(self, other) -> Optional[CycloNum]:
        if isinstance(other, CycloNum):
            if other.field.order != self.field.order:
                raise FieldMismatch(
                    f"Q(zeta_{self.field.order}) vs Q(zeta_{other.field.order})"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.constant(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return self.field._make([a + b for a, b in zip(self._num, o._num)], self._den)
        return self.field._make(
            [a * o._den + b * self._den for a, b in zip(self._num, o._num)],
            self._den * o._den,
        )

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return self.field._make([-a for a in self._num], self._den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        phi = self.field.phi
        a, b = self._num, o._num
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        res = conv[:phi]
        for e, c in enumerate(conv[phi:]):
            if c:
                row = self.field._fold[e]
                for t in range(phi):
                    if row[t]:
                        res[t] += c * row[t]
        return self.field._make(res, self._den * o._den)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self._num)

    def inverse(self) -> CycloNum:
        """Multiplicative inverse via extended Euclid against Phi_n over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.field.order)
        # invariant: s_i * a == r_i (mod Phi_n)
        r0 = [Fraction(c) for c in self.field.modulus.coeffs]
        r1 = _trim([Fraction(c) for c in self._num])
        s0: list[Fraction] = []
        s1 = [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        # self = num/den, so (num)^-1 = s1/c and self^-1 = den * s1 / c
        inv = self.field.element(x / c for x in s1)
        return inv * self._den

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> CycloNum:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.field.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def as_rational(self) -> Optional[Fraction]:
        if any(self._num[1:]):
            return None
        return Fraction(self._num[0], self._den)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return (
                other.field.order == self.field.order
                and other._num == self._num
                and other._den == self._den
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.as_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash((self.field.order, self._num, self._den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return "(" + ",".join(format_rat(c) for c in self.coeffs) + ")"

    def __repr__(self) -> str:
        return f"CycloNum({self.field.order}, {self})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]
    return _trim([Fraction(c) for c in out])


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] / lead
        if c:
            quot[i - db] = c
            for t, bt in enumerate(b):
                rem[i - db + t] -= c * bt
    return _trim(quot), _trim(rem[:db])


# Functional aliases matching the operation names used in the docs.
def root_power(field: CycloField, k: int) -> CycloNum:
    return field.root_power(k)


def cyclo_add(a: CycloNum, b: CycloNum) -> CycloNum:
    return a + b


def cyclo_mul(a: CycloNum, b: CycloNum) -> CycloNum:
    return a * b


def cyclo_inv(a: CycloNum) -> CycloNum:
    return a.inverse()


def as_rational(a: CycloNum) -> Optional[Fraction]:
    return a.as_rational()
