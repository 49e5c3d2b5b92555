"""Exact rationals and their text format.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator. This module only adds the
canonical text format used in reports and on the command line: ``"p/q"``
with ``q > 1``, or ``"p"`` when the denominator is 1.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rat = Fraction
RatLike = Union[int, Fraction]

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def to_rat(value: RatLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rat(value: RatLike) -> str:
    """Render in canonical text form, e.g. ``-436619903/4050``."""
    return str(to_rat(value))


def parse_rat(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``; the sign may only lead the numerator.

    A Unicode minus sign is accepted in place of ``-``. Non-reduced input
    such as ``2/4`` is accepted and normalized.
    """
    s = text.strip().replace("−", "-")
    m = _RAT_RE.match(s)
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_rat_list(text: str) -> list[Fraction]:
    return [parse_rat(part) for part in text.split(",") if part.strip()]
