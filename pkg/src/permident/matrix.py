"""Dense square matrices over exact commutative rings.

A ring is anything exposing ``zero``, ``one``, ``is_field`` and ``coerce``:
the module-level :data:`RATIONALS` and :data:`INTEGERS`, or a
:class:`~permident.cyclotomic.CycloField`. Permanents need only ring
operations; the determinant divides and therefore requires a field.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .cyclotomic import CycloField, CycloNum
from .errors import NonField, SizeGuard
from .rational import format_rat, parse_rat, to_rat

NAIVE_LIMIT = 10
RYSER_LIMIT = 24


@dataclass(frozen=True)
class Ring:
    name: str
    zero: Any
    one: Any
    is_field: bool
    coerce: Callable[[Any], Any]

    def __repr__(self) -> str:
        return self.name


def _to_int(value) -> int:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise TypeError(f"not an integer: {value!r}")


INTEGERS = Ring("ZZ", 0, 1, False, _to_int)
RATIONALS = Ring("QQ", Fraction(0), Fraction(1), True, to_rat)


def _infer_ring(rows: Sequence[Sequence[Any]]):
    for row in rows:
        for v in row:
            if isinstance(v, CycloNum):
                return v.field
    return RATIONALS


class SquareMatrix:
    """Immutable N x N matrix; entries are stored row-major and coerced into ``ring``.

    When ``ring`` is omitted it is inferred: the field of any cyclotomic
    entry, otherwise the rationals.
    """

    __slots__ = ("dim", "ring", "entries")

    def __init__(self, rows: Sequence[Sequence[Any]], ring=None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        if ring is None:
            ring = _infer_ring(rows)
        self.dim = n
        self.ring = ring
        self.entries = tuple(ring.coerce(v) for r in rows for v in r)

    @classmethod
    def from_function(cls, dim: int, fn: Callable[[int, int], Any], ring=None) -> SquareMatrix:
        """Build from ``fn(j, k)`` with one-based indices."""
        return cls([[fn(j, k) for k in range(1, dim + 1)] for j in range(1, dim + 1)], ring)

    @classmethod
    def identity(cls, dim: int, ring=RATIONALS) -> SquareMatrix:
        return cls.from_function(dim, lambda j, k: ring.one if j == k else ring.zero, ring)

    def __getitem__(self, idx: tuple[int, int]):
        i, j = idx
        return self.entries[i * self.dim + j]

    def rows(self) -> list[list[Any]]:
        n = self.dim
        return [list(self.entries[i * n : (i + 1) * n]) for i in range(n)]

    def columns(self) -> list[list[Any]]:
        n = self.dim
        return [list(self.entries[j::n]) for j in range(n)]

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(self.columns(), self.ring)

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> SquareMatrix:
        """Matrix whose (i, j) entry is ``self[row_order[i], col_order[j]]`` (zero-based)."""
        return SquareMatrix(
            [[self[r, c] for c in col_order] for r in row_order], self.ring
        )

    def with_row(self, i: int, row: Sequence[Any]) -> SquareMatrix:
        rows = self.rows()
        rows[i] = list(row)
        return SquareMatrix(rows, self.ring)

    def map(self, fn: Callable[[Any], Any]) -> SquareMatrix:
        return SquareMatrix([[fn(v) for v in r] for r in self.rows()], self.ring)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SquareMatrix)
            and other.dim == self.dim
            and other.entries == self.entries
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"SquareMatrix({self.dim}x{self.dim} over {self.ring!r}: {self})"


def format_matrix(m: SquareMatrix) -> str:
    """Rows joined by ``;``, entries by ``,``; cyclotomic entries as ``(a0,a1,...)``."""

    def fmt(v):
        return str(v) if isinstance(v, CycloNum) else format_rat(v)

    return ";".join(",".join(fmt(v) for v in row) for row in m.rows())


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_matrix(text: str, field: Optional[CycloField] = None) -> SquareMatrix:
    """Inverse of :func:`format_matrix`; pass ``field`` for cyclotomic entries."""
    rows = []
    for row_text in text.strip().split(";"):
        items = _split_top_level(row_text)
        rows.append([field.parse(t) if field is not None else parse_rat(t) for t in items])
    return SquareMatrix(rows, field)


def permanent_naive(m: SquareMatrix):
    """Sum over all permutations of the diagonal products; oracle for Ryser."""
    n = m.dim
    if n > NAIVE_LIMIT:
        raise SizeGuard("naive permanent dimension", n, NAIVE_LIMIT)
    rows = m.rows()
    zero = m.ring.zero
    if n == 0:
        return m.ring.one
    used = [False] * n

    # depth-first over permutations, sharing prefix products; every
    # permutation is still visited
    def walk(i: int, prefix):
        if i == n:
            return prefix
        total = zero
        row = rows[i]
        for t in range(n):
            if not used[t] and row[t]:
                used[t] = True
                total = total + walk(i + 1, prefix * row[t])
                used[t] = False
        return total

    return walk(0, m.ring.one)


def _ryser_partial(cols: list[list[Any]], zero, start: int, stop: int):
    """Signed Ryser sum over Gray-code indices ``start <= k < stop``.

    Returns sum of (-1)^(N - |S|) prod_i rowsum_i(S), where S is the column
    set encoded by gray(k) = k ^ (k >> 1).
    """
    n = len(cols)
    g = start ^ (start >> 1)
    sums = [zero] * n
    size = 0
    for j in range(n):
        if g >> j & 1:
            size += 1
            col = cols[j]
            sums = [s + c for s, c in zip(sums, col)]
    total = zero

    def accumulate(total, sums, size):
        prod = sums[0]
        for s in sums[1:]:
            if not prod:
                return total
            prod = prod * s
        return total + prod if (n - size) % 2 == 0 else total - prod

    if g:
        total = accumulate(total, sums, size)
    for k in range(start + 1, stop):
        j = (k & -k).bit_length() - 1
        col = cols[j]
        if (k ^ (k >> 1)) >> j & 1:
            sums = [s + c for s, c in zip(sums, col)]
            size += 1
        else:
            sums = [s - c for s, c in zip(sums, col)]
            size -= 1
        total = accumulate(total, sums, size)
    return total


def _ryser_task(args):
    return _ryser_partial(*args)


def permanent_ryser(m: SquareMatrix, workers: int = 1):
    """Ryser inclusion-exclusion over column subsets in Gray-code order.

    With ``workers > 1`` the index range is cut into contiguous chunks,
    evaluated in separate processes and summed in chunk order, so the
    result does not depend on scheduling.
    """
    n = m.dim
    if n > RYSER_LIMIT:
        raise SizeGuard("Ryser permanent dimension", n, RYSER_LIMIT)
    zero = m.ring.zero
    if n == 0:
        return m.ring.one
    cols = m.columns()
    end = 1 << n
    if workers <= 1 or n < 8:
        return _ryser_partial(cols, zero, 1, end)
    chunks = max(workers * 4, 1)
    bounds = [1 + (end - 1) * c // chunks for c in range(chunks + 1)]
    tasks = [(cols, zero, bounds[c], bounds[c + 1]) for c in range(chunks) if bounds[c] < bounds[c + 1]]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_ryser_task, tasks))
    total = zero
    for p in parts:
        total = total + p
    return total


def determinant(m: SquareMatrix):
    """Exact determinant by Gaussian elimination with first-nonzero pivoting."""
    if not getattr(m.ring, "is_field", False):
        raise NonField(f"determinant needs a field, got {m.ring!r}")
    n = m.dim
    a = m.rows()
    det = m.ring.one
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c]), None)
        if pivot is None:
            return m.ring.zero
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        p = a[c][c]
        det = det * p
        inv = 1 / p
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det
