"""Permutations, cycle structure and the combinatorial generators.

Permutations are one-based: ``Permutation((2, 1, 4, 3))`` maps 1->2, 2->1,
3->4, 4->3. All generators are deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterator, Sequence

from .errors import DomainError, InternalInconsistency, SizeGuard

PERM_LIMIT = 12
MATCHING_LIMIT = 20
BERNOULLI_LIMIT = 60
TANGENT_LIMIT = 30


class Permutation:
    """Bijection of {1..N} stored as its one-based image list."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {list(images)}")
        self.images = images

    @classmethod
    def identity(cls, size: int) -> Permutation:
        return cls(range(1, size + 1))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], size: int) -> Permutation:
        img = list(range(1, size + 1))
        seen: set[int] = set()
        for cyc in cycles:
            if seen.intersection(cyc) or len(set(cyc)) != len(cyc):
                raise ValueError("cycles must be disjoint")
            seen.update(cyc)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(img)

    @classmethod
    def parse(cls, text: str, size: int | None = None) -> Permutation:
        """Accept an image list ``"[2,1,4,3]"`` or cycle notation ``"(1 2)(3 4)"``."""
        s = text.strip()
        if s.startswith("["):
            return cls(int(t) for t in s.strip("[]").split(",") if t.strip())
        cycles = [
            [int(t) for t in body.replace(",", " ").split()]
            for body in re.findall(r"\(([^()]*)\)", s)
        ]
        if size is None:
            size = max((max(c) for c in cycles if c), default=0)
        return cls.from_cycles([c for c in cycles if c], size)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: ``(p * q)(j) == p(q(j))``."""
        if len(other) != len(self):
            raise ValueError("size mismatch")
        return Permutation(self.images[q - 1] for q in other.images)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for j, t in enumerate(self.images, 1):
            inv[t - 1] = j
        return Permutation(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and other.images == self.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __repr__(self) -> str:
        return f"Permutation({self})"

    @property
    def fixed(self) -> list[int]:
        return [j for j, t in enumerate(self.images, 1) if j == t]

    @property
    def moved(self) -> list[int]:
        return [j for j, t in enumerate(self.images, 1) if j != t]

    def is_identity(self) -> bool:
        return all(j == t for j, t in enumerate(self.images, 1))

    def cycle_type(self) -> list[int]:
        return sorted(len(c) for c in cycle_decompose(self).cycles)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in cycle_decompose(self).cycles) % 2 else 1


@dataclass(frozen=True)
class CycleDecomposition:
    size: int
    cycles: tuple[tuple[int, ...], ...]
    fixed: tuple[int, ...]

    @property
    def moved(self) -> tuple[int, ...]:
        return tuple(sorted(j for c in self.cycles for j in c))

    def recompose(self) -> Permutation:
        return Permutation.from_cycles(self.cycles, self.size)

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles) or "()"


def cycle_decompose(tau: Permutation) -> CycleDecomposition:
    """Cycles of length >= 2, each starting at its smallest point, plus fixed points."""
    n = len(tau)
    seen = [False] * (n + 1)
    cycles = []
    fixed = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = tau(start)
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = tau(j)
        if len(cyc) == 1:
            fixed.append(start)
        else:
            cycles.append(tuple(cyc))
    return CycleDecomposition(n, tuple(cycles), tuple(fixed))


@dataclass(frozen=True)
class PairPartition:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pts = [p for pair in self.pairs for p in pair]
        if sorted(pts) != list(range(1, len(pts) + 1)) or any(a == b for a, b in self.pairs):
            raise ValueError(f"not a pair partition: {self.pairs}")

    def __str__(self) -> str:
        return "|".join(f"{a} {b}" for a, b in self.pairs)


def _guard(what: str, value: int, limit: int) -> None:
    if value > limit:
        raise SizeGuard(what, value, limit)


def all_permutations(size: int) -> Iterator[Permutation]:
    """Every permutation of {1..size}, lexicographic on images."""
    _guard("permutation size", size, PERM_LIMIT)
    for p in permutations(range(1, size + 1)):
        yield Permutation(p)


def derangements(size: int) -> Iterator[Permutation]:
    """Fixed-point-free permutations, lexicographic on images."""
    _guard("permutation size", size, PERM_LIMIT)
    img = [0] * size
    used = [False] * (size + 1)

    def extend(pos: int):
        if pos == size:
            yield Permutation(img)
            return
        for v in range(1, size + 1):
            if not used[v] and v != pos + 1:
                used[v] = True
                img[pos] = v
                yield from extend(pos + 1)
                used[v] = False

    if size >= 1:
        yield from extend(0)


def subfactorial(size: int) -> int:
    a, b = 1, 0  # D_0, D_1
    if size == 0:
        return 1
    for m in range(2, size + 1):
        a, b = b, (m - 1) * (a + b)
    return b


def k_cycles(size: int, k: int) -> Iterator[Permutation]:
    """All single k-cycles on {1..size}.

    Supports are visited in lexicographic order; within a support the cycle
    starts at its smallest point and the rest follow in lexicographic order.
    """
    _guard("permutation size", size, PERM_LIMIT)
    if not 2 <= k <= size:
        raise DomainError(f"cycle length {k} outside 2..{size}")
    for support in combinations(range(1, size + 1), k):
        head, rest = support[0], support[1:]
        for arrangement in permutations(rest):
            img = list(range(1, size + 1))
            cyc = (head,) + arrangement
            for a, b in zip(cyc, cyc[1:] + (head,)):
                img[a - 1] = b
            yield Permutation(img)


def even_cycle_perms(size: int) -> Iterator[Permutation]:
    """Non-identity permutations whose nontrivial cycles all have even length."""
    _guard("permutation size", size, PERM_LIMIT)
    if size % 2:
        raise DomainError("even_cycle_perms needs an even size")
    for p in all_permutations(size):
        ct = p.cycle_type()
        if ct and all(c % 2 == 0 for c in ct):
            yield p


def pair_partitions(size: int) -> Iterator[PairPartition]:
    """All (size-1)!! perfect matchings; the smallest unpaired point anchors each pair."""
    _guard("matching size", size, MATCHING_LIMIT)
    if size % 2 or size < 0:
        raise DomainError("pair_partitions needs an even size")

    def rec(remaining: tuple[int, ...]):
        if not remaining:
            yield ()
            return
        a = remaining[0]
        for i in range(1, len(remaining)):
            b = remaining[i]
            rest = remaining[1:i] + remaining[i + 1 :]
            for tail in rec(rest):
                yield ((a, b),) + tail

    for pairs in rec(tuple(range(1, size + 1))):
        yield PairPartition(pairs)


def double_factorial(m: int) -> int:
    """m!! with 0!! = (-1)!! = 1."""
    if m < -1:
        raise DomainError("double factorial undefined below -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{j} C(j+1, k) B_k = 0, B_0 = 1, giving B_1 = -1/2
    b = [Fraction(1)]
    for j in range(1, m + 1):
        b.append(-sum(comb(j + 1, k) * b[k] for k in range(j)) / (j + 1))
    return tuple(b)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m for even m (B_1 = -1/2 convention)."""
    _guard("bernoulli index", m, BERNOULLI_LIMIT)
    if m < 0 or m % 2:
        raise DomainError("bernoulli expects an even nonnegative index")
    return _bernoulli_table(m)[m]


def _tangent_from_bernoulli(n: int) -> int:
    # (-1)^n T_n = 2^{2n} (1 - 2^{2n}) B_{2n} / (2n)
    val = Fraction(4**n * (1 - 4**n)) * bernoulli(2 * n) / (2 * n)
    val *= (-1) ** n
    if val.denominator != 1:
        raise InternalInconsistency(f"non-integral tangent number at n={n}: {val}")
    return val.numerator


def _tangent_triangle(max_n: int) -> list[int]:
    t = [0] * (max_n + 1)
    if max_n >= 1:
        t[1] = 1
    for k in range(2, max_n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, max_n + 1):
        for j in range(k, max_n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t[1:]


def tangent_numbers(max_n: int) -> list[int]:
    """T_1..T_max_n, computed from Bernoulli numbers and from the tangent
    triangle; the two must agree."""
    _guard("tangent index", max_n, TANGENT_LIMIT)
    tri = _tangent_triangle(max_n)
    via_b = [_tangent_from_bernoulli(n) for n in range(1, max_n + 1)]
    if tri != via_b:
        bad = next(i for i in range(max_n) if tri[i] != via_b[i]) + 1
        raise InternalInconsistency(f"tangent paths disagree at n={bad}")
    return tri
