from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest
import sympy

from permident.errors import DomainError, InternalInconsistency, SizeGuard
from permident.perms import (
    Permutation,
    all_permutations,
    bernoulli,
    cycle_decompose,
    derangements,
    double_factorial,
    even_cycle_perms,
    k_cycles,
    pair_partitions,
    subfactorial,
    tangent_numbers,
)


def brute_filter(size, pred):
    return [Permutation(p) for p in permutations(range(1, size + 1)) if pred(Permutation(p))]


@pytest.mark.parametrize("size, count", [(1, 1), (4, 24), (6, 720)])
def test_all_permutations(size, count):
    perms = list(all_permutations(size))
    assert len(perms) == count == len(set(perms))
    assert [p.images for p in perms] == sorted(p.images for p in perms)


def test_derangements_examples():
    assert [p.images for p in derangements(2)] == [(2, 1)]
    assert list(derangements(4)) == brute_filter(4, lambda p: not p.fixed)
    # D_n = (n-1)(D_{n-1} + D_{n-2}) computed by subfactorial
    assert sum(1 for _ in derangements(8)) == subfactorial(8) == 14833


@pytest.mark.parametrize("size", range(1, 8))
def test_derangement_count(size):
    assert sum(1 for _ in derangements(size)) == round(factorial(size) / 2.718281828459045)


@pytest.mark.parametrize("size, k, count", [(4, 4, 6), (4, 2, 6), (6, 4, 90)])
def test_k_cycles_examples(size, k, count):
    cyc = list(k_cycles(size, k))
    assert len(cyc) == count == comb(size, k) * factorial(k - 1)
    assert set(cyc) == set(brute_filter(size, lambda p: p.cycle_type() == [k]))


def test_k_cycles_domain():
    with pytest.raises(DomainError):
        list(k_cycles(4, 1))
    with pytest.raises(DomainError):
        list(k_cycles(4, 5))


def _even_only(p):
    ct = p.cycle_type()
    return bool(ct) and all(c % 2 == 0 for c in ct)


@pytest.mark.parametrize("size", [2, 4, 6, 8])
def test_even_cycle_perms(size):
    got = list(even_cycle_perms(size))
    assert got == brute_filter(size, _even_only)
    if size == 4:
        assert len(got) == 15
    if size == 2:
        assert len(got) == 1


def test_even_cycle_odd_size():
    with pytest.raises(DomainError):
        list(even_cycle_perms(5))


@pytest.mark.parametrize("size, count", [(2, 1), (4, 3), (10, 945)])
def test_pair_partitions(size, count):
    parts = list(pair_partitions(size))
    assert len(parts) == count == double_factorial(size - 1)
    assert len({pp.pairs for pp in parts}) == count
    for pp in parts:
        pts = sorted(x for pair in pp.pairs for x in pair)
        assert pts == list(range(1, size + 1))
    if size == 4:
        assert [pp.pairs for pp in parts] == [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]


def test_pair_partitions_odd():
    with pytest.raises(DomainError):
        list(pair_partitions(3))


@pytest.mark.parametrize(
    "gen", [lambda: all_permutations(13), lambda: derangements(13), lambda: k_cycles(13, 2), lambda: pair_partitions(22)]
)
def test_size_guards(gen):
    with pytest.raises(SizeGuard):
        next(iter(gen()))


def test_cycle_decompose_examples():
    d = cycle_decompose(Permutation.identity(4))
    assert d.cycles == () and d.fixed == (1, 2, 3, 4)
    d = cycle_decompose(Permutation((2, 1, 4, 3)))
    assert d.cycles == ((1, 2), (3, 4)) and d.fixed == ()
    d = cycle_decompose(Permutation((2, 3, 4, 1)))
    assert d.cycles == ((1, 2, 3, 4),)
    assert str(d) == "(1 2 3 4)"


def test_cycle_decompose_roundtrip(rng):
    for _ in range(200):
        size = rng.randint(1, 10)
        img = list(range(1, size + 1))
        rng.shuffle(img)
        tau = Permutation(img)
        d = cycle_decompose(tau)
        assert d.recompose() == tau
        assert len(d.moved) == size - len(d.fixed)
        assert set(d.moved) | set(d.fixed) == set(range(1, size + 1))
        assert list(d.fixed) == tau.fixed


def test_permutation_text():
    assert str(Permutation((2, 1, 4, 3))) == "[2,1,4,3]"
    assert Permutation.parse("[2,1,4,3]") == Permutation.parse("(1 2)(3 4)")
    assert Permutation.parse("(1 3)", size=4).images == (3, 2, 1, 4)
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_composition_and_inverse():
    s = Permutation.parse("(1 2 3)", 4)
    t = Permutation.parse("(3 4)", 4)
    assert (s * t)(4) == s(t(4)) == 1
    assert s * s.inverse() == Permutation.identity(4)


@pytest.mark.parametrize("m, value", [(0, 1), (-1, 1), (7, 105), (9, 945), (8, 384)])
def test_double_factorial(m, value):
    assert double_factorial(m) == value


@pytest.mark.parametrize("m, value", [(2, Fraction(1, 6)), (4, Fraction(-1, 30)), (6, Fraction(1, 42))])
def test_bernoulli_examples(m, value):
    assert bernoulli(m) == value


def test_bernoulli_against_sympy():
    for m in range(2, 61, 2):
        assert bernoulli(m) == Fraction(str(sympy.bernoulli(m)))
    with pytest.raises(SizeGuard):
        bernoulli(62)
    with pytest.raises(DomainError):
        bernoulli(3)


def test_tangent_numbers():
    t = tangent_numbers(20)
    assert t[:5] == [1, 2, 16, 272, 7936]
    assert all(v > 0 for v in t)
    x = sympy.Symbol("x")
    series = sympy.series(sympy.tan(x), x, 0, 20).removeO()
    for n in range(1, 11):
        assert t[n - 1] == series.coeff(x, 2 * n - 1) * sympy.factorial(2 * n - 1)


def test_tangent_paths_must_agree(monkeypatch):
    import permident.perms as perms

    monkeypatch.setattr(perms, "_tangent_triangle", lambda n: [1] * n)
    with pytest.raises(InternalInconsistency):
        perms.tangent_numbers(3)
