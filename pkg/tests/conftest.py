"""Shared fixtures, random chain generators, and independent brute-force oracles."""

from __future__ import annotations

import random
from collections import Counter
from itertools import combinations
from math import isqrt

import pytest

from ccc.constellation import CodeChain, Point, points_in_box, residues
from ccc.f2 import BinaryCode, Word, span, unpack
from ccc.presets import example1, example3, example5


@pytest.fixture
def e1() -> CodeChain:
    return example1()


@pytest.fixture
def e3() -> CodeChain:
    return example3()


@pytest.fixture
def e5() -> CodeChain:
    return example5()


def random_linear_code(rng: random.Random, n: int, kmax: int) -> BinaryCode:
    k = rng.randint(0, kmax)
    rows = [tuple(rng.randint(0, 1) for _ in range(n)) for _ in range(k)]
    return span(rows, n=n)


def random_l2_chain(rng: random.Random, nmax: int = 6) -> CodeChain:
    n = rng.randint(1, nmax)
    return CodeChain.of(
        random_linear_code(rng, n, min(3, n)),
        random_linear_code(rng, n, min(4, n)),
    )


def random_nested_chain(rng: random.Random, nmax: int = 4, levels: int = 3) -> CodeChain:
    """Nested by construction: each lower level spans a subset of the level above."""
    n = rng.randint(1, nmax)
    codes = [random_linear_code(rng, n, n)]
    for _ in range(levels - 1):
        words = sorted(codes[0].words)
        sub = span(rng.sample(words, rng.randint(0, len(words))), n=n)
        codes.insert(0, sub)
    return CodeChain(codes=tuple(codes))


def random_member(rng: random.Random, chain: CodeChain, spread: int = 2) -> Point:
    s = rng.choice(residues(chain).sorted)
    m = chain.modulus
    return tuple(x + m * rng.randint(-spread, spread) for x in s)


def brute_spectrum(chain: CodeChain, c: Point, r2max: int) -> dict[int, int]:
    """Independent oracle: enumerate the bounding box and filter by the ball."""
    r = isqrt(r2max)
    lo = tuple(x - r for x in c)
    hi = tuple(x + r for x in c)
    counts: Counter[int] = Counter()
    for p in points_in_box(chain, lo, hi):
        d2 = sum((a - b) ** 2 for a, b in zip(p, c))
        if 0 < d2 <= r2max:
            counts[d2] += 1
    return dict(counts)


def subgroup_closure(points: set[Point], m: int) -> set[Point]:
    """Independent oracle: BFS closure of a generating set under addition mod m."""
    gens = list(points)
    closure = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                s = tuple((x + y) % m for x, y in zip(a, g))
                if s not in closure:
                    new.add(s)
        closure |= new
        frontier = new
    return closure


def all_subspaces(n: int) -> list[BinaryCode]:
    """Every F2-subspace of F2^n, by deduplicating spans of vector subsets."""
    vectors = [unpack(v, n) for v in range(1, 1 << n)]
    seen: dict[frozenset[Word], BinaryCode] = {}
    for r in range(n + 1):
        for combo in combinations(vectors, r):
            code = span(combo, n=n)
            seen.setdefault(code.words, code)
    return list(seen.values())
