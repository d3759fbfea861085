"""Exact squared-distance spectra of periodic constellations.

Counting neighbors of a center c splits over residues: every residue s
contributes the points of the coset (s - c) + 2^L * Z^n, and the squared-norm
profile of such a coset is the n-fold convolution of one-dimensional coset
profiles.  A coordinate u and its negation 2^L - u share a profile, and
profiles are permutation-invariant, so cosets are keyed by the sorted folded
digit vector.  Everything is integer-exact; distances are always squared.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Sequence

from .constellation import CodeChain, Point, contains, residues
from .parallel import ordered_map

MAX_SPECTRUM_WORK = 10**8


@dataclass
class SpectrumTable:
    """Counts of constellation points per squared distance from a center.

    Keys are positive squared distances up to r2max; the center itself is
    excluded.  Zero counts are never stored.
    """

    center: Point
    r2max: int
    counts: dict[int, int]

    def min_distance2(self) -> int | None:
        return min(self.counts) if self.counts else None

    def total(self) -> int:
        return sum(self.counts.values())


def cw_equidistant(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff the vectors agree coordinate-wise up to sign changes."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return all(abs(x) == abs(y) for x, y in zip(a, b))


def spectrum_at(chain: CodeChain, c: Sequence[int], r2max: int) -> SpectrumTable:
    """Exact neighbor counts around a constellation member, out to r2max."""
    if not contains(chain, c):
        raise ValueError(f"center {tuple(c)} is not in the constellation")
    if r2max < 1:
        raise ValueError("r2max must be at least 1")
    rs = residues(chain)
    m = chain.modulus
    if (r2max + 1) * len(rs) > MAX_SPECTRUM_WORK:
        raise ValueError("spectrum enumeration exceeds the work guard")
    c_red = tuple(x % m for x in c)
    keys = Counter(_folded_key(s, c_red, m) for s in rs)
    counts = _table_from_keys(m, keys, r2max)
    return SpectrumTable(center=tuple(c), r2max=r2max, counts=counts)


@dataclass(frozen=True)
class EdsWitness:
    """Two members whose spectra first disagree, with the distance and counts."""

    center_a: Point
    center_b: Point
    d2: int
    count_a: int
    count_b: int


def eds_check(
    chain: CodeChain, r2max: int, threads: int = 1
) -> tuple[bool, EdsWitness | None]:
    """Whether every member sees identical neighbor counts up to r2max.

    Residues suffice as centers because period translates preserve spectra.
    Centers whose folded coset keys agree as multisets have identical spectra
    at every radius; only distinct key multisets need their tables compared.
    The witness is the first residue (in lexicographic order) whose table
    differs from the first residue's, at the smallest disagreeing distance.
    """
    rs = residues(chain)
    m = chain.modulus
    if len(rs) ** 2 > MAX_SPECTRUM_WORK:
        raise ValueError("spectrum comparison exceeds the work guard")
    order = rs.sorted

    def signature(c: Point) -> frozenset[tuple[tuple[int, ...], int]]:
        return frozenset(Counter(_folded_key(s, c, m) for s in order).items())

    sigs = ordered_map(signature, order, threads)
    tables: dict[frozenset, dict[int, int]] = {}

    def table_of(sig) -> dict[int, int]:
        if sig not in tables:
            tables[sig] = _table_from_keys(m, dict(sig), r2max)
        return tables[sig]

    ref = table_of(sigs[0])
    for c, sig in zip(order[1:], sigs[1:]):
        if sig == sigs[0]:
            continue
        t = table_of(sig)
        if t == ref:
            continue
        d2 = min(k for k in set(ref) | set(t) if ref.get(k, 0) != t.get(k, 0))
        return False, EdsWitness(
            center_a=order[0],
            center_b=c,
            d2=d2,
            count_a=ref.get(d2, 0),
            count_b=t.get(d2, 0),
        )
    if not ref and all(not t for t in tables.values()):
        raise ValueError("r2max is below the minimum squared distance")
    return True, None


def kissing_stats(chain: CodeChain) -> tuple[int, set[int]]:
    """Global minimum squared distance and the set of per-member counts there.

    The period translates c +/- 2^L e_j guarantee neighbors at 4^L, so that
    radius always suffices to locate the minimum.
    """
    rs = residues(chain)
    m = chain.modulus
    tables = [spectrum_at(chain, c, m * m) for c in rs.sorted]
    d2min = min(min(t.counts) for t in tables)  # every table holds the 4^L shell
    return d2min, {t.counts.get(d2min, 0) for t in tables}


def cw_count(chain: CodeChain, x: Sequence[int], e: Sequence[int]) -> int:
    """Number of members y with y - x equal to e up to coordinate sign flips.

    At most 2^n sign patterns are possible, each decided by membership, so no
    search radius is involved.
    """
    if not contains(chain, x):
        raise ValueError(f"point {tuple(x)} is not in the constellation")
    if len(e) != chain.n:
        raise ValueError(f"offset has length {len(e)}, expected {chain.n}")
    candidates: list[tuple[int, ...]] = [()]
    for xi, ei in zip(x, e):
        values = (xi,) if ei == 0 else (xi - abs(ei), xi + abs(ei))
        candidates = [c + (v,) for c in candidates for v in values]
    return sum(1 for y in candidates if contains(chain, y))


@lru_cache(maxsize=None)
def _coset_profile(m: int, u: int, r2max: int) -> tuple[tuple[int, int], ...]:
    """Squared-value counts of the arithmetic progression u + m*Z, as (d2, count) pairs."""
    u = min(u % m, (-u) % m)  # negation symmetry: u and m-u have equal profiles
    out: Counter[int] = Counter()
    r = isqrt(r2max)
    v = u - m * ((u + r) // m)
    while v <= r:
        out[v * v] += 1
        v += m
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _key_table(m: int, key: tuple[int, ...], r2max: int) -> tuple[tuple[int, int], ...]:
    """Squared-norm profile of the coset with folded digits ``key``: an n-fold convolution."""
    acc = [0] * (r2max + 1)
    acc[0] = 1
    for u in key:
        nxt = [0] * (r2max + 1)
        support = _coset_profile(m, u, r2max)
        for j, a in enumerate(acc):
            if not a:
                continue
            for d2, cnt in support:
                if j + d2 > r2max:
                    break
                nxt[j + d2] += a * cnt
        acc = nxt
    return tuple((d2, cnt) for d2, cnt in enumerate(acc) if cnt)


def _folded_key(s: Point, c: Point, m: int) -> tuple[int, ...]:
    return tuple(sorted(min((a - b) % m, (b - a) % m) for a, b in zip(s, c)))


def _table_from_keys(m: int, keys: dict[tuple[int, ...], int], r2max: int) -> dict[int, int]:
    totals: Counter[int] = Counter()
    for key, mult in keys.items():
        for d2, cnt in _key_table(m, key, r2max):
            totals[d2] += mult * cnt
    totals.pop(0, None)  # drop the center itself
    return dict(sorted(totals.items()))
