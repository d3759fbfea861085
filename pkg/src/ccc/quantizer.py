"""Nearest-point quantization and Monte Carlo second-moment estimation.

The nearest constellation point to a real vector is found per residue class:
within one class the best period translate factors per coordinate.  The
normalized second moment (NSM) is estimated by quantizing seeded uniform
samples from one period cube; the cell volume is the period volume divided
by the residue count, which is well defined for lattices and non-lattices
alike because the constellation is periodic.  A cubic cell gives 1/12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constellation import CodeChain, Point, residues
from .f2 import span
from .parallel import ordered_map

SAMPLE_BATCH = 8192  # fixed batch size keeps the sample stream independent of threading


@dataclass(frozen=True)
class NsmEstimate:
    """A reproducible NSM estimate with its Monte Carlo standard error."""

    value: float
    stderr: float
    samples: int
    seed: int
    covolume: Fraction

    def __post_init__(self):
        if self.value <= 0 or self.stderr < 0:
            raise ValueError("estimate out of range")


def covolume(chain: CodeChain) -> Fraction:
    """Volume per constellation point: 2^(L*n) over the residue count."""
    return Fraction(chain.modulus ** chain.n, chain.residue_count())


def nearest(chain: CodeChain, w: Sequence[float]) -> Point:
    """The constellation point closest to w; ties go to the lexicographically
    smallest point."""
    if len(w) != chain.n:
        raise ValueError(f"vector has length {len(w)}, expected {chain.n}")
    m = chain.modulus
    best_d2: float | None = None
    best_pt: tuple[int, ...] | None = None
    for s in residues(chain):
        pt: list[int] = []
        d2 = 0.0
        for wj, sj in zip(w, s):
            lo = sj + m * math.floor((wj - sj) / m)
            hi = lo + m
            d_lo = wj - lo
            d_hi = hi - wj
            if d_lo <= d_hi:  # tie prefers the smaller coordinate
                pt.append(lo)
                d2 += d_lo * d_lo
            else:
                pt.append(hi)
                d2 += d_hi * d_hi
        cand = tuple(pt)
        if best_d2 is None or d2 < best_d2 or (d2 == best_d2 and cand < best_pt):
            best_d2, best_pt = d2, cand
    assert best_pt is not None
    return best_pt


def nsm_estimate(
    chain: CodeChain, samples: int, seed: int, threads: int = 1
) -> NsmEstimate:
    """Seeded Monte Carlo NSM: mean of ||w - nearest(w)||^2 / (n * V^(2/n)).

    The sample stream comes from a counter-based generator in a fixed batch
    layout and the batch sums are combined with exact float summation, so the
    estimate is bit-identical for a given (seed, samples) regardless of the
    worker count.
    """
    if samples < 1000:
        raise ValueError(f"at least 1000 samples required, got {samples}")
    n = chain.n
    m = chain.modulus
    vol = covolume(chain)
    norm = n * float(vol) ** (2.0 / n)
    coset = np.array(sorted(residues(chain).residues), dtype=np.float64)
    rng = np.random.Generator(np.random.Philox(key=seed))
    draws = rng.random((samples, n)) * m
    batches = [draws[i : i + SAMPLE_BATCH] for i in range(0, samples, SAMPLE_BATCH)]

    def batch_sums(w: np.ndarray) -> tuple[float, float]:
        # w and the residues live in [0, m), so the distance to the nearest
        # period translate folds per coordinate: min(|d|, m - |d|).
        best: np.ndarray | None = None
        for s in coset:
            diff = np.abs(w - s)
            np.minimum(diff, m - diff, out=diff)
            d2 = np.einsum("bn,bn->b", diff, diff)
            best = d2 if best is None else np.minimum(best, d2, out=best)
        assert best is not None
        g = best / norm
        return float(g.sum()), float((g * g).sum())

    sums = ordered_map(batch_sums, batches, threads)
    total = math.fsum(s for s, _ in sums)
    total_sq = math.fsum(q for _, q in sums)
    value = total / samples
    var = max(total_sq - samples * value * value, 0.0) / (samples - 1)
    stderr = math.sqrt(var / samples)
    return NsmEstimate(
        value=value, stderr=stderr, samples=samples, seed=seed, covolume=vol
    )


def dplus_chain(n: int) -> CodeChain:
    """Two-level chain of the length-n repetition code and even-weight code.

    A lattice exactly when n is even; for odd n it is a non-lattice
    tessellation with better quantization efficiency than the cube in
    moderate dimensions.
    """
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    repetition = span([(1,) * n])
    parity_rows = [
        tuple(1 if j in (i, i + 1) else 0 for j in range(n)) for i in range(n - 1)
    ]
    even_weight = span(parity_rows)
    return CodeChain.of(repetition, even_weight)
