"""Exact integer-lattice algebra for periodic constellations.

Everything runs on arbitrary-precision integers: Hermite Normal Form gives a
canonical basis, so lattice equality and membership are exact set questions.
All lattices here contain 2^L * Z^n, which keeps every computation finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .constellation import CodeChain, Point, residues
from .f2 import SpanTracker, Word, schur_closed_chain, unpack


@dataclass(frozen=True)
class IntegerLattice:
    """Full-rank sublattice of Z^n with a row-style Hermite Normal Form basis.

    The basis is upper triangular with positive diagonal; entries above each
    pivot are reduced into [0, pivot).  This form is unique per lattice, so
    dataclass equality is lattice equality.
    """

    n: int
    basis: tuple[tuple[int, ...], ...]
    determinant: int

    def __post_init__(self):
        for i, row in enumerate(self.basis):
            if len(row) != self.n:
                raise ValueError("basis rows must have length n")
            if row[i] <= 0 or any(row[j] != 0 for j in range(i)):
                raise ValueError("basis is not in row Hermite Normal Form")
        if self.determinant != prod(row[i] for i, row in enumerate(self.basis)):
            raise ValueError("determinant does not match the basis diagonal")

    def contains(self, p: Sequence[int]) -> bool:
        """Exact membership by forward substitution along the pivots."""
        if len(p) != self.n:
            raise ValueError(f"point has length {len(p)}, expected {self.n}")
        v = list(p)
        for i in range(self.n):
            pivot = self.basis[i][i]
            q, r = divmod(v[i], pivot)
            if r:
                return False
            if q:
                for j in range(i, self.n):
                    v[j] -= q * self.basis[i][j]
        return True

    def points_per_period(self, modulus: int) -> int:
        """Number of lattice points in one period cube of the given modulus."""
        vol = modulus ** self.n
        if vol % self.determinant:
            raise ValueError(f"lattice does not tile a period of modulus {modulus}")
        return vol // self.determinant


def hnf(generators: Iterable[Sequence[int]]) -> IntegerLattice:
    """Canonical HNF basis of the integer span of the generators.

    Column-by-column Euclidean elimination: within the active column the row
    of least nonzero magnitude reduces the others until one survivor remains,
    which becomes the pivot row.  The generators must span a full-rank
    sublattice of Z^n.
    """
    rows = [list(map(int, g)) for g in generators]
    if not rows:
        raise ValueError("at least one generator is required")
    n = len(rows[0])
    for r in rows:
        if len(r) != n:
            raise ValueError("generators must share one length")
    work = [r for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(n):
        while True:
            nz = [r for r in work if r[col] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: abs(r[col]))
            for r in nz:
                if r is p:
                    continue
                q = r[col] // p[col]
                if q:
                    for j in range(n):
                        r[j] -= q * p[j]
        pivot_idx = next((i for i, r in enumerate(work) if r[col] != 0), None)
        if pivot_idx is None:
            raise ValueError(f"generators are rank deficient (no pivot in column {col})")
        pivot = work.pop(pivot_idx)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        work = [r for r in work if any(r)]
    # Reduce entries above each pivot into [0, pivot), sweeping pivots left to
    # right so a reduction never disturbs an already-normalized column.
    for i in range(n):
        p = basis[i][i]
        for j in range(i):
            q = basis[j][i] // p
            if q:
                for t in range(i, n):
                    basis[j][t] -= q * basis[i][t]
    det = prod(basis[i][i] for i in range(n))
    return IntegerLattice(n=n, basis=tuple(tuple(r) for r in basis), determinant=det)


def smallest_lattice(chain: CodeChain) -> IntegerLattice:
    """The smallest lattice containing the constellation.

    Generated by the residues together with the period translates 2^L * e_j,
    so it always contains every constellation point.
    """
    rs = residues(chain)
    m = chain.modulus
    gens: list[Sequence[int]] = list(rs.sorted)
    gens.extend(_unit_scaled(chain.n, m))
    return hnf(gens)


@dataclass(frozen=True)
class NestedBasis:
    """An F2^n basis whose prefixes span the chain's codes level by level."""

    rows: tuple[Word, ...]
    dims: tuple[int, ...]


def select_nested_basis(chain: CodeChain) -> NestedBasis:
    """Greedy nested basis: extend through each level, then complete to F2^n.

    Candidate rows are scanned in lexicographic word order at every stage, so
    the result is canonical for a given chain.
    """
    _require_nested_linear(chain)
    n = chain.n
    tracker = SpanTracker(n)
    rows: list[Word] = []
    dims: list[int] = []
    for code in chain.codes:
        k = code.size.bit_length() - 1
        for w in code.sorted_words():
            if tracker.rank == k:
                break
            if tracker.add(w):
                rows.append(w)
        if tracker.rank != k:
            raise RuntimeError("nested basis extension failed")  # impossible for nested linear chains
        dims.append(k)
    for v in range(1 << n):
        if tracker.rank == n:
            break
        w = unpack(v, n)
        if tracker.add(w):
            rows.append(w)
    return NestedBasis(rows=tuple(rows), dims=tuple(dims))


MAX_COMBINATIONS = 1 << 22


def combination_points(chain: CodeChain) -> list[Point]:
    """All 0/1 combinations of the nested basis rows, scaled level by level.

    These are the representatives (before adding period translates) of the
    lattice the nested basis generates; there are 2^(k_1+...+k_L) of them.
    """
    nb = select_nested_basis(chain)
    n = chain.n
    total = 1 << sum(nb.dims)
    if total > MAX_COMBINATIONS:
        raise ValueError(f"{total} basis combinations exceed the guard of {MAX_COMBINATIONS}")
    acc: list[Point] = [(0,) * n]
    for level, k in enumerate(nb.dims):
        scale = 1 << level
        sums: list[Point] = [(0,) * n]
        for row in nb.rows[:k]:
            scaled = tuple(b * scale for b in row)
            sums += [tuple(a + b for a, b in zip(s, scaled)) for s in sums]
        acc = [tuple(a + b for a, b in zip(p, s)) for p in acc for s in sums]
    return acc


def combination_residues(chain: CodeChain) -> frozenset[Point]:
    """The basis-combination points reduced modulo the period."""
    m = chain.modulus
    out = frozenset(tuple(x % m for x in p) for p in combination_points(chain))
    if len(out) != 1 << sum(select_nested_basis(chain).dims):
        raise RuntimeError("basis combinations collided modulo the period")
    return out


def construction_d(chain: CodeChain) -> IntegerLattice:
    """The lattice generated by the scaled nested-basis combinations.

    The point count per period must come out as 2^(k_1+...+k_L); anything
    else would mean the combination set is not itself a lattice, which the
    nested linear hypothesis rules out.
    """
    pts = combination_points(chain)
    m = chain.modulus
    gens: list[Sequence[int]] = sorted(set(pts))
    gens.extend(_unit_scaled(chain.n, m))
    lat = hnf(gens)
    expected = 1 << sum(select_nested_basis(chain).dims)
    if lat.points_per_period(m) != expected:
        raise RuntimeError("combination lattice has the wrong point count per period")
    return lat


def is_lattice_direct(chain: CodeChain, find_witness: bool = True) -> tuple[bool, tuple[Point, Point] | None]:
    """Decide whether the constellation is closed under addition.

    The residue set is closed under coordinate-wise addition mod 2^L exactly
    when the infinite point set is a lattice (a finite set closed under
    addition in a finite group is a subgroup).  When all codes are linear it
    suffices to translate by each scaled codeword; otherwise every residue
    pair is checked.  The witness, when requested, is the lexicographically
    first failing pair.
    """
    rs = residues(chain)
    m = chain.modulus
    members = rs.residues
    if chain.all_linear():
        closed = True
        for level, code in enumerate(chain.codes):
            for w in code.sorted_words():
                g = tuple(b << level for b in w)
                if any(_add_mod(s, g, m) not in members for s in members):
                    closed = False
                    break
            if not closed:
                break
    else:
        closed = all(
            _add_mod(s, t, m) in members for s in members for t in members
        )
    if closed:
        return True, None
    if not find_witness:
        return False, None
    order = rs.sorted
    for s in order:
        for t in order:
            if _add_mod(s, t, m) not in members:
                return False, (s, t)
    raise RuntimeError("closure failed but no witness pair exists")


@dataclass(frozen=True)
class EquivalenceReport:
    """Independent verdicts of the four mutually equivalent lattice criteria.

    For a nested linear chain the four booleans must agree; a disagreement is
    an internal consistency failure and is surfaced, never reconciled.
    """

    is_lattice: bool
    equals_smallest_lattice: bool
    schur_closed: bool
    equals_construction_d: bool

    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.is_lattice,
            self.equals_smallest_lattice,
            self.schur_closed,
            self.equals_construction_d,
        )

    @property
    def consistent(self) -> bool:
        return len(set(self.flags())) == 1

    @property
    def verdict(self) -> bool:
        if not self.consistent:
            raise RuntimeError(f"equivalence criteria disagree: {self.flags()}")
        return self.is_lattice


def equivalence_report(chain: CodeChain) -> EquivalenceReport:
    """Evaluate all four lattice criteria independently for a linear chain.

    Nesting is not required up front: a non-nested chain fails the Schur
    criterion on a diagonal pair (w * w == w), has no nested basis, and is
    never a lattice, so the four verdicts still agree.
    """
    if not chain.all_linear():
        raise ValueError("the equivalence report requires every code to be linear")
    rs = residues(chain)
    m = chain.modulus
    direct, _ = is_lattice_direct(chain, find_witness=False)
    lam = smallest_lattice(chain)
    equals_smallest = lam.points_per_period(m) == len(rs)
    closed, _ = schur_closed_chain(chain)
    equals_d = chain.all_nested() and combination_residues(chain) == rs.residues
    return EquivalenceReport(
        is_lattice=direct,
        equals_smallest_lattice=equals_smallest,
        schur_closed=closed,
        equals_construction_d=equals_d,
    )


def _require_nested_linear(chain: CodeChain) -> None:
    if not chain.all_linear():
        raise ValueError("this operation requires every code in the chain to be linear")
    if not chain.all_nested():
        raise ValueError("this operation requires the chain to be nested")


def _unit_scaled(n: int, m: int) -> list[Point]:
    return [tuple(m if j == i else 0 for j in range(n)) for i in range(n)]


def _add_mod(a: Point, b: Point, m: int) -> Point:
    return tuple((x + y) % m for x, y in zip(a, b))
