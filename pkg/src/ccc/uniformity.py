"""Geometric uniformity machinery for two-level and general constellations.

Two-level constellations built from linear codes are geometrically uniform:
for each member x, reflecting the coordinates where x's level-1 digit is 1
maps the translated constellation onto itself.  Because sign flips preserve
the period sublattice 2^L * Z^n, that infinite-set equality reduces to an
exact residue-set equality.  For three or more levels the property can fail;
this module provides the constructive two-level partner, brute-force partner
oracles that expose the failures, and a restricted isometry search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import isqrt
from typing import Iterable, Sequence

from .constellation import CodeChain, Point, contains, decompose, residues
from .spectrum import EdsWitness, cw_equidistant, eds_check

MAX_SEARCH_DIMENSION = 6  # the signed-permutation search scans 2^n * n! candidates


@dataclass(frozen=True)
class ReflectionMap:
    """Coordinate sign-flip map; an involution preserving squared norms."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("reflection signs must be +1 or -1")

    def apply(self, p: Sequence[int]) -> Point:
        if len(p) != len(self.signs):
            raise ValueError(f"point has length {len(p)}, expected {len(self.signs)}")
        return tuple(s * v for s, v in zip(self.signs, p))


def reflection_for(chain: CodeChain, x: Sequence[int]) -> ReflectionMap:
    """The member's own symmetry: flip exactly the coordinates where its
    level-1 digit is 1."""
    if chain.L != 2:
        raise ValueError("reflection certificates are defined for two-level chains")
    digits, _ = decompose(chain, x)
    return ReflectionMap(signs=tuple(-1 if b else 1 for b in digits[0]))


@dataclass(frozen=True)
class GuCertificate:
    """One verified member symmetry: the reflection carrying the constellation
    minus x back onto itself."""

    x: Point
    signs: tuple[int, ...]


@dataclass(frozen=True)
class GuTwoLevelResult:
    uniform: bool
    certificates: tuple[GuCertificate, ...]
    failing: Point | None


def gu_check_two_level(chain: CodeChain) -> GuTwoLevelResult:
    """Verify the reflection symmetry at every residue of a two-level linear chain.

    For each residue x the check is the exact set equality
    {T_x(s - x) mod 4 : s residue} == residues, which is sound because T_x
    maps 4*Z^n to itself.
    """
    if chain.L != 2:
        raise ValueError("the reflection certificate requires exactly two levels")
    if not chain.all_linear():
        raise ValueError("the reflection certificate requires linear codes")
    rs = residues(chain)
    m = chain.modulus
    members = rs.residues
    certs: list[GuCertificate] = []
    for x in rs.sorted:
        t = reflection_for(chain, x)
        image = {
            tuple(v % m for v in t.apply(tuple(a - b for a, b in zip(s, x))))
            for s in members
        }
        if image != members:
            return GuTwoLevelResult(uniform=False, certificates=tuple(certs), failing=x)
        certs.append(GuCertificate(x=x, signs=t.signs))
    return GuTwoLevelResult(uniform=True, certificates=tuple(certs), failing=None)


def reflect_difference_digits(
    chain: CodeChain, x: Sequence[int], y: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...], Point]:
    """Digit decomposition of T_x(y - x) by direct carry analysis.

    Returns (d1, d2, z) with T_x(y - x) == d1 + 2*d2 + 4*z, where d1 and d2
    are the mod-2 digit differences.  The integer part follows four boundary
    cases split on the reflected coordinate and the sign of the level-2 digit
    difference; the choice of weak versus strict inequality at zero matters
    and is pinned by the tests against the direct decomposition.
    """
    if chain.L != 2:
        raise ValueError("carry analysis is defined for two-level chains")
    (c1, c2), z = decompose(chain, x)
    (c1t, c2t), zt = decompose(chain, y)
    d1: list[int] = []
    d2: list[int] = []
    zp: list[int] = []
    for i in range(chain.n):
        d1.append((c1t[i] - c1[i]) % 2)
        d2.append((c2t[i] - c2[i]) % 2)
        e2 = c2t[i] - c2[i]
        if c1[i] == 0:
            zp.append(zt[i] - z[i] if e2 >= 0 else zt[i] - z[i] - 1)
        else:
            zp.append(z[i] - zt[i] if e2 <= 0 else z[i] - zt[i] - 1)
    return tuple(d1), tuple(d2), tuple(zp)


@dataclass(frozen=True)
class IsometryCandidate:
    """A signed permutation plus translation: T(p)_j = signs[j] * p[perm[j]] + translation[j]."""

    permutation: tuple[int, ...]
    signs: tuple[int, ...]
    translation: Point

    def apply(self, p: Sequence[int]) -> Point:
        return tuple(
            s * p[k] + t for s, k, t in zip(self.signs, self.permutation, self.translation)
        )


@dataclass(frozen=True)
class GuSearchResult:
    verdict: str  # "certified" | "refuted_by_eds" | "inconclusive"
    eds_witness: EdsWitness | None
    isometries: tuple[IsometryCandidate, ...]
    unresolved: Point | None


def gu_subgroup_search(
    chain: CodeChain, r2max: int | None = None, threads: int = 1
) -> GuSearchResult:
    """Decide uniformity as far as signed permutations allow.

    Unequal spectra refute uniformity outright, whatever the isometry group.
    Otherwise every residue is searched for a signed permutation (composed
    with the translation sending it to the origin) that maps the residue set
    onto itself; success for all residues certifies uniformity.  A failed
    search is reported as inconclusive because isometries outside this
    subgroup remain possible.
    """
    if r2max is None:
        r2max = default_eds_radius(chain)
    equal, witness = eds_check(chain, r2max, threads=threads)
    if not equal:
        return GuSearchResult(
            verdict="refuted_by_eds", eds_witness=witness, isometries=(), unresolved=None
        )
    if chain.n > MAX_SEARCH_DIMENSION:
        raise ValueError(
            f"isometry search is guarded to n <= {MAX_SEARCH_DIMENSION}, got {chain.n}"
        )
    rs = residues(chain)
    m = chain.modulus
    members = rs.residues
    found: list[IsometryCandidate] = []
    for x in rs.sorted:
        diffs = [tuple(a - b for a, b in zip(s, x)) for s in rs.sorted]
        hit: IsometryCandidate | None = None
        for perm in permutations(range(chain.n)):
            for signs in product((1, -1), repeat=chain.n):
                image = {
                    tuple((s * d[k]) % m for s, k in zip(signs, perm)) for d in diffs
                }
                if image == members:
                    translation = tuple(-s * x[k] for s, k in zip(signs, perm))
                    hit = IsometryCandidate(permutation=perm, signs=signs, translation=translation)
                    break
            if hit is not None:
                break
        if hit is None:
            return GuSearchResult(
                verdict="inconclusive", eds_witness=None, isometries=tuple(found), unresolved=x
            )
        found.append(hit)
    return GuSearchResult(
        verdict="certified", eds_witness=None, isometries=tuple(found), unresolved=None
    )


def default_eds_radius(chain: CodeChain) -> int:
    """Four squared periods: several shells beyond the minimum distance at desk scale."""
    return 4 * chain.modulus ** 2


@dataclass(frozen=True)
class PartnerTrace:
    """Intermediate quantities of the constructive partner derivation."""

    e1: tuple[int, ...]
    e2: tuple[int, ...]
    e1p: tuple[int, ...]
    e2p: tuple[int, ...]
    delta: tuple[int, ...]
    zbar: Point
    yprime: Point


def partner_construct(
    chain: CodeChain, x: Sequence[int], y: Sequence[int], xp: Sequence[int]
) -> tuple[Point, PartnerTrace]:
    """Build y' with |y'_i - xp_i| == |y_i - x_i| for all i, constructively.

    Works for any two-level linear chain.  The digit words of y' are the
    mod-2 digit differences of (y - x) shifted to xp; the integer part gets a
    per-coordinate correction delta in {-1, 0, 1} chosen by four cases:

      1. either digit difference is 0            -> delta = 0
      2. sign products agree on both sides       -> delta = 0
      3. products differ, shifted digits equal   -> delta = -e1p
      4. products differ, shifted digits unequal -> delta = +e1p

    The integer difference (zt - z) enters with its sign flipped exactly when
    the shifted digit difference reverses orientation (e1p == -e1, or, with a
    zero level-1 difference, e2p == -e2): in that branch y' - xp mirrors
    y - x, otherwise it replicates it.  The result is asserted against its
    defining property; an assertion failure would mean the case analysis is
    wrong, not that no partner exists.
    """
    if chain.L != 2:
        raise ValueError("the constructive partner requires exactly two levels")
    if not chain.all_linear():
        raise ValueError("the constructive partner requires linear codes")
    (c1, c2), z = decompose(chain, x)
    (c1t, c2t), zt = decompose(chain, y)
    (c1p, c2p), zp = decompose(chain, xp)
    n = chain.n
    c1pp = tuple((c1t[i] - c1[i] + c1p[i]) % 2 for i in range(n))
    c2pp = tuple((c2t[i] - c2[i] + c2p[i]) % 2 for i in range(n))
    e1 = tuple(c1t[i] - c1[i] for i in range(n))
    e2 = tuple(c2t[i] - c2[i] for i in range(n))
    e1p = tuple(c1pp[i] - c1p[i] for i in range(n))
    e2p = tuple(c2pp[i] - c2p[i] for i in range(n))
    delta: list[int] = []
    zbar_list: list[int] = []
    for i in range(n):
        if e1[i] == 0 or e2[i] == 0:
            d = 0
        elif e1[i] * e2[i] == e1p[i] * e2p[i]:
            d = 0
        elif e1p[i] == e2p[i]:
            d = -e1p[i]
        else:
            d = e1p[i]
        delta.append(d)
        if e1[i] != 0:
            mirrored = e1p[i] != e1[i]
        else:
            mirrored = e2[i] != 0 and e2p[i] != e2[i]
        if mirrored:
            zbar_list.append(zp[i] - zt[i] + z[i] + d)
        else:
            zbar_list.append(zp[i] + zt[i] - z[i] + d)
    zbar = tuple(zbar_list)
    yprime = tuple(c1pp[i] + 2 * c2pp[i] + 4 * zbar[i] for i in range(n))
    if not contains(chain, yprime):
        raise RuntimeError(f"constructed partner {yprime} is not a member")
    if not cw_equidistant(
        tuple(a - b for a, b in zip(yprime, xp)), tuple(a - b for a, b in zip(y, x))
    ):
        raise RuntimeError(f"constructed partner {yprime} breaks the distance property")
    trace = PartnerTrace(
        e1=e1, e2=e2, e1p=e1p, e2p=e2p, delta=tuple(delta), zbar=zbar, yprime=yprime
    )
    return yprime, trace


def partner_bruteforce(
    chain: CodeChain, x: Sequence[int], y: Sequence[int], xp: Sequence[int]
) -> Point | None:
    """Exhaust the sign patterns y' = xp +/- |y - x| and return the first member.

    None means no coordinate-wise equidistant partner exists at xp.
    """
    _require_members(chain, x, y, xp)
    candidates: list[tuple[int, ...]] = [()]
    for xi, yi, pi in zip(x, y, xp):
        d = abs(yi - xi)
        values = (pi,) if d == 0 else (pi - d, pi + d)
        candidates = [c + (v,) for c in candidates for v in values]
    hits = sorted(y2 for y2 in candidates if contains(chain, y2))
    return hits[0] if hits else None


def euclidean_partner_all(
    chain: CodeChain, x: Sequence[int], y: Sequence[int], xp: Sequence[int]
) -> list[Point]:
    """All members on the sphere around xp of squared radius ||y - x||^2, sorted."""
    _require_members(chain, x, y, xp)
    d2 = sum((a - b) ** 2 for a, b in zip(y, x))
    out = [
        y2
        for v in _shell_vectors(chain.n, d2)
        if contains(chain, y2 := tuple(a + b for a, b in zip(xp, v)))
    ]
    out.sort()
    return out


def euclidean_partner_bruteforce(
    chain: CodeChain, x: Sequence[int], y: Sequence[int], xp: Sequence[int]
) -> Point | None:
    """First member at the exact Euclidean distance ||y - x|| from xp, if any."""
    hits = euclidean_partner_all(chain, x, y, xp)
    return hits[0] if hits else None


def _shell_vectors(n: int, d2: int) -> Iterable[tuple[int, ...]]:
    """Integer vectors with squared norm exactly d2, in lexicographic order."""

    def rec(prefix: tuple[int, ...], remaining: int, dims: int):
        if dims == 0:
            if remaining == 0:
                yield prefix
            return
        r = isqrt(remaining)
        for v in range(-r, r + 1):
            yield from rec(prefix + (v,), remaining - v * v, dims - 1)

    yield from rec((), d2, n)


def _require_members(chain: CodeChain, *points: Sequence[int]) -> None:
    for p in points:
        if not contains(chain, p):
            raise ValueError(f"point {tuple(p)} is not in the constellation")
