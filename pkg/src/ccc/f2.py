"""Binary words and binary codes: spans, linearity, nesting, Schur products."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple[int, ...]

MAX_WORD_LEN = 24          # words live in F2^n with n <= 24 (enumeration guard)
MAX_CODE_SIZE = 1 << 20    # at most 2^20 words per code
MAX_SPAN_GENERATORS = 20   # spans are enumerated as 2^k combinations


def word(bits: Iterable[int]) -> Word:
    """Coerce a 0/1 sequence into a validated word tuple."""
    w = tuple(int(b) for b in bits)
    _check_word(w)
    return w


def zero_word(n: int) -> Word:
    return (0,) * n


def xor_add(a: Word, b: Word) -> Word:
    """Component-wise sum mod 2."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(x ^ y for x, y in zip(a, b))


def schur(a: Word, b: Word) -> Word:
    """Component-wise product."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(x & y for x, y in zip(a, b))


def pack(w: Sequence[int]) -> int:
    """Pack a word into an int, first coordinate at the most significant bit.

    Integer order of packed values equals lexicographic order of the tuples.
    """
    v = 0
    for b in w:
        v = (v << 1) | b
    return v


def unpack(v: int, n: int) -> Word:
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


class SpanTracker:
    """Incremental row echelon over F2 for rank and span-membership tests."""

    def __init__(self, n: int):
        self.n = n
        self._rows: dict[int, int] = {}  # leading bit position -> echelon row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: int) -> int:
        while v:
            row = self._rows.get(v.bit_length() - 1)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, w: Word) -> bool:
        """Insert a word; True iff it enlarged the span."""
        v = self._reduce(pack(w))
        if v == 0:
            return False
        self._rows[v.bit_length() - 1] = v
        return True

    def contains(self, w: Word) -> bool:
        return self._reduce(pack(w)) == 0


def rank_of(words: Iterable[Word]) -> int:
    """F2 rank of a collection of equal-length words."""
    tracker: SpanTracker | None = None
    for w in words:
        if tracker is None:
            tracker = SpanTracker(len(w))
        tracker.add(w)
    return tracker.rank if tracker is not None else 0


@dataclass(frozen=True)
class BinaryCode:
    """A nonempty set of equal-length binary words, optionally with a spanning set.

    ``generators`` is kept for provenance only and is excluded from equality,
    so a code is the same object whether it was given as a word list or as a
    spanning set.
    """

    n: int
    words: frozenset[Word]
    generators: tuple[Word, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.words, frozenset):
            object.__setattr__(self, "words", frozenset(self.words))
        if self.n < 1 or self.n > MAX_WORD_LEN:
            raise ValueError(f"code length must be in 1..{MAX_WORD_LEN}, got {self.n}")
        if not self.words:
            raise ValueError("a code must contain at least one word")
        if len(self.words) > MAX_CODE_SIZE:
            raise ValueError(f"code size {len(self.words)} exceeds the guard of {MAX_CODE_SIZE}")
        for w in self.words:
            if len(w) != self.n:
                raise ValueError(f"word {w} does not have length {self.n}")
            _check_word(w)
        if self.generators is not None:
            for g in self.generators:
                if len(g) != self.n:
                    raise ValueError(f"generator {g} does not have length {self.n}")
            if _span_set(self.generators, self.n) != self.words:
                raise ValueError("generators do not span the stated word set")

    @property
    def size(self) -> int:
        return len(self.words)

    def sorted_words(self) -> list[Word]:
        return sorted(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in self.words


def code_from_words(rows: Iterable[Iterable[int]]) -> BinaryCode:
    """Build a code from explicit word rows (deduplicated)."""
    ws = [word(r) for r in rows]
    if not ws:
        raise ValueError("a code must contain at least one word")
    return BinaryCode(n=len(ws[0]), words=frozenset(ws))


def span(generators: Iterable[Iterable[int]], n: int | None = None) -> BinaryCode:
    """The F2-linear span of the given generator rows.

    ``n`` is only required when the generator list is empty (the zero code).
    """
    gens = tuple(word(g) for g in generators)
    if not gens:
        if n is None:
            raise ValueError("an empty generator list needs an explicit length")
        return BinaryCode(n=n, words=frozenset({zero_word(n)}), generators=())
    if len(gens) > MAX_SPAN_GENERATORS:
        raise ValueError(f"{len(gens)} generators exceed the guard of {MAX_SPAN_GENERATORS}")
    if n is not None and len(gens[0]) != n:
        raise ValueError(f"generators have length {len(gens[0])}, expected {n}")
    m = len(gens[0])
    return BinaryCode(n=m, words=frozenset(_span_set(gens, m)), generators=gens)


def is_linear(code: BinaryCode) -> bool:
    """True iff the word set is an F2-subspace.

    A finite word set equals its own span exactly when its size is 2^rank.
    """
    size = code.size
    if size & (size - 1):
        return False
    return size == 1 << rank_of(code.words)


def is_nested(inner: BinaryCode, outer: BinaryCode) -> bool:
    """True iff every word of ``inner`` belongs to ``outer``."""
    if inner.n != outer.n:
        raise ValueError(f"length mismatch: {inner.n} vs {outer.n}")
    return inner.words <= outer.words


def schur_closed_chain(chain) -> tuple[bool, tuple[int, Word, Word] | None]:
    """Check C_i * C_i subset-of C_{i+1} for every adjacent level pair.

    Products at the top level are absorbed by the integer translates of the
    constellation, so only levels 1..L-1 are constrained.  Accepts a CodeChain
    or a plain sequence of codes; every code must be linear.  Closure implies
    nesting (w * w == w), so a chain that is not nested fails here with a
    witness of the form (level, w, w).  On failure the witness is the first
    violating (level, x, y), ordered by level, then x, then y
    lexicographically.
    """
    codes = tuple(getattr(chain, "codes", chain))
    for code in codes:
        if not is_linear(code):
            raise ValueError("Schur closure is only defined for linear chains")
    for level in range(len(codes) - 1):
        lower, upper = codes[level], codes[level + 1]
        basis = echelon_basis(lower)
        # The product is bilinear over F2, so basis pairs decide closure.
        if all(schur(x, y) in upper.words for x in basis for y in basis):
            continue
        for x in lower.sorted_words():
            for y in lower.sorted_words():
                if schur(x, y) not in upper.words:
                    return False, (level + 1, x, y)
    return True, None


def echelon_basis(code: BinaryCode) -> list[Word]:
    """A spanning subset of the code's words, chosen in lexicographic order."""
    tracker = SpanTracker(code.n)
    basis: list[Word] = []
    for w in code.sorted_words():
        if tracker.add(w):
            basis.append(w)
    return basis


def _span_set(gens: Sequence[Word], n: int) -> frozenset[Word]:
    vals = {0}
    for g in gens:
        gv = pack(g)
        vals |= {v ^ gv for v in vals}
    return frozenset(unpack(v, n) for v in vals)


def _check_word(w: Sequence[int]) -> None:
    if len(w) == 0:
        raise ValueError("words must have positive length")
    if len(w) > MAX_WORD_LEN:
        raise ValueError(f"word length {len(w)} exceeds the guard of {MAX_WORD_LEN}")
    for b in w:
        if b != 0 and b != 1:
            raise ValueError(f"word entries must be 0 or 1, got {b!r}")
