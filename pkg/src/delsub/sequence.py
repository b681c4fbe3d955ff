"""q-ary sequence primitives: words over {0,...,q-1}, distances, runs,
deletion, and the combined delete-and-substitute operator.

Positions handed to the operations in this module are 1-based, matching
the interval conventions used throughout the package ([l, r] closed
intervals, first symbol at position 1).  Python-level indexing on a
:class:`Sequence` (``x[i]``, slicing, iteration) stays 0-based as usual.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence as PySequence, Tuple


@dataclass(frozen=True)
class Alphabet:
    """The symbol set {0, 1, ..., q-1}."""

    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"alphabet size must be at least 2, got {self.q}")

    def __contains__(self, symbol: int) -> bool:
        return 0 <= symbol < self.q


class Sequence:
    """An immutable q-ary word.

    Symbols are small non-negative integers below ``q``.  Text form uses
    one digit per symbol for q <= 10 and comma-separated decimals
    otherwise.  The empty word is allowed; individual operations state
    their own minimum-length requirements.
    """

    __slots__ = ("symbols", "q")

    def __init__(self, symbols: Iterable[int], q: int):
        symbols = tuple(symbols)
        if q < 2:
            raise ValueError(f"alphabet size must be at least 2, got {q}")
        for s in symbols:
            if not 0 <= s < q:
                raise ValueError(f"symbol {s} outside alphabet of size {q}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "q", q)

    @classmethod
    def _wrap(cls, symbols: Tuple[int, ...], q: int) -> "Sequence":
        """Wrap an already-validated symbol tuple without re-checking."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "symbols", symbols)
        object.__setattr__(obj, "q", q)
        return obj

    @classmethod
    def parse(cls, text: str, q: int) -> "Sequence":
        """Parse the textual form: digits for q <= 10, comma-separated
        decimals for larger alphabets.  An empty string is the empty word.
        """
        text = text.strip()
        if not text:
            return cls((), q)
        if q <= 10:
            return cls((int(c) for c in text), q)
        return cls((int(part) for part in text.split(",")), q)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Sequence is immutable")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.q)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, index):
        return self.symbols[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Sequence)
            and self.q == other.q
            and self.symbols == other.symbols
        )

    def __lt__(self, other: "Sequence") -> bool:
        return self.symbols < other.symbols

    def __hash__(self) -> int:
        return hash((self.q, self.symbols))

    def __add__(self, other: "Sequence") -> "Sequence":
        if not isinstance(other, Sequence):
            return NotImplemented
        if self.q != other.q:
            raise ValueError("cannot concatenate words over different alphabets")
        return Sequence._wrap(self.symbols + other.symbols, self.q)

    def __str__(self) -> str:
        if self.q <= 10:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    def __repr__(self) -> str:
        return f"Sequence({str(self)!r}, q={self.q})"

    def symbol_at(self, position: int) -> int:
        """Symbol at a 1-based position."""
        if not 1 <= position <= len(self.symbols):
            raise IndexError(f"position {position} outside [1, {len(self.symbols)}]")
        return self.symbols[position - 1]

    def substring(self, lo: int, hi: int) -> "Sequence":
        """The substring on the closed 1-based interval [lo, hi].

        ``hi == lo - 1`` denotes the empty interval and yields the empty
        word.
        """
        _check_interval(lo, hi, len(self.symbols))
        return Sequence._wrap(self.symbols[lo - 1 : hi], self.q)


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal constant substrings of a word (or of one of its intervals).

    ``boundaries`` holds the 1-based start position of every run, in
    increasing order; ``count`` is the number of runs.
    """

    boundaries: Tuple[int, ...]
    count: int


def _require_same_shape(x: Sequence, y: Sequence) -> None:
    if x.q != y.q:
        raise ValueError(f"alphabet mismatch: q={x.q} vs q={y.q}")
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")


def _check_interval(lo: int, hi: int, n: int) -> None:
    if lo < 1 or hi > n or hi < lo - 1:
        raise ValueError(f"malformed interval [{lo}, {hi}] for length {n}")


def hamming(x: Sequence, y: Sequence) -> int:
    """Number of positions where two equal-length words differ."""
    _require_same_shape(x, y)
    xs, ys = x.symbols, y.symbols
    return sum(1 for a, b in zip(xs, ys) if a != b)


def levenshtein(x: Sequence, y: Sequence) -> int:
    """Smallest number of symbols that must be dropped from each of two
    equal-length words so that they share a common subsequence.

    Equals n minus the length of a longest common subsequence.
    """
    _require_same_shape(x, y)
    return len(x) - lcs_length(x.symbols, y.symbols)


def lcs_length(xs: PySequence[int], ys: PySequence[int]) -> int:
    """Longest-common-subsequence length by the standard two-row dynamic
    program."""
    if not xs or not ys:
        return 0
    prev = [0] * (len(ys) + 1)
    for a in xs:
        cur = [0]
        best = 0
        for j, b in enumerate(ys, start=1):
            if a == b:
                best = prev[j - 1] + 1
            elif prev[j] > cur[j - 1]:
                best = prev[j]
            else:
                best = cur[j - 1]
            cur.append(best)
        prev = cur
    return prev[-1]


def delete(x: Sequence, position: int) -> Sequence:
    """The word with the symbol at the given 1-based position removed."""
    n = len(x)
    if not 1 <= position <= n:
        raise IndexError(f"deletion position {position} outside [1, {n}]")
    return Sequence._wrap(_delete_t(x.symbols, position), x.q)


def phi(x: Sequence, j1: int, j2: int, a: int) -> Sequence:
    """Delete the symbol at position ``j1`` and write symbol ``a`` at the
    position that held ``x[j2]``.

    Both positions refer to the original word; the result has length
    n - 1.  Substituting a symbol with itself is allowed, in which case
    the result is a plain deletion.
    """
    n = len(x)
    if not 1 <= j1 <= n:
        raise IndexError(f"deletion position {j1} outside [1, {n}]")
    if not 1 <= j2 <= n:
        raise IndexError(f"substitution position {j2} outside [1, {n}]")
    if j1 == j2:
        raise ValueError("deletion and substitution positions must differ")
    if not 0 <= a < x.q:
        raise ValueError(f"symbol {a} outside alphabet of size {x.q}")
    return Sequence._wrap(_phi_t(x.symbols, j1, j2, a), x.q)


def alternating(n: int, a: int, b: int, q: Optional[int] = None) -> Sequence:
    """The length-n word abab... starting with ``a``.

    ``n = 0`` yields the empty word, so the degenerate tails used by the
    extremal constructions compose cleanly.
    """
    if a == b:
        raise ValueError("alternating word needs two distinct symbols")
    if n < 0:
        raise ValueError("length must be non-negative")
    if q is None:
        q = max(max(a, b) + 1, 2)
    return Sequence(((a, b)[i % 2] for i in range(n)), q)


def runs(x: Sequence, interval: Optional[Tuple[int, int]] = None) -> RunDecomposition:
    """Decompose a word (or the closed 1-based interval ``[l, r]`` of it)
    into maximal constant substrings.

    An empty interval yields ``count == 0``.
    """
    n = len(x)
    if interval is None:
        lo, hi = 1, n
    else:
        lo, hi = interval
        _check_interval(lo, hi, n)
    if hi < lo:
        return RunDecomposition((), 0)
    xs = x.symbols
    boundaries = [lo]
    for i in range(lo + 1, hi + 1):
        if xs[i - 1] != xs[i - 2]:
            boundaries.append(i)
    return RunDecomposition(tuple(boundaries), len(boundaries))


def run_last_positions(xs: Tuple[int, ...], lo: int, hi: int) -> list:
    """1-based last position of every run of ``xs`` restricted to [lo, hi].

    Internal helper shared with the structural intersection code; an
    empty interval gives an empty list.
    """
    if hi < lo:
        return []
    out = []
    for i in range(lo, hi):
        if xs[i - 1] != xs[i]:
            out.append(i)
    out.append(hi)
    return out


def _delete_t(xs: Tuple[int, ...], position: int) -> Tuple[int, ...]:
    return xs[: position - 1] + xs[position:]


def _phi_t(xs: Tuple[int, ...], j1: int, j2: int, a: int) -> Tuple[int, ...]:
    out = list(xs)
    out[j2 - 1] = a
    del out[j1 - 1]
    return tuple(out)
