"""Ground-truth error-ball materialization.

Everything here enumerates: a ball is produced by literally applying
every admissible combination of deletions and substitutions and
deduplicating.  The structural fast path in :mod:`delsub.intersect` is
always tested against these sets, so this module must stay independent
of the mismatch machinery in :mod:`delsub.diffs`.

Materialization refuses to run past a configurable element budget; the
enumeration here is meant for desk-scale verification, not production
workloads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import FrozenSet, Iterable, Iterator, List, Set, Tuple

import numpy as np

from .sequence import Sequence, _require_same_shape, hamming

DEFAULT_BUDGET = 10_000_000

Word = Tuple[int, ...]


class BudgetExceededError(RuntimeError):
    """Raised when a requested enumeration would exceed the element budget."""


@dataclass(frozen=True)
class BallSpec:
    """Channel error budget: exactly ``t`` deletions, at most ``s``
    substitutions."""

    t: int
    s: int

    def __post_init__(self) -> None:
        if self.t < 0 or self.s < 0:
            raise ValueError("deletion and substitution counts must be non-negative")


class SequenceSet:
    """A deduplicated set of equal-length words over one alphabet."""

    __slots__ = ("words", "length", "q")

    def __init__(self, words: Iterable[Word], q: int, length: int):
        self.words: FrozenSet[Word] = frozenset(words)
        self.q = q
        self.length = length
        for w in self.words:
            if len(w) != length:
                raise ValueError("all members must share one length")

    @classmethod
    def from_sequences(cls, seqs: Iterable[Sequence], q: int, length: int) -> "SequenceSet":
        return cls((s.symbols for s in seqs), q, length)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Sequence]:
        for w in self.words:
            yield Sequence._wrap(w, self.q)

    def __contains__(self, item) -> bool:
        if isinstance(item, Sequence):
            return item.q == self.q and item.symbols in self.words
        return tuple(item) in self.words

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SequenceSet)
            and self.q == other.q
            and self.words == other.words
        )

    def __hash__(self) -> int:
        return hash((self.q, self.words))

    def __and__(self, other: "SequenceSet") -> "SequenceSet":
        self._check_compatible(other)
        return SequenceSet(self.words & other.words, self.q, self.length)

    def __or__(self, other: "SequenceSet") -> "SequenceSet":
        self._check_compatible(other)
        return SequenceSet(self.words | other.words, self.q, self.length)

    def issubset(self, other: "SequenceSet") -> bool:
        self._check_compatible(other)
        return self.words <= other.words

    def sorted(self) -> List[Sequence]:
        return [Sequence._wrap(w, self.q) for w in sorted(self.words)]

    def _check_compatible(self, other: "SequenceSet") -> None:
        if self.q != other.q or self.length != other.length:
            raise ValueError("sets are over different alphabets or lengths")

    def __repr__(self) -> str:
        return f"SequenceSet(<{len(self.words)} words>, q={self.q}, length={self.length})"


def enumeration_estimate(n: int, q: int, spec: BallSpec) -> int:
    """Upper bound on the number of elements generated when materializing
    a ball: deletion positions with repetition times the substitution-ball
    size of the shortened word."""
    return n**spec.t * (1 + (q - 1) * (n - spec.t)) ** spec.s


def _check_budget(n: int, q: int, spec: BallSpec, budget: int) -> None:
    estimate = enumeration_estimate(n, q, spec)
    if estimate > budget:
        raise BudgetExceededError(
            f"materializing a ({spec.t},{spec.s})-ball at n={n}, q={q} may generate "
            f"{estimate} elements, above the budget of {budget}"
        )


def substitution_ball_size(n: int, q: int, s: int) -> int:
    """Closed-form size of the radius-s substitution ball."""
    return sum(math.comb(n, k) * (q - 1) ** k for k in range(min(s, n) + 1))


def substitution_ball(x: Sequence, s: int, budget: int = DEFAULT_BUDGET) -> SequenceSet:
    """All words within Hamming distance ``s`` of ``x``, including ``x``."""
    if s < 0:
        raise ValueError("substitution budget must be non-negative")
    n = len(x)
    if substitution_ball_size(n, x.q, s) > budget:
        raise BudgetExceededError(
            f"substitution ball at n={n}, q={x.q}, s={s} exceeds budget {budget}"
        )
    return SequenceSet(_sub_ball_t(x.symbols, s, x.q), x.q, n)


def deletion_ball(x: Sequence, t: int, budget: int = DEFAULT_BUDGET) -> SequenceSet:
    """All distinct subsequences of ``x`` of length n - t."""
    n = len(x)
    if not 0 < t < n:
        raise ValueError(f"deletion count must satisfy 0 < t < n, got t={t}, n={n}")
    if math.comb(n, t) > budget:
        raise BudgetExceededError(f"deletion ball at n={n}, t={t} exceeds budget {budget}")
    return SequenceSet(_del_ball_t(x.symbols, t), x.q, n - t)


def ds_ball(x: Sequence, spec: BallSpec, budget: int = DEFAULT_BUDGET) -> SequenceSet:
    """All words reachable from ``x`` by exactly ``spec.t`` deletions
    followed by at most ``spec.s`` substitutions.

    "At most" includes zero, so the pure-deletion results are always
    members.
    """
    n = len(x)
    if spec.t + spec.s >= n:
        raise ValueError(f"need t + s < n, got t={spec.t}, s={spec.s}, n={n}")
    if spec.t == 0:
        return substitution_ball(x, spec.s, budget)
    _check_budget(n, x.q, spec, budget)
    out: Set[Word] = set()
    for deleted in _del_ball_t(x.symbols, spec.t):
        out |= _sub_ball_t(deleted, spec.s, x.q)
    return SequenceSet(out, x.q, n - spec.t)


def ball_intersection(
    x: Sequence, y: Sequence, spec: BallSpec, budget: int = DEFAULT_BUDGET
) -> SequenceSet:
    """Members common to the two materialized balls.

    This is the oracle every structural computation is checked against;
    it never takes shortcuts.
    """
    _require_same_shape(x, y)
    n = len(x)
    if spec.t + spec.s >= n:
        raise ValueError(f"need t + s < n, got t={spec.t}, s={spec.s}, n={n}")
    if spec == BallSpec(1, 1) and x.q <= 255:
        _check_budget(n, x.q, spec, budget)
        common = ds11_packed(x.symbols, x.q) & ds11_packed(y.symbols, y.q)
        return SequenceSet((tuple(w) for w in common), x.q, n - 1)
    return ds_ball(x, spec, budget) & ds_ball(y, spec, budget)


def sub_intersection_size(x: Sequence, y: Sequence) -> int:
    """Size of the intersection of the two radius-1 substitution balls,
    by the closed form: q at Hamming distance 1, 2 at distance 2, 0 at
    distance 3 or more, and the full ball size 1 + (q-1)n for x == y.
    """
    _require_same_shape(x, y)
    d = hamming(x, y)
    if d == 0:
        return 1 + (x.q - 1) * len(x)
    if d == 1:
        return x.q
    if d == 2:
        return 2
    return 0


def _sub_ball_t(word: Word, s: int, q: int) -> Set[Word]:
    n = len(word)
    out: Set[Word] = {word}
    alternates = [[a for a in range(q) if a != sym] for sym in word]
    for k in range(1, min(s, n) + 1):
        for positions in combinations(range(n), k):
            for choice in product(*(alternates[p] for p in positions)):
                w = list(word)
                for p, a in zip(positions, choice):
                    w[p] = a
                out.add(tuple(w))
    return out


def _del_ball_t(word: Word, t: int) -> Set[Word]:
    n = len(word)
    out: Set[Word] = set()
    for kept in combinations(range(n), n - t):
        out.add(tuple(word[i] for i in kept))
    return out


_DELETION_INDEX_CACHE: dict = {}


def _deletion_indices(n: int) -> np.ndarray:
    idx = _DELETION_INDEX_CACHE.get(n)
    if idx is None:
        cols = np.arange(n - 1)[None, :]
        rows = np.arange(n)[:, None]
        idx = np.where(cols < rows, cols, cols + 1)
        _DELETION_INDEX_CACHE[n] = idx
    return idx


def ds11_packed(word: Word, q: int) -> FrozenSet[bytes]:
    """The (1,1)-ball of a word as a set of packed byte strings.

    Same enumeration as :func:`ds_ball` with spec (1, 1), vectorized so
    the oracle stays usable inside large verification sweeps.  Requires
    q <= 255.
    """
    n = len(word)
    if n < 3:
        raise ValueError("(1,1)-ball needs length at least 3")
    arr = np.frombuffer(bytes(word), dtype=np.uint8)
    deleted = arr[_deletion_indices(n)]
    out = np.empty((n, n - 1, q, n - 1), dtype=np.uint8)
    out[:] = deleted[:, None, None, :]
    symbols = np.arange(q, dtype=np.uint8)
    for p in range(n - 1):
        out[:, p, :, p] = symbols[None, :]
    flat = out.reshape(-1, n - 1)
    raw = flat.tobytes()
    w = n - 1
    return frozenset(raw[k * w : (k + 1) * w] for k in range(flat.shape[0]))
