"""Channel simulation, read coverage, and the reconstruction decoder.

A transmitted word of length n passes through a channel that deletes
exactly one symbol and substitutes at most one of the remaining ones,
so every read is a length n-1 member of the transmitted word's
(1,1)-ball.  Once the codebook keeps all pairwise Hamming distances at
2 or more (one parity symbol suffices), any collection of distinct
reads larger than the worst pairwise ball-intersection size pins the
transmitted word down uniquely; the decoder here recovers it by
candidate filtering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, islice, product
from pathlib import Path
from typing import FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .intersect import coverage_bound, intersection_size_fast, min_valid_length
from .sequence import Sequence, _delete_t

Word = Tuple[int, ...]

EXPLICIT_ENUM_LIMIT = 2_000_000


class Codebook:
    """A set of equal-length codewords, either listed explicitly or given
    implicitly as the single parity-check code {x : sum(x) = 0 mod q}.

    The parity-check code has minimum Hamming distance exactly 2 for
    n >= 2, which is what the read-coverage bound asks of the codebook.
    """

    def __init__(self, kind: str, n: int, q: int, words: Optional[Tuple[Word, ...]] = None,
                 min_distance: Optional[int] = None):
        self.kind = kind
        self.n = n
        self.q = q
        self.words = words
        self.min_distance = min_distance

    @classmethod
    def explicit(cls, sequences: Iterable[Sequence],
                 min_distance: Optional[int] = None) -> "Codebook":
        seqs = list(sequences)
        if not seqs:
            raise ValueError("explicit codebook cannot be empty")
        q = seqs[0].q
        n = len(seqs[0])
        words = []
        seen: Set[Word] = set()
        for s in seqs:
            if s.q != q or len(s) != n:
                raise ValueError("codewords must share one length and alphabet")
            if s.symbols in seen:
                raise ValueError(f"duplicate codeword {s}")
            seen.add(s.symbols)
            words.append(s.symbols)
        return cls("explicit", n, q, tuple(words), min_distance)

    @classmethod
    def parity(cls, n: int, q: int) -> "Codebook":
        if n < 2:
            raise ValueError("parity codebook needs n >= 2")
        if q < 2:
            raise ValueError("alphabet size must be at least 2")
        return cls("parity", n, q, None, min_distance=2)

    @classmethod
    def load(cls, path, q: int, min_distance: Optional[int] = None) -> "Codebook":
        """Explicit codebook from a newline-delimited text file of words;
        blank lines and lines starting with '#' are skipped."""
        seqs = _read_sequence_file(path, q)
        return cls.explicit(seqs, min_distance)

    def size(self) -> int:
        if self.kind == "explicit":
            return len(self.words)
        return self.q ** (self.n - 1)

    def __contains__(self, x) -> bool:
        symbols = x.symbols if isinstance(x, Sequence) else tuple(x)
        if len(symbols) != self.n:
            return False
        return self.contains_word(symbols)

    def contains_word(self, word: Word) -> bool:
        if self.kind == "explicit":
            return word in self._word_set()
        return sum(word) % self.q == 0

    def _word_set(self) -> FrozenSet[Word]:
        if not hasattr(self, "_cached_word_set"):
            self._cached_word_set = frozenset(self.words)
        return self._cached_word_set

    def iter_words(self, limit: Optional[int] = None) -> Iterator[Word]:
        """Enumerate codewords (lexicographically for parity codebooks),
        stopping after ``limit`` words when given."""
        if self.kind == "explicit":
            source: Iterable[Word] = self.words
        else:
            source = (
                prefix + ((-sum(prefix)) % self.q,)
                for prefix in product(range(self.q), repeat=self.n - 1)
            )
        return islice(source, limit) if limit is not None else iter(source)

    def sample_word(self, rng: random.Random) -> Sequence:
        """Uniformly random codeword."""
        if self.kind == "explicit":
            return Sequence._wrap(self.words[rng.randrange(len(self.words))], self.q)
        prefix = tuple(rng.randrange(self.q) for _ in range(self.n - 1))
        return Sequence._wrap(prefix + ((-sum(prefix)) % self.q,), self.q)

    def __repr__(self) -> str:
        return f"Codebook(kind={self.kind}, n={self.n}, q={self.q}, size={self.size()})"


class ReadSet:
    """Distinct channel outputs, all of one length, with the raw
    (pre-deduplication) count retained for reporting."""

    def __init__(self, reads: Iterable[Word], q: int, length: int, raw_count: Optional[int] = None):
        collected = list(reads)
        self.reads: FrozenSet[Word] = frozenset(collected)
        self.q = q
        self.length = length
        self.raw_count = raw_count if raw_count is not None else len(collected)
        for r in self.reads:
            if len(r) != length:
                raise ValueError("all reads must share one length")

    @classmethod
    def from_sequences(cls, seqs: Iterable[Sequence]) -> "ReadSet":
        seqs = list(seqs)
        if not seqs:
            raise ValueError("read set cannot be empty")
        q, length = seqs[0].q, len(seqs[0])
        for s in seqs:
            if s.q != q:
                raise ValueError("reads must share one alphabet")
        return cls((s.symbols for s in seqs), q, length, raw_count=len(seqs))

    @classmethod
    def from_file(cls, path, q: int) -> "ReadSet":
        return cls.from_sequences(_read_sequence_file(path, q))

    def __len__(self) -> int:
        return len(self.reads)

    def __iter__(self) -> Iterator[Sequence]:
        for r in self.reads:
            yield Sequence._wrap(r, self.q)

    def sorted(self) -> List[Sequence]:
        return [Sequence._wrap(r, self.q) for r in sorted(self.reads)]


@dataclass(frozen=True)
class ReconResult:
    """Decoder outcome: a unique codeword, an ambiguous candidate list,
    or no feasible candidate at all."""

    outcome: str  # "unique" | "ambiguous" | "infeasible"
    candidates: Tuple[Sequence, ...]
    distinct_reads: int
    raw_reads: int

    @property
    def codeword(self) -> Optional[Sequence]:
        return self.candidates[0] if self.outcome == "unique" else None

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "candidates": [str(c) for c in self.candidates],
            "distinct_reads": self.distinct_reads,
            "raw_reads": self.raw_reads,
        }


@dataclass(frozen=True)
class CoverageReport:
    """Read coverage of a codebook: the largest (1,1)-ball intersection
    over the codeword pairs examined.  ``exhaustive`` records whether
    every pair was visited or a seeded sample was used."""

    value: int
    pairs_checked: int
    exhaustive: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "pairs_checked": self.pairs_checked,
            "exhaustive": self.exhaustive,
            "note": self.note,
        }


def channel_transmit(
    x: Sequence,
    substitution_probability: float,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> Sequence:
    """One channel use: delete a uniformly random position, then with the
    given probability substitute one uniformly random remaining position
    with a uniformly random different symbol.

    Deterministic under a fixed seed (or caller-supplied generator).
    """
    n = len(x)
    if n < 2:
        raise ValueError("channel needs words of length at least 2")
    if not 0.0 <= substitution_probability <= 1.0:
        raise ValueError("substitution probability must lie in [0, 1]")
    if rng is None:
        if seed is None:
            raise ValueError("provide a seed (or an explicit generator)")
        rng = random.Random(seed)
    j = rng.randrange(1, n + 1)
    out = list(_delete_t(x.symbols, j))
    if rng.random() < substitution_probability:
        p = rng.randrange(n - 1)
        out[p] = (out[p] + 1 + rng.randrange(x.q - 1)) % x.q
    return Sequence._wrap(tuple(out), x.q)


def ball_membership(y: Sequence, x: Sequence) -> bool:
    """Whether the read ``y`` lies in the (1,1)-ball of ``x``, i.e. some
    single deletion of ``x`` is within Hamming distance 1 of ``y``.

    Runs in O(n) using prefix/suffix mismatch counts; the ball is never
    materialized.
    """
    if x.q != y.q:
        raise ValueError(f"alphabet mismatch: q={x.q} vs q={y.q}")
    if len(y) != len(x) - 1:
        raise ValueError(f"read length must be {len(x) - 1}, got {len(y)}")
    return _membership_t(y.symbols, x.symbols)


def _membership_t(y: Word, x: Word) -> bool:
    n = len(x)
    # pre[j]: mismatches of x[:j] vs y[:j]; suf[j]: mismatches of
    # x[j+1:] vs y[j:].  Deleting 0-based j from x leaves pre[j]+suf[j].
    best_suffix = [0] * n
    acc = 0
    for t in range(n - 2, -1, -1):
        if x[t + 1] != y[t]:
            acc += 1
        best_suffix[t] = acc
    pre = 0
    for j in range(n):
        if pre + best_suffix[j] <= 1:
            return True
        if pre > 1:
            return False
        if j < n - 1 and x[j] != y[j]:
            pre += 1
    return pre <= 1


def inverse_ball_words(y: Word, q: int) -> Set[Word]:
    """All words of length n = len(y)+1 whose (1,1)-ball contains ``y``:
    exactly the single-symbol insertions into the words within Hamming
    distance 1 of ``y``."""
    m = len(y)
    out: Set[Word] = set()
    variants: Set[Word] = {y}
    for p in range(m):
        base = y[p]
        for a in range(q):
            if a != base:
                variants.add(y[:p] + (a,) + y[p + 1 :])
    for v in variants:
        for pos in range(m + 1):
            head, tail = v[:pos], v[pos:]
            for a in range(q):
                out.add(head + (a,) + tail)
    return out


def read_coverage(
    codebook: Codebook,
    pair_budget: int = 1_000_000,
    sample_pairs: int = 200_000,
    seed: Optional[int] = None,
) -> CoverageReport:
    """Largest (1,1)-ball intersection size over distinct codeword pairs.

    Exhaustive when the pair count fits the budget; otherwise a seeded
    sample of pairs is used and the result is a lower-bound estimate,
    flagged in the report.
    """
    if codebook.size() < 2:
        raise ValueError("read coverage needs at least two codewords")
    total_pairs = codebook.size() * (codebook.size() - 1) // 2
    if total_pairs <= pair_budget and codebook.size() <= EXPLICIT_ENUM_LIMIT:
        words = list(codebook.iter_words())
        best = 0
        checked = 0
        q = codebook.q
        for a, b in combinations(words, 2):
            size = intersection_size_fast(
                Sequence._wrap(a, q), Sequence._wrap(b, q)
            ).size
            checked += 1
            if size > best:
                best = size
        return CoverageReport(best, checked, True)
    if seed is None:
        raise ValueError(
            f"{total_pairs} codeword pairs exceed the budget of {pair_budget}; "
            "supply a seed to sample"
        )
    rng = random.Random(seed)
    best = 0
    q = codebook.q
    for _ in range(sample_pairs):
        a = codebook.sample_word(rng)
        b = codebook.sample_word(rng)
        if a == b:
            continue
        size = intersection_size_fast(a, b).size
        if size > best:
            best = size
    return CoverageReport(
        best,
        sample_pairs,
        False,
        note="sampled lower bound; exhaustive pair sweep exceeded budget",
    )


def reconstruct(reads: ReadSet, codebook: Codebook) -> ReconResult:
    """Codewords whose (1,1)-ball contains every read.

    Returns a unique codeword, the sorted candidate list when several
    remain, or an infeasible outcome when no codeword explains all
    reads.  With more distinct reads than the codebook's read coverage,
    the unique outcome is guaranteed.
    """
    if len(reads) == 0:
        raise ValueError("read set cannot be empty")
    if reads.length != codebook.n - 1:
        raise ValueError(
            f"reads have length {reads.length}, codebook needs {codebook.n - 1}"
        )
    if reads.q != codebook.q:
        raise ValueError("reads and codebook use different alphabets")
    ordered = sorted(reads.reads)
    if codebook.kind == "explicit":
        candidates = [
            w for w in codebook.words
            if all(_membership_t(r, w) for r in ordered)
        ]
    else:
        pool = inverse_ball_words(ordered[0], codebook.q)
        if len(ordered) > 1:
            pool &= inverse_ball_words(ordered[1], codebook.q)
        candidates = [
            w for w in pool
            if codebook.contains_word(w)
            and all(_membership_t(r, w) for r in ordered[2:])
        ]
    candidates = sorted(set(candidates))
    seqs = tuple(Sequence._wrap(w, codebook.q) for w in candidates)
    if not seqs:
        outcome = "infeasible"
    elif len(seqs) == 1:
        outcome = "unique"
    else:
        outcome = "ambiguous"
    return ReconResult(outcome, seqs, len(reads), reads.raw_count)


def required_reads(n: int, q: int) -> int:
    """Number of distinct reads that guarantees unique reconstruction
    over any codebook with minimum Hamming distance 2: one more than the
    coverage bound.  Only valid from min_valid_length(q) on; shorter
    lengths are reported, not clamped."""
    threshold = min_valid_length(q)
    if n < threshold:
        raise ValueError(
            f"coverage bound needs n >= {threshold} for q = {q}, got n = {n}"
        )
    return coverage_bound(n, q) + 1


def _read_sequence_file(path, q: int) -> List[Sequence]:
    text = Path(path).read_text()
    seqs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        seqs.append(Sequence.parse(line, q))
    if not seqs:
        raise ValueError(f"no sequences found in {path}")
    return seqs
