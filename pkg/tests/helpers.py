"""Shared test utilities: independent oracles and hypothesis strategies.

The oracles here deliberately reimplement things the library computes
cleverly, in the dumbest correct way available, so the two sides stay
independent.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Dict, FrozenSet, List, Tuple

from hypothesis import strategies as st

from delsub import Sequence

Word = Tuple[int, ...]


def all_words(q: int, n: int) -> List[Sequence]:
    return [Sequence(t, q) for t in product(range(q), repeat=n)]


def subsequences(word: Word, length: int) -> FrozenSet[Word]:
    return frozenset(
        tuple(word[i] for i in kept) for kept in combinations(range(len(word)), length)
    )


def brute_lcs(a: Word, b: Word) -> int:
    """Longest common subsequence by enumerating all subsequences of the
    shorter word, longest first."""
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    for length in range(len(short), -1, -1):
        if subsequences(short, length) & subsequences(long_, length):
            return length
    return 0


def brute_hamming(a: Word, b: Word) -> int:
    return sum(1 for u, v in zip(a, b) if u != v)


def naive_lambda_groups(x: Sequence, y: Sequence) -> Dict[tuple, FrozenSet[tuple]]:
    """Classify every deleted pair at Hamming distance <= 2 straight from
    the definitions: materialize the deleted words, count the prefix /
    shifted-window / suffix mismatches directly, no prefix tables."""
    xs, ys, n = x.symbols, y.symbols, len(x)
    groups: Dict[tuple, set] = {}
    case_by_triple = {
        (1, 0, 0): 1, (0, 1, 0): 2, (0, 0, 1): 3,
        (2, 0, 0): 1, (0, 2, 0): 2, (0, 0, 2): 3,
        (0, 1, 1): 4, (1, 0, 1): 5, (1, 1, 0): 6,
    }
    for j in range(1, n + 1):
        for jp in range(j, n + 1):
            for side in ("L", "R"):
                if side == "L":
                    z = xs[: j - 1] + xs[j:]
                    zp = ys[: jp - 1] + ys[jp:]
                else:
                    z = xs[: jp - 1] + xs[jp:]
                    zp = ys[: j - 1] + ys[j:]
                ell = brute_hamming(z, zp)
                if ell > 2:
                    continue
                prefix = sum(1 for i in range(1, j) if xs[i - 1] != ys[i - 1])
                suffix = sum(1 for i in range(jp + 1, n + 1) if xs[i - 1] != ys[i - 1])
                if side == "L":
                    mid = sum(1 for i in range(j + 1, jp + 1) if xs[i - 1] != ys[i - 2])
                else:
                    mid = sum(1 for i in range(j + 1, jp + 1) if xs[i - 2] != ys[i - 1])
                assert prefix + mid + suffix == ell, "shifted-count identity broken"
                case = case_by_triple.get((prefix, mid, suffix))
                groups.setdefault((side, ell, case), set()).add((z, zp))
    return {k: frozenset(v) for k, v in groups.items()}


def word_tuples(q: int, min_n: int = 1, max_n: int = 8) -> st.SearchStrategy:
    return st.lists(
        st.integers(min_value=0, max_value=q - 1), min_size=min_n, max_size=max_n
    ).map(tuple)


def sequences(q: int, min_n: int = 1, max_n: int = 8) -> st.SearchStrategy:
    return word_tuples(q, min_n, max_n).map(lambda t: Sequence(t, q))


def sequence_pairs(q: int, min_n: int = 2, max_n: int = 8) -> st.SearchStrategy:
    """Pairs of equal-length words over one alphabet."""

    def build(n: int):
        word = st.lists(
            st.integers(min_value=0, max_value=q - 1), min_size=n, max_size=n
        ).map(lambda t: Sequence(tuple(t), q))
        return st.tuples(word, word)

    return st.integers(min_value=min_n, max_value=max_n).flatmap(build)
