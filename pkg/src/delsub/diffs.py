"""Mismatch structure of an ordered pair of equal-length words.

For words x, x' of length n the three index sets

* ``S``  = positions i with x_i != x'_i,
* ``TL`` = positions i in [2, n] with x_i != x'_{i-1},
* ``TR`` = positions i in [2, n] with x_{i-1} != x'_i,

determine the Hamming distance of any pair of one-deletion results in
constant time: deleting position j from x and j' >= j from x' leaves
exactly the mismatches counted by ``|S  [1, j-1]| + |TL  [j+1, j']| +
|S  [j'+1, n]|`` (and the ``TR`` variant when the later position is
deleted from x instead).  Everything in this module is bookkeeping on
top of that identity: prefix tables for the counts, the extremal
"landmark" elements of TL/TR around the first and last mismatch, and
the exhaustive scan that collects every deleted pair at Hamming
distance at most 2, classified by which of the three terms carry it.

All positions are 1-based.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .sequence import Sequence, _delete_t, _require_same_shape

Word = Tuple[int, ...]
PairValue = Tuple[Word, Word]
GroupKey = Tuple[str, int, Optional[int]]

SIDES = ("L", "R")

# Case index per (prefix, middle, suffix) mismatch-count triple.
CASE_BY_TRIPLE: Dict[Tuple[int, int, int], int] = {
    (1, 0, 0): 1,
    (0, 1, 0): 2,
    (0, 0, 1): 3,
    (2, 0, 0): 1,
    (0, 2, 0): 2,
    (0, 0, 2): 3,
    (0, 1, 1): 4,
    (1, 0, 1): 5,
    (1, 1, 0): 6,
}


class DiffProfile:
    """Index sets S, TL, TR of an ordered pair plus prefix tables for
    constant-time interval counts."""

    __slots__ = ("n", "q", "s", "tl", "tr", "d", "_ps", "_ptl", "_ptr")

    def __init__(self, x: Sequence, y: Sequence):
        _require_same_shape(x, y)
        n = len(x)
        if n < 2:
            raise ValueError("diff profile needs words of length at least 2")
        xs, ys = x.symbols, y.symbols
        s = tuple(i for i in range(1, n + 1) if xs[i - 1] != ys[i - 1])
        tl = tuple(i for i in range(2, n + 1) if xs[i - 1] != ys[i - 2])
        tr = tuple(i for i in range(2, n + 1) if xs[i - 2] != ys[i - 1])
        self.n = n
        self.q = x.q
        self.s = s
        self.tl = tl
        self.tr = tr
        self.d = len(s)
        self._ps = _prefix_table(s, n)
        self._ptl = _prefix_table(tl, n)
        self._ptr = _prefix_table(tr, n)

    def s_count(self, lo: int, hi: int) -> int:
        """|S intersected with [lo, hi]| (empty interval gives 0)."""
        if hi < lo:
            return 0
        return self._ps[min(hi, self.n)] - self._ps[max(lo - 1, 0)]

    def t_count(self, side: str, lo: int, hi: int) -> int:
        """|TL or TR intersected with [lo, hi]|."""
        table = self._table(side)
        if hi < lo:
            return 0
        return table[min(hi, self.n)] - table[max(lo - 1, 0)]

    def deleted_hamming(self, j: int, jprime: int, side: str) -> int:
        """Hamming distance of the deleted pair selected by (j, j', side)
        without constructing it.

        Side "L" deletes j from x and j' from y; side "R" deletes j' from
        x and j from y.  Requires j <= j'.
        """
        if j > jprime:
            raise ValueError(f"need j <= j', got j={j}, j'={jprime}")
        if not 1 <= j <= self.n or not 1 <= jprime <= self.n:
            raise ValueError(f"positions must lie in [1, {self.n}]")
        table = self._table(side)
        return (
            self._ps[j - 1]
            + (table[jprime] - table[j])
            + (self._ps[self.n] - self._ps[jprime])
        )

    def mismatch_positions(self, j: int, jprime: int, side: str) -> Tuple[int, ...]:
        """The 1-based original positions carrying the residual mismatches
        of the deleted pair selected by (j, j', side)."""
        t = self.tl if side == "L" else self.tr if side == "R" else _bad_side(side)
        s = self.s
        out: List[int] = []
        out.extend(s[: bisect_left(s, j)])
        out.extend(t[bisect_right(t, j) : bisect_right(t, jprime)])
        out.extend(s[bisect_right(s, jprime) :])
        return tuple(out)

    def _table(self, side: str) -> Tuple[int, ...]:
        if side == "L":
            return self._ptl
        if side == "R":
            return self._ptr
        return _bad_side(side)


def _bad_side(side: str):
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


def _prefix_table(positions: Tuple[int, ...], n: int) -> Tuple[int, ...]:
    table = [0] * (n + 1)
    for p in positions:
        table[p] = 1
    acc = 0
    for i in range(n + 1):
        acc += table[i]
        table[i] = acc
    return tuple(table)


def diff_profile(x: Sequence, y: Sequence) -> DiffProfile:
    """Compute the mismatch profile of the ordered pair (x, y)."""
    return DiffProfile(x, y)


def deleted_hamming(profile: DiffProfile, j: int, jprime: int, side: str) -> int:
    """Module-level alias of :meth:`DiffProfile.deleted_hamming`."""
    return profile.deleted_hamming(j, jprime, side)


@dataclass(frozen=True)
class Landmarks:
    """Extremal TL/TR elements around the first and last mismatch.

    The k-family reads TL, the m-family TR.  ``k1``/``k1p`` are the
    nearest TL elements below i_1 and above i_d (maximum and minimum
    respectively), ``k2``/``k2p`` the second nearest; these are None when
    TL has too few elements there.  ``ka``..``kcp`` are the interval
    endpoints derived from them, with defaults 1 on the left and n on
    the right, and are always present.
    """

    k1: Optional[int]
    k1p: Optional[int]
    k2: Optional[int]
    k2p: Optional[int]
    ka: int
    kap: int
    kb: int
    kbp: int
    kc: int
    kcp: int
    m1: Optional[int]
    m1p: Optional[int]
    m2: Optional[int]
    m2p: Optional[int]


def landmarks(profile: DiffProfile) -> Landmarks:
    """Landmark indices of a profile with at least one mismatch."""
    if profile.d == 0:
        raise ValueError("landmarks are undefined for identical words")
    i1, idd = profile.s[0], profile.s[-1]
    n = profile.n
    k1, k2, k3 = _below(profile.tl, i1)
    k1p, k2p, k3p = _above(profile.tl, idd)
    m1, m2, _ = _below(profile.tr, i1)
    m1p, m2p, _ = _above(profile.tr, idd)
    return Landmarks(
        k1=k1,
        k1p=k1p,
        k2=k2,
        k2p=k2p,
        ka=k1 if k1 is not None else 1,
        kap=k1p - 1 if k1p is not None else n,
        kb=k2 if k2 is not None else 1,
        kbp=k2p - 1 if k2p is not None else n,
        kc=k3 if k3 is not None else 1,
        kcp=k3p - 1 if k3p is not None else n,
        m1=m1,
        m1p=m1p,
        m2=m2,
        m2p=m2p,
    )


def _below(positions: Tuple[int, ...], bound: int):
    """Largest, second and third largest elements <= bound (None-padded)."""
    idx = bisect_right(positions, bound)
    sub = positions[max(0, idx - 3) : idx]
    padded = (None, None, None) + sub
    return padded[-1], padded[-2], padded[-3]


def _above(positions: Tuple[int, ...], bound: int):
    """Smallest, second and third smallest elements > bound (None-padded)."""
    idx = bisect_right(positions, bound)
    sub = positions[idx : idx + 3]
    padded = sub + (None, None, None)
    return padded[0], padded[1], padded[2]


class LambdaEntry:
    """One deleted-pair candidate: deletion positions j <= j', the side
    selecting which word loses the later position, the residual Hamming
    distance ``ell`` and its case index in the classification table, and
    the resulting pair of shortened words."""

    __slots__ = ("side", "ell", "case_index", "j", "jprime", "_pair_raw", "_q")

    def __init__(
        self,
        side: str,
        ell: int,
        case_index: Optional[int],
        j: int,
        jprime: int,
        pair_raw: PairValue,
        q: int,
    ):
        self.side = side
        self.ell = ell
        self.case_index = case_index
        self.j = j
        self.jprime = jprime
        self._pair_raw = pair_raw
        self._q = q

    @property
    def pair(self) -> Tuple[Sequence, Sequence]:
        z, zp = self._pair_raw
        return Sequence._wrap(z, self._q), Sequence._wrap(zp, self._q)

    def __repr__(self) -> str:
        return (
            f"LambdaEntry(side={self.side}, ell={self.ell}, case={self.case_index}, "
            f"j={self.j}, j'={self.jprime})"
        )


class LambdaDecomposition:
    """All deleted-pair candidates of a pair (x, y), grouped by
    (side, ell, case index) with per-group deduplicated pair views."""

    def __init__(
        self,
        x: Sequence,
        y: Sequence,
        entries: Tuple[LambdaEntry, ...],
        groups: Dict[GroupKey, FrozenSet[PairValue]],
    ):
        self.x = x
        self.y = y
        self.entries = entries
        self.groups = groups

    def group(self, side: str, ell: int, case_index: Optional[int] = None) -> FrozenSet[PairValue]:
        """Deduplicated pair values of one group (empty set if absent)."""
        return self.groups.get((side, ell, case_index), frozenset())

    def group_pairs(
        self, side: str, ell: int, case_index: Optional[int] = None
    ) -> FrozenSet[Tuple[Sequence, Sequence]]:
        q = self.x.q
        return frozenset(
            (Sequence._wrap(z, q), Sequence._wrap(zp, q))
            for z, zp in self.group(side, ell, case_index)
        )

    def side_level(self, side: str, ell: int) -> FrozenSet[PairValue]:
        """Union of the pair views of one side at one distance."""
        out: set = set()
        for (s, l, _), pairs in self.groups.items():
            if s == side and l == ell:
                out |= pairs
        return frozenset(out)

    def level(self, ell: int) -> FrozenSet[PairValue]:
        """Union of both sides' pair views at one distance."""
        return self.side_level("L", ell) | self.side_level("R", ell)

    def pairs(self) -> FrozenSet[PairValue]:
        out: set = set()
        for pairs in self.groups.values():
            out |= pairs
        return frozenset(out)


RawEntry = Tuple[str, int, Optional[int], int, int]


def scan_candidates(profile: DiffProfile) -> List[RawEntry]:
    """Every (side, ell, case, j, j') with j <= j' whose deleted pair has
    Hamming distance at most 2.

    The scan walks the (j, j') grid but skips ranges where the prefix or
    suffix mismatch count alone already exceeds 2, so pairs at large
    Hamming distance cost little.
    """
    n = profile.n
    ps, ptl, ptr = profile._ps, profile._ptl, profile._ptr
    total = ps[n]
    out: List[RawEntry] = []
    for j in range(1, n + 1):
        prefix = ps[j - 1]
        if prefix > 2:
            break
        # smallest j' with suffix count <= 2 - prefix
        target = total - 2 + prefix
        start = j if target <= 0 else max(j, bisect_left(ps, target))
        budget = 2 - prefix
        tlj = ptl[j]
        trj = ptr[j]
        for jprime in range(start, n + 1):
            suffix = total - ps[jprime]
            rest = budget - suffix
            if rest < 0:
                continue
            mid = ptl[jprime] - tlj
            if mid <= rest:
                case = CASE_BY_TRIPLE.get((prefix, mid, suffix))
                out.append(("L", prefix + mid + suffix, case, j, jprime))
            mid = ptr[jprime] - trj
            if mid <= rest:
                case = CASE_BY_TRIPLE.get((prefix, mid, suffix))
                out.append(("R", prefix + mid + suffix, case, j, jprime))
    return out


def pair_value(
    xs: Word, ys: Word, side: str, j: int, jprime: int
) -> PairValue:
    """The deleted pair selected by (side, j, j'): side L deletes j from
    x and j' from y, side R deletes j' from x and j from y."""
    if side == "L":
        return _delete_t(xs, j), _delete_t(ys, jprime)
    if side == "R":
        return _delete_t(xs, jprime), _delete_t(ys, j)
    return _bad_side(side)


def lambda_enumerate(x: Sequence, y: Sequence) -> LambdaDecomposition:
    """Collect and classify every deleted-pair candidate of (x, y) by the
    exhaustive scan.

    This is the reference decomposition; the direct construction in
    :mod:`delsub.intersect` is checked against it groupwise.
    """
    profile = diff_profile(x, y)
    raw = scan_candidates(profile)
    return assemble_decomposition(x, y, raw)


def assemble_decomposition(
    x: Sequence, y: Sequence, raw: List[RawEntry]
) -> LambdaDecomposition:
    """Build the public decomposition object from raw scan entries."""
    xs, ys, q = x.symbols, y.symbols, x.q
    entries: List[LambdaEntry] = []
    groups: Dict[GroupKey, set] = {}
    for side, ell, case, j, jprime in raw:
        value = pair_value(xs, ys, side, j, jprime)
        entries.append(LambdaEntry(side, ell, case, j, jprime, value, q))
        groups.setdefault((side, ell, case), set()).add(value)
    frozen = {key: frozenset(vals) for key, vals in groups.items()}
    return LambdaDecomposition(x, y, tuple(entries), frozen)
