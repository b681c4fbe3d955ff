"""Structural computation of (1,1)-ball intersections.

The intersection of the single-deletion single-substitution balls of two
words x, x' is the union, over every deleted pair (z, z') at Hamming
distance at most 2, of the radius-1 substitution balls' intersection
B(z) & B(z').  Each such intersection has a direct form: the full
radius-1 ball of z when z == z', exactly q words (one per alphabet
symbol written at the single residual mismatch) at distance 1, and
exactly 2 words (each mismatch repaired with the other word's symbol)
at distance 2.  Generating those members straight from the deletion
positions and residual mismatches - never by materializing and
intersecting substitution balls - gives the exact intersection size in
O(n^2) scan time plus output size.

Two constructions of the deleted-pair family coexist:

* :func:`delsub.diffs.lambda_enumerate` scans all position pairs, and
* :func:`claims_lambda` builds each group directly from interval counts
  and landmark indices, without scanning.

They must agree groupwise; :func:`verify_claims` checks that, together
with the per-group cardinality and absorption facts that the coverage
bound 2qn - 3q - 2 - [q == 2] rests on.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .balls import BallSpec, DEFAULT_BUDGET, SequenceSet, ball_intersection
from .diffs import (
    CASE_BY_TRIPLE,
    DiffProfile,
    GroupKey,
    LambdaDecomposition,
    PairValue,
    RawEntry,
    Word,
    assemble_decomposition,
    lambda_enumerate,
    landmarks,
    pair_value,
    scan_candidates,
)
from .sequence import Sequence, _delete_t, _phi_t, _require_same_shape, alternating

TRIPLE_BY_CASE: Dict[Tuple[int, int], Tuple[int, int, int]] = {
    (sum(t), c): t for t, c in CASE_BY_TRIPLE.items()
}

ALL_GROUP_KEYS: Tuple[GroupKey, ...] = tuple(
    [("L", 0, None), ("R", 0, None)]
    + [(side, 1, i) for side in ("L", "R") for i in (1, 2, 3)]
    + [(side, 2, i) for side in ("L", "R") for i in (1, 2, 3, 4, 5, 6)]
)


def kronecker_q2(q: int) -> int:
    return 1 if q == 2 else 0


def coverage_bound(n: int, q: int) -> int:
    """Upper bound on the (1,1)-ball intersection size of two length-n
    words at Hamming distance >= 2, valid for n >= min_valid_length(q)."""
    return 2 * q * n - 3 * q - 2 - kronecker_q2(q)


def min_valid_length(q: int) -> int:
    """Smallest n for which the coverage bound is guaranteed:
    n >= (q+23)/2 and n >= (5q+19)/(q-1)."""
    return max(-(-(q + 23) // 2), -(-(5 * q + 19) // (q - 1)))


def bound_applicable(n: int, q: int, d: int) -> bool:
    return d >= 2 and n >= min_valid_length(q)


def constant_regime_bound(q: int) -> int:
    """Size bound 4q + 32, independent of n, for pairs with Hamming
    distance >= 3 whose mismatch windows shift on both sides (in
    particular whenever the two words do not share a length n-1
    subsequence)."""
    return 4 * q + 32


def extremal_pair(q: int, n: int) -> Tuple[Sequence, Sequence]:
    """A pair of length-n words at Hamming distance 2 whose (1,1)-ball
    intersection meets the coverage bound once n is in the valid range.

    For q >= 3 the pair is 01201 / 10201 followed by an alternating
    tail; for q = 2 it is 0101 / 1001 followed by an alternating tail.
    """
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    if q >= 3:
        if n < 5:
            raise ValueError("construction needs n >= 5 for q >= 3")
        head_x, head_y = "01201", "10201"
    else:
        if n < 4:
            raise ValueError("construction needs n >= 4 for q = 2")
        head_x, head_y = "0101", "1001"
    tail = alternating(n - len(head_x), 0, 1, q=q)
    return Sequence.parse(head_x, q) + tail, Sequence.parse(head_y, q) + tail


# ---------------------------------------------------------------------------
# Member expansion


def expand_members(
    xs: Word, ys: Word, q: int, side: str, ell: int, j: int, jprime: int,
    mismatches: Tuple[int, ...],
) -> List[Word]:
    """Members of B(z) & B(z') for the deleted pair selected by
    (side, j, j'), generated directly.

    Side L deletes j from x, side R deletes j from y; ``mismatches``
    are the original positions of the residual mismatches.  A mismatch
    inside [j+1, j'] compares against the other word one position to the
    left, which is what the target-symbol lookup below accounts for.
    """
    if side == "L":
        primary, other = xs, ys
    else:
        primary, other = ys, xs
    if ell == 0:
        z = _delete_t(primary, j)
        members = [z]
        for p in range(len(z)):
            base = z[p]
            for a in range(q):
                if a != base:
                    members.append(z[:p] + (a,) + z[p + 1 :])
        return members
    if ell == 1:
        m = mismatches[0]
        return [_phi_t(primary, j, m, a) for a in range(q)]
    members = []
    for m in mismatches:
        target = other[m - 1] if (m < j or m > jprime) else other[m - 2]
        members.append(_phi_t(primary, j, m, target))
    return members


def structural_group_sets(
    profile: DiffProfile, xs: Word, ys: Word, raw: List[RawEntry]
) -> Dict[GroupKey, Set[Word]]:
    """Expand raw scan entries into per-group member sets, deduplicating
    entries that collapse to the same deleted pair before expanding."""
    q = profile.q
    reps: Dict[GroupKey, Dict[PairValue, Tuple[int, int]]] = {}
    for side, ell, case, j, jprime in raw:
        value = pair_value(xs, ys, side, j, jprime)
        reps.setdefault((side, ell, case), {}).setdefault(value, (j, jprime))
    out: Dict[GroupKey, Set[Word]] = {}
    for key, values in reps.items():
        side, ell, _ = key
        members: Set[Word] = set()
        for _, (j, jprime) in values.items():
            mism = profile.mismatch_positions(j, jprime, side)
            members.update(expand_members(xs, ys, q, side, ell, j, jprime, mism))
        out[key] = members
    return out


@dataclass(frozen=True)
class OmegaGroup:
    """The expanded members contributed by one classified group."""

    side: str
    ell: int
    case_index: Optional[int]
    members: SequenceSet


def omega_groups(dec: LambdaDecomposition, x: Sequence, y: Sequence) -> List[OmegaGroup]:
    """Expand every group of a decomposition into its member set.

    The decomposition must have been produced from the same (x, y);
    anything else is inconsistent provenance.
    """
    if dec.x != x or dec.y != y:
        raise ValueError("decomposition was built from a different pair")
    profile = DiffProfile(x, y)
    raw = [(e.side, e.ell, e.case_index, e.j, e.jprime) for e in dec.entries]
    sets = structural_group_sets(profile, x.symbols, y.symbols, raw)
    length = len(x) - 1
    return [
        OmegaGroup(side, ell, case, SequenceSet(members, x.q, length))
        for (side, ell, case), members in sorted(
            sets.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or 0)
        )
    ]


# ---------------------------------------------------------------------------
# Direct (claims-based) construction of the decomposition


def claims_lambda(x: Sequence, y: Sequence) -> LambdaDecomposition:
    """Build the deleted-pair decomposition directly from interval counts
    and landmarks, without scanning position pairs.

    Groups whose characterization is only a containment are generated as
    candidates and validated against their defining count triple; a
    failing candidate is dropped.  Requires Hamming distance >= 2.
    """
    profile = DiffProfile(x, y)
    if profile.d < 2:
        raise ValueError("direct construction needs Hamming distance >= 2")
    raw: List[RawEntry] = [
        ("L", ell, case, j, jprime)
        for ell, case, j, jprime in _claims_one_side(profile, x.symbols)
    ]
    back = DiffProfile(y, x)
    raw.extend(
        ("R", ell, case, j, jprime)
        for ell, case, j, jprime in _claims_one_side(back, y.symbols)
    )
    return assemble_decomposition(x, y, raw)


def _claims_one_side(p: DiffProfile, xs: Word) -> List[Tuple[int, Optional[int], int, int]]:
    """Left-side groups for the orientation of ``p``; the caller maps the
    reversed orientation onto the right side."""
    s = p.s
    d = p.d
    n = p.n
    tl = p.tl
    i1, i2, id1, idd = s[0], s[1], s[-2], s[-1]
    marks = landmarks(p)
    k1, k1p, k2, k2p = marks.k1, marks.k1p, marks.k2, marks.k2p
    out: List[Tuple[int, Optional[int], int, int]] = []

    def cnt(lo: int, hi: int) -> int:
        return p.t_count("L", lo, hi)

    def emit(ell: int, case: Optional[int], j: int, jprime: int) -> None:
        out.append((ell, case, j, jprime))

    def emit_validated(ell: int, case: int, j: int, jprime: int) -> None:
        if not 1 <= j <= jprime <= n:
            return
        triple = TRIPLE_BY_CASE[(ell, case)]
        if (
            p.s_count(1, j - 1) == triple[0]
            and cnt(j + 1, jprime) == triple[1]
            and p.s_count(jprime + 1, n) == triple[2]
        ):
            emit(ell, case, j, jprime)

    mid_all = cnt(i1 + 1, idd)

    # distance 0: one collapsed pair when nothing shifts inside [i1, id]
    if mid_all == 0:
        emit(0, None, i1, idd)

    # distance 1, case (1,0,0)
    if cnt(i2 + 1, idd) == 0:
        emit(1, 1, i2, idd)
    # distance 1, case (0,1,0)
    if mid_all == 1:
        emit(1, 2, i1, idd)
    elif mid_all == 0:
        if k1 is not None:
            emit_validated(1, 2, k1 - 1, idd)
        if k1p is not None:
            emit_validated(1, 2, i1, k1p)
    # distance 1, case (0,0,1)
    if cnt(i1 + 1, id1) == 0:
        emit(1, 3, i1, id1)

    # distance 2, case (2,0,0)
    if d == 2:
        for j in _run_lasts(xs, i2 + 1, n):
            emit(2, 1, j, j)
    else:
        if cnt(s[2] + 1, idd) == 0:
            emit(2, 1, s[2], idd)
    # distance 2, case (0,2,0)
    if mid_all == 2:
        emit(2, 2, i1, idd)
    elif mid_all == 1:
        if k1 is not None:
            emit_validated(2, 2, k1 - 1, idd)
        if k1p is not None:
            emit_validated(2, 2, i1, k1p)
    elif mid_all == 0:
        if k2 is not None:
            emit_validated(2, 2, k2 - 1, idd)
        if k1 is not None and k1p is not None:
            emit_validated(2, 2, k1 - 1, k1p)
        if k2p is not None:
            emit_validated(2, 2, i1, k2p)
    # distance 2, case (0,0,2)
    if d == 2:
        for j in _run_lasts(xs, 1, i1 - 1):
            emit(2, 3, j, j)
    else:
        if cnt(i1 + 1, s[-3]) == 0:
            emit(2, 3, i1, s[-3])
    # distance 2, case (0,1,1)
    mid_front = cnt(i1 + 1, id1)
    if mid_front == 1:
        emit(2, 4, i1, id1)
    elif mid_front == 0:
        if k1 is not None:
            emit_validated(2, 4, k1 - 1, id1)
        jp1 = _interval_min(tl, id1 + 1, idd - 1)
        if jp1 is not None:
            emit_validated(2, 4, i1, jp1)
    # distance 2, case (1,0,1)
    if d == 2:
        for j in _run_lasts(xs, i1 + 1, i2 - 1):
            emit(2, 5, j, j)
    else:
        if cnt(i2 + 1, id1) == 0:
            emit(2, 5, i2, id1)
    # distance 2, case (1,1,0)
    mid_back = cnt(i2 + 1, idd)
    if mid_back == 1:
        emit(2, 6, i2, idd)
    elif mid_back == 0:
        if k1p is not None:
            emit_validated(2, 6, i2, k1p)
        j1 = _interval_max(tl, i1 + 2, i2)
        if j1 is not None:
            emit_validated(2, 6, j1 - 1, idd)
    return out


def _run_lasts(xs: Word, lo: int, hi: int) -> List[int]:
    """1-based last position of every run of xs within [lo, hi]."""
    if hi < lo:
        return []
    out = []
    for i in range(lo, hi):
        if xs[i - 1] != xs[i]:
            out.append(i)
    out.append(hi)
    return out


def _interval_min(positions: Tuple[int, ...], lo: int, hi: int) -> Optional[int]:
    idx = bisect_left(positions, lo)
    if idx < len(positions) and positions[idx] <= hi:
        return positions[idx]
    return None


def _interval_max(positions: Tuple[int, ...], lo: int, hi: int) -> Optional[int]:
    idx = bisect_right(positions, hi)
    if idx > 0 and positions[idx - 1] >= lo:
        return positions[idx - 1]
    return None


# ---------------------------------------------------------------------------
# Fast intersection size


@dataclass(frozen=True)
class IntersectionReport:
    """Size and structure of a (1,1)-ball intersection.

    ``method`` is "structural" when the size came from the deleted-pair
    expansion, "oracle" when the pair was below Hamming distance 2 and
    the materialized-ball fallback was used.  ``group_sizes`` holds each
    group's member count before cross-group deduplication; the overlap
    fields describe how the distance-1 and distance-2 members sit inside
    the distance-0 core.
    """

    n: int
    q: int
    d: int
    size: int
    method: str
    bound: int
    bound_applicable: bool
    group_sizes: Dict[str, int] = field(default_factory=dict)
    omega0_size: Optional[int] = None
    omega1_size: Optional[int] = None
    omega2_size: Optional[int] = None
    omega1_minus_omega0: Optional[int] = None
    omega2_minus_omega0: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "d": self.d,
            "size": self.size,
            "method": self.method,
            "bound": self.bound,
            "bound_applicable": self.bound_applicable,
            "group_sizes": dict(sorted(self.group_sizes.items())),
            "omega0_size": self.omega0_size,
            "omega1_size": self.omega1_size,
            "omega2_size": self.omega2_size,
            "omega1_minus_omega0": self.omega1_minus_omega0,
            "omega2_minus_omega0": self.omega2_minus_omega0,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def group_label(key: GroupKey) -> str:
    side, ell, case = key
    return f"{side}:{ell}" if case is None else f"{side}:{ell}.{case}"


def intersection_size_fast(
    x: Sequence, y: Sequence, oracle_budget: int = DEFAULT_BUDGET
) -> IntersectionReport:
    """Exact size of the (1,1)-ball intersection of two equal-length
    words, computed structurally for Hamming distance >= 2 and by the
    materialized oracle below that (the structural machinery presumes at
    least two mismatches).
    """
    _require_same_shape(x, y)
    n = len(x)
    if n < 3:
        raise ValueError("(1,1)-ball intersections need length at least 3")
    profile = DiffProfile(x, y)
    d = profile.d
    q = x.q
    bound = coverage_bound(n, q)
    applicable = bound_applicable(n, q, d)
    if d < 2:
        size = len(ball_intersection(x, y, BallSpec(1, 1), oracle_budget))
        return IntersectionReport(
            n=n, q=q, d=d, size=size, method="oracle",
            bound=bound, bound_applicable=applicable,
        )
    xs, ys = x.symbols, y.symbols
    raw = scan_candidates(profile)
    sets = structural_group_sets(profile, xs, ys, raw)
    union: Set[Word] = set()
    levels: Dict[int, Set[Word]] = {0: set(), 1: set(), 2: set()}
    group_sizes: Dict[str, int] = {}
    for key, members in sets.items():
        group_sizes[group_label(key)] = len(members)
        levels[key[1]] |= members
        union |= members
    omega0, omega1, omega2 = levels[0], levels[1], levels[2]
    return IntersectionReport(
        n=n,
        q=q,
        d=d,
        size=len(union),
        method="structural",
        bound=bound,
        bound_applicable=applicable,
        group_sizes=group_sizes,
        omega0_size=len(omega0),
        omega1_size=len(omega1),
        omega2_size=len(omega2),
        omega1_minus_omega0=len(omega1 - omega0),
        omega2_minus_omega0=len(omega2 - omega0),
    )


# ---------------------------------------------------------------------------
# Verification of the structural facts


@dataclass(frozen=True)
class CheckResult:
    name: str
    applicable: bool
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking the direct construction and the cardinality /
    absorption facts on one pair."""

    x: Sequence
    y: Sequence
    group_checks: Tuple[CheckResult, ...]
    fact_checks: Tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.group_checks + self.fact_checks if c.applicable)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.group_checks + self.fact_checks if c.applicable and not c.passed]

    def to_dict(self) -> dict:
        return {
            "x": str(self.x),
            "y": str(self.y),
            "all_passed": self.all_passed,
            "group_checks": [c.to_dict() for c in self.group_checks],
            "fact_checks": [c.to_dict() for c in self.fact_checks],
        }


def verify_claims(x: Sequence, y: Sequence) -> VerificationReport:
    """Compare the direct per-group construction against the exhaustive
    scan, and evaluate every applicable cardinality/absorption fact used
    by the coverage bound.  Requires Hamming distance >= 2.
    """
    profile = DiffProfile(x, y)
    if profile.d < 2:
        raise ValueError("verification needs Hamming distance >= 2")
    enum = lambda_enumerate(x, y)
    direct = claims_lambda(x, y)
    group_checks = []
    for key in ALL_GROUP_KEYS:
        expected = enum.groups.get(key, frozenset())
        got = direct.groups.get(key, frozenset())
        group_checks.append(
            CheckResult(
                name=group_label(key),
                applicable=True,
                passed=expected == got,
                detail="" if expected == got else
                f"direct has {len(got)} pairs, scan has {len(expected)}",
            )
        )
    fact_checks = _fact_checks(profile, x, y, enum)
    return VerificationReport(x, y, tuple(group_checks), tuple(fact_checks))


def _fact_checks(
    profile: DiffProfile, x: Sequence, y: Sequence, enum: LambdaDecomposition
) -> List[CheckResult]:
    n, q, d = profile.n, profile.q, profile.d
    i1, idd = profile.s[0], profile.s[-1]
    raw = [(e.side, e.ell, e.case_index, e.j, e.jprime) for e in enum.entries]
    sets = structural_group_sets(profile, x.symbols, y.symbols, raw)
    omega: Dict[Tuple[str, int], Set[Word]] = {}
    for (side, ell, _), members in sets.items():
        omega.setdefault((side, ell), set()).update(members)
    for side in ("L", "R"):
        for ell in (0, 1, 2):
            omega.setdefault((side, ell), set())
    omega_all = {ell: omega[("L", ell)] | omega[("R", ell)] for ell in (0, 1, 2)}

    def family(side: str, ell: int, cases) -> FrozenSet[PairValue]:
        out: set = set()
        for c in cases:
            out |= enum.groups.get((side, ell, c), frozenset())
        return frozenset(out)

    def even_members(side: str) -> Set[Word]:
        out: Set[Word] = set()
        for c in (2, 4, 6):
            out |= sets.get((side, 2, c), set())
        return out

    checks: List[CheckResult] = []
    shifted = {s: profile.t_count(s, i1 + 1, idd) != 0 for s in ("L", "R")}

    for side in ("L", "R"):
        if not shifted[side]:
            ok = omega[(side, 1)] <= omega[(side, 0)]
            checks.append(CheckResult(f"dist1-absorbed[{side}]", True, ok))
            checks.append(CheckResult(f"dist1-family[{side}]", False, True))
        else:
            limit = 3 if d == 2 else 2
            count = len(family(side, 1, (1, 2, 3)))
            checks.append(CheckResult(f"dist1-absorbed[{side}]", False, True))
            checks.append(
                CheckResult(
                    f"dist1-family[{side}]", True, count <= limit,
                    f"{count} pairs vs limit {limit}",
                )
            )

    if d == 2:
        diag = family("L", 2, (1, 3, 5)) | family("R", 2, (1, 3, 5))
        checks.append(
            CheckResult(
                "dist2-diagonal-family", True, len(diag) <= n - 2,
                f"{len(diag)} pairs vs limit {n - 2}",
            )
        )
        for side in ("L", "R"):
            if shifted[side]:
                count = len(family(side, 2, (2, 4, 6)))
                checks.append(
                    CheckResult(
                        f"dist2-offdiag-family[{side}]", True, count <= 6,
                        f"{count} pairs vs limit 6",
                    )
                )
                checks.append(CheckResult(f"dist2-offdiag-new[{side}]", False, True))
            else:
                fresh = len(even_members(side) - omega[(side, 0)])
                checks.append(CheckResult(f"dist2-offdiag-family[{side}]", False, True))
                checks.append(
                    CheckResult(
                        f"dist2-offdiag-new[{side}]", True, fresh <= 6,
                        f"{fresh} new members vs limit 6",
                    )
                )
        if not shifted["L"] and not shifted["R"]:
            expected_core = 2 * (1 + (q - 1) * (n - 1)) - q
            core = len(omega_all[0])
            checks.append(
                CheckResult(
                    "adjacent-swap-core-size", True, core == expected_core,
                    f"core {core} vs expected {expected_core}",
                )
            )
            fresh = len(omega_all[2] - omega_all[0])
            limit = 2 * n - 6 - kronecker_q2(q)
            checks.append(
                CheckResult(
                    "adjacent-swap-new", True, fresh <= limit,
                    f"{fresh} new members vs limit {limit}",
                )
            )
        else:
            checks.append(CheckResult("adjacent-swap-core-size", False, True))
            checks.append(CheckResult("adjacent-swap-new", False, True))
    else:
        for side in ("L", "R"):
            if not shifted[side]:
                fresh = len(omega[(side, 2)] - omega[(side, 0)])
                checks.append(
                    CheckResult(
                        f"dist2-new-d3[{side}]", True, fresh <= 8,
                        f"{fresh} new members vs limit 8",
                    )
                )
                checks.append(CheckResult(f"dist2-family-d3[{side}]", False, True))
            else:
                count = len(enum.side_level(side, 2))
                checks.append(CheckResult(f"dist2-new-d3[{side}]", False, True))
                checks.append(
                    CheckResult(
                        f"dist2-family-d3[{side}]", True, count <= 8,
                        f"{count} pairs vs limit 8",
                    )
                )
    return checks
