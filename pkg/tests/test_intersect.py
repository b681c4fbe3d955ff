import json

import pytest
from hypothesis import given, settings

from delsub import (
    BallSpec,
    Sequence,
    ball_intersection,
    bound_applicable,
    claims_lambda,
    constant_regime_bound,
    coverage_bound,
    delete,
    diff_profile,
    ds_ball,
    extremal_pair,
    hamming,
    intersection_size_fast,
    lambda_enumerate,
    levenshtein,
    min_valid_length,
    omega_groups,
    verify_claims,
)
from delsub.intersect import ALL_GROUP_KEYS, group_label

from helpers import all_words, sequence_pairs


def seq(text, q=2):
    return Sequence.parse(text, q)


WORKED_X = seq("01010111")
WORKED_Y = seq("01101011")


class TestBoundHelpers:
    def test_kronecker_in_bound(self):
        assert coverage_bound(29, 2) == 4 * 29 - 6 - 2 - 1  # 107
        assert coverage_bound(17, 3) == 2 * 3 * 17 - 9 - 2  # 91

    def test_min_valid_length(self):
        assert min_valid_length(2) == 29
        assert min_valid_length(3) == 17
        assert min_valid_length(4) == 14
        assert min_valid_length(5) == 14

    def test_applicability(self):
        assert bound_applicable(29, 2, 2)
        assert not bound_applicable(28, 2, 2)
        assert not bound_applicable(29, 2, 1)

    def test_constant_regime(self):
        assert constant_regime_bound(2) == 40
        assert constant_regime_bound(4) == 48


class TestExtremalPair:
    def test_q3_form(self):
        x, y = extremal_pair(3, 17)
        assert str(x) == "01201" + "01" * 6
        assert str(y) == "10201" + "01" * 6
        assert hamming(x, y) == 2

    def test_q2_form(self):
        x, y = extremal_pair(2, 6)
        assert (str(x), str(y)) == ("010101", "100101")

    def test_minimum_lengths(self):
        with pytest.raises(ValueError):
            extremal_pair(3, 4)
        with pytest.raises(ValueError):
            extremal_pair(2, 3)


class TestClaimsLambda:
    def test_rejects_small_distance(self):
        with pytest.raises(ValueError):
            claims_lambda(seq("0101"), seq("0111"))

    def test_collapsed_group_when_no_shift(self):
        # no shifted mismatch inside the window: the distance-0 group is
        # the single collapsed pair, and the two deletions really agree
        x, y = seq("00110"), seq("01100")
        p = diff_profile(x, y)
        assert p.t_count("L", p.s[0] + 1, p.s[-1]) == 0
        dec = claims_lambda(x, y)
        (pair,) = dec.group("L", 0)
        assert pair == (delete(x, p.s[0]).symbols, delete(y, p.s[-1]).symbols)
        assert pair[0] == pair[1]

    def test_empty_group_when_shifted(self):
        x, y = seq("0110"), seq("1001")
        p = diff_profile(x, y)
        assert p.t_count("L", p.s[0] + 1, p.s[-1]) >= 1
        assert claims_lambda(x, y).group("L", 0) == frozenset()

    def test_matches_enumeration_exhaustive(self):
        for q, n in [(2, 6), (3, 4)]:
            for x in all_words(q, n):
                for y in all_words(q, n):
                    if hamming(x, y) < 2:
                        continue
                    assert claims_lambda(x, y).groups == lambda_enumerate(x, y).groups

    @given(sequence_pairs(q=4, min_n=5, max_n=12))
    @settings(max_examples=150)
    def test_matches_enumeration_random(self, pair):
        x, y = pair
        if hamming(x, y) < 2:
            return
        assert claims_lambda(x, y).groups == lambda_enumerate(x, y).groups


class TestOmegaGroups:
    def test_worked_distance2_members(self):
        dec = lambda_enumerate(WORKED_X, WORKED_Y)
        groups = omega_groups(dec, WORKED_X, WORKED_Y)
        target = (delete(WORKED_X, 4).symbols, delete(WORKED_Y, 7).symbols)
        hit = [
            g for g in groups
            if g.ell == 2 and g.side == "L" and target in dec.group("L", 2, g.case_index)
        ]
        assert hit
        members = set()
        for g in hit:
            members |= {m.symbols for m in g.members}
        assert seq("0100101").symbols in members
        assert seq("0110111").symbols in members

    def test_distance1_groups_have_q_members_per_pair(self):
        x, y = seq("00110"), seq("01100")
        dec = lambda_enumerate(x, y)
        for g in omega_groups(dec, x, y):
            if g.ell == 1:
                assert len(g.members) == 2 * len(dec.group(g.side, 1, g.case_index))

    def test_distance0_group_is_full_ball(self):
        x, y = seq("00110"), seq("01100")
        dec = lambda_enumerate(x, y)
        for g in omega_groups(dec, x, y):
            if g.ell == 0:
                assert len(g.members) == 1 + (x.q - 1) * (len(x) - 1)

    def test_absorption_into_collapsed_ball(self):
        # when the left window carries no shifted mismatch, any pair whose
        # first word is the collapsed deletion (or second word its twin)
        # contributes nothing outside the distance-0 members
        from delsub import substitution_ball

        x, y = seq("0011010"), seq("0110010")
        p = diff_profile(x, y)
        assert p.t_count("L", p.s[0] + 1, p.s[-1]) == 0
        dec = lambda_enumerate(x, y)
        groups = {(g.side, g.ell, g.case_index): g for g in omega_groups(dec, x, y)}
        omega0 = {m.symbols for m in groups[("L", 0, None)].members}
        collapsed_x = delete(x, p.s[0])
        collapsed_y = delete(y, p.s[-1])
        checked = 0
        for key in dec.groups:
            if key[1] == 0:
                continue
            for z, zp in dec.group(*key):
                if z == collapsed_x.symbols or zp == collapsed_y.symbols:
                    zs = Sequence(z, x.q)
                    zps = Sequence(zp, x.q)
                    common = substitution_ball(zs, 1) & substitution_ball(zps, 1)
                    assert {m.symbols for m in common} <= omega0
                    checked += 1
        assert checked > 0

    def test_provenance_checked(self):
        dec = lambda_enumerate(WORKED_X, WORKED_Y)
        with pytest.raises(ValueError):
            omega_groups(dec, WORKED_Y, WORKED_X)


class TestIntersectionSizeFast:
    def test_worked_pair(self):
        report = intersection_size_fast(WORKED_X, WORKED_Y)
        oracle = len(ball_intersection(WORKED_X, WORKED_Y, BallSpec(1, 1)))
        assert report.size == oracle
        assert report.method == "structural"

    def test_extremal_q3(self):
        x, y = extremal_pair(3, 17)
        report = intersection_size_fast(x, y)
        assert report.size == 91
        assert report.bound == 91
        assert report.bound_applicable

    def test_extremal_q2(self):
        x, y = extremal_pair(2, 29)
        assert intersection_size_fast(x, y).size == 4 * 29 - 9 == 107

    def test_distance_one_falls_back_to_oracle(self):
        x, y = seq("01010"), seq("01011")
        report = intersection_size_fast(x, y)
        assert report.method == "oracle"
        assert report.size == len(ball_intersection(x, y, BallSpec(1, 1)))
        assert report.group_sizes == {}

    def test_self_intersection(self):
        x = seq("010011")
        report = intersection_size_fast(x, x)
        assert report.d == 0
        assert report.size == len(ds_ball(x, BallSpec(1, 1)))

    def test_size_at_most_group_total(self):
        report = intersection_size_fast(WORKED_X, WORKED_Y)
        assert report.size <= sum(report.group_sizes.values())

    def test_monotone_floor(self):
        # with a collapsed pair present the full small ball is included
        x, y = seq("00110"), seq("01100")
        report = intersection_size_fast(x, y)
        assert report.omega0_size > 0
        assert report.size >= report.omega0_size

    def test_json_roundtrip(self):
        report = intersection_size_fast(WORKED_X, WORKED_Y)
        payload = json.loads(report.to_json())
        assert payload["size"] == report.size
        assert set(payload) == {
            "n", "q", "d", "size", "method", "bound", "bound_applicable",
            "group_sizes", "omega0_size", "omega1_size", "omega2_size",
            "omega1_minus_omega0", "omega2_minus_omega0",
        }

    @given(sequence_pairs(q=3, min_n=3, max_n=8))
    @settings(max_examples=100)
    def test_oracle_equivalence_random(self, pair):
        x, y = pair
        assert intersection_size_fast(x, y).size == len(
            ball_intersection(x, y, BallSpec(1, 1))
        )


class TestTightFamilies:
    def test_q3_family_meets_lower_bound(self):
        for n in range(5, 26):
            x, y = extremal_pair(3, n)
            assert intersection_size_fast(x, y).size >= 2 * 3 * n - 9 - 2

    def test_q2_family_meets_lower_bound(self):
        for n in range(4, 26):
            x, y = extremal_pair(2, n)
            assert intersection_size_fast(x, y).size >= 4 * n - 9

    def test_bound_holds_at_and_past_threshold(self):
        for q in (2, 3, 4):
            for n in range(min_valid_length(q), min_valid_length(q) + 4):
                x, y = extremal_pair(q, n)
                assert intersection_size_fast(x, y).size == coverage_bound(n, q)


class TestVerifyClaims:
    def test_needs_distance_two(self):
        with pytest.raises(ValueError):
            verify_claims(seq("0101"), seq("0101"))

    def test_worked_pair_all_pass(self):
        report = verify_claims(WORKED_X, WORKED_Y)
        assert report.all_passed
        assert len(report.group_checks) == len(ALL_GROUP_KEYS) == 20

    def test_exhaustive_small_domain(self):
        for x in all_words(2, 6):
            for y in all_words(2, 6):
                if hamming(x, y) < 2:
                    continue
                report = verify_claims(x, y)
                assert report.all_passed, (x, y, report.failures())

    def test_adjacent_swap_core_size(self):
        # u a b v / u b a v with no shifted mismatch in the window: the
        # distance-0 members number 2(1+(q-1)(n-1)) - q
        q, n = 3, 9
        x = Sequence((2, 0, 1, 2, 2, 0, 1, 2, 0), q)
        y = Sequence((2, 0, 1, 2, 0, 2, 1, 2, 0), q)  # swap at positions 5,6
        p = diff_profile(x, y)
        assert p.d == 2 and p.s[1] == p.s[0] + 1
        assert p.t_count("L", p.s[0] + 1, p.s[1]) == 0
        assert p.t_count("R", p.s[0] + 1, p.s[1]) == 0
        report = intersection_size_fast(x, y)
        assert report.omega0_size == 2 * (1 + (q - 1) * (n - 1)) - q
        checks = {c.name: c for c in verify_claims(x, y).fact_checks}
        assert checks["adjacent-swap-core-size"].applicable
        assert checks["adjacent-swap-core-size"].passed

    def test_constant_regime_bound_on_shifted_pairs(self):
        # both windows shifted and Hamming distance >= 3: size <= 4q + 32
        import random

        rng = random.Random(11)
        q, n = 4, min_valid_length(4)
        checked = 0
        while checked < 50:
            xs = tuple(rng.randrange(q) for _ in range(n))
            ys = list(xs)
            for pos in rng.sample(range(n), 4):
                ys[pos] = (xs[pos] + 1 + rng.randrange(q - 1)) % q
            x, y = Sequence(xs, q), Sequence(tuple(ys), q)
            if hamming(x, y) < 3 or levenshtein(x, y) < 2:
                continue
            assert intersection_size_fast(x, y).size <= constant_regime_bound(q)
            checked += 1

    def test_group_labels(self):
        assert group_label(("L", 0, None)) == "L:0"
        assert group_label(("R", 2, 5)) == "R:2.5"
