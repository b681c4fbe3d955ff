import pytest
from hypothesis import given, settings

from delsub import (
    BallSpec,
    BudgetExceededError,
    Sequence,
    ball_intersection,
    delete,
    deletion_ball,
    ds_ball,
    lambda_enumerate,
    runs,
    sub_intersection_size,
    substitution_ball,
    substitution_ball_size,
)
from delsub.balls import ds11_packed

from helpers import all_words, sequences


def seq(text, q=2):
    return Sequence.parse(text, q)


def naive_ds11(x: Sequence) -> set:
    """Independent (1,1)-ball: nested loops, no vectorization."""
    out = set()
    n = len(x)
    for j in range(1, n + 1):
        w = delete(x, j).symbols
        out.add(w)
        for p in range(n - 1):
            for a in range(x.q):
                out.add(w[:p] + (a,) + w[p + 1 :])
    return out


class TestBallSpec:
    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            BallSpec(-1, 0)
        with pytest.raises(ValueError):
            BallSpec(0, -1)


class TestSubstitutionBall:
    def test_radius_one_binary(self):
        ball = substitution_ball(seq("01010111"), 1)
        assert len(ball) == 9  # 1 + (q-1)n with q=2, n=8

    def test_zero_budget(self):
        x = seq("0101")
        assert set(substitution_ball(x, 0)) == {x}

    def test_radius_one_ternary(self):
        ball = substitution_ball(seq("01201", q=3), 1)
        assert len(ball) == 11  # 1 + 2*5

    def test_closed_form_exhaustive(self):
        for q, n in [(2, 6), (3, 4)]:
            for x in all_words(q, n):
                for s in range(3):
                    assert len(substitution_ball(x, s)) == substitution_ball_size(n, q, s)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            substitution_ball(Sequence((0,) * 30, 4), 5, budget=1000)


class TestDeletionBall:
    def test_constant_word(self):
        assert len(deletion_ball(Sequence((0,) * 6, 2), 1)) == 1

    def test_two_symbols(self):
        assert set(deletion_ball(seq("01"), 1)) == {seq("0"), seq("1")}

    def test_size_equals_run_count_exhaustive(self):
        for x in all_words(2, 6):
            assert len(deletion_ball(x, 1)) == runs(x).count

    def test_invalid_count(self):
        with pytest.raises(ValueError):
            deletion_ball(seq("01"), 2)
        with pytest.raises(ValueError):
            deletion_ball(seq("01"), 0)


class TestDsBall:
    def test_reduces_to_deletion_ball(self):
        assert ds_ball(seq("01"), BallSpec(1, 0)) == deletion_ball(seq("01"), 1)

    def test_union_cap_and_exact_enumeration(self):
        x = seq("01010111")
        ball = ds_ball(x, BallSpec(1, 1))
        assert len(ball) <= 8 * (1 + 7) == 64
        assert set(m.symbols for m in ball) == naive_ds11(x)

    def test_contains_pure_deletions(self):
        x = seq("01201", q=3)
        assert ds_ball(x, BallSpec(1, 0)).issubset(ds_ball(x, BallSpec(1, 1)))

    def test_precondition(self):
        with pytest.raises(ValueError):
            ds_ball(seq("01"), BallSpec(1, 1))

    @given(sequences(q=3, min_n=3, max_n=7))
    @settings(max_examples=40)
    def test_union_identity(self, x):
        # the (1,1)-ball is the union of radius-1 substitution balls of
        # the single-deletion results
        expected = set()
        for j in range(1, len(x) + 1):
            expected |= {m.symbols for m in substitution_ball(delete(x, j), 1)}
        assert {m.symbols for m in ds_ball(x, BallSpec(1, 1))} == expected

    def test_budget_error(self):
        with pytest.raises(BudgetExceededError):
            ds_ball(Sequence((0, 1) * 11, 2), BallSpec(2, 2), budget=100)


class TestPackedKernel:
    @given(sequences(q=4, min_n=3, max_n=9))
    @settings(max_examples=40)
    def test_matches_generic_materialization(self, x):
        packed = {tuple(b) for b in ds11_packed(x.symbols, x.q)}
        assert packed == {m.symbols for m in ds_ball(x, BallSpec(1, 1))}


class TestBallIntersection:
    def test_self_intersection(self):
        x = seq("010011")
        assert ball_intersection(x, x, BallSpec(1, 1)) == ds_ball(x, BallSpec(1, 1))

    def test_worked_example_member(self):
        inter = ball_intersection(seq("01010111"), seq("01101011"), BallSpec(1, 1))
        assert seq("0100101") in inter
        assert seq("0110111") in inter

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            ball_intersection(seq("0101"), seq("010"), BallSpec(1, 1))

    @given(sequences(q=2, min_n=4, max_n=7))
    @settings(max_examples=30)
    def test_union_over_deleted_pairs(self, x):
        # the intersection is the union of B1(z) & B1(z') over all
        # deleted pairs at Hamming distance <= 2
        y = Sequence(tuple(reversed(x.symbols)), x.q)
        expected = set()
        for pair in lambda_enumerate(x, y).pairs():
            z = Sequence(pair[0], x.q)
            zp = Sequence(pair[1], x.q)
            common = substitution_ball(z, 1) & substitution_ball(zp, 1)
            expected |= {m.symbols for m in common}
        got = {m.symbols for m in ball_intersection(x, y, BallSpec(1, 1))}
        assert got == expected


class TestSubIntersectionSize:
    def test_remark_values(self):
        x = Sequence((0, 1, 2, 3, 0), 4)
        y_d1 = Sequence((1, 1, 2, 3, 0), 4)
        assert sub_intersection_size(x, y_d1) == 4
        y_d2 = Sequence((1, 2, 2, 3, 0), 4)
        assert sub_intersection_size(x, y_d2) == 2
        y_d5 = Sequence((1, 2, 3, 0, 1), 4)
        assert sub_intersection_size(x, y_d5) == 0

    def test_identical_words_give_full_ball(self):
        x = seq("01010")
        assert sub_intersection_size(x, x) == 1 + (2 - 1) * 5

    def test_against_brute_force_sample(self):
        for x in all_words(2, 5):
            for y in all_words(2, 5):
                brute = len(substitution_ball(x, 1) & substitution_ball(y, 1))
                assert sub_intersection_size(x, y) == brute
