"""Tests for the scale poset and its amalgamation."""

import pytest

from app.models import ScaleCondition, Truncation
from app.services import poset_core
from app.services.scale_poset import (
    amalgamate,
    forcing_clause_holds,
    ll_check,
    meet,
    pad_to,
    restrict,
    scale_leq,
)
from app.services.verification import amalgamation_sweep, regularity_sweep
from app.utils.errors import AmalgamationPreconditionError, InvalidConditionError

S = ScaleCondition.of
EMPTY = ScaleCondition.empty()


class TestScaleOrder:
    def test_empty_is_top(self):
        assert scale_leq(EMPTY, S({0: (2, 5), 1: (3, 4)}))

    def test_decreasing_new_column_rejected(self):
        assert not scale_leq(S({0: (2,), 1: (3,)}), S({0: (2, 5), 1: (3, 4)}))

    def test_equal_new_column_accepted(self):
        assert scale_leq(S({0: (2,), 1: (3,)}), S({0: (2, 5), 1: (3, 5)}))

    def test_old_columns_unconstrained(self):
        # 3 > 2 at column 0 is decided by p0 itself
        assert scale_leq(S({0: (3,), 1: (2,)}), S({0: (3, 1), 1: (2, 1)}))

    def test_new_indices_unconstrained(self):
        assert scale_leq(S({1: (3,)}), S({0: (9, 9), 1: (3, 0)}))


class TestRestrict:
    def test_filter(self):
        assert restrict(S({0: (2,), 1: (3,)}), {0}) == S({0: (2,)})

    def test_identity(self):
        p = S({0: (2,), 1: (3,)})
        assert restrict(p, p.domain) == p

    def test_disjoint_is_canonical_empty(self):
        result = restrict(S({1: (3,)}), {0})
        assert result == EMPTY
        assert result.n == 0

    def test_restriction_is_a_reduction_under_bounded_search(self):
        report = regularity_sweep("scale", Truncation((0, 1), 1, 2), sub_indices=(0,), bounded_search=True)
        assert report.passed, report.failures
        assert report.notes["truncation relative"]


class TestAmalgamate:
    def test_copies_the_largest_smaller_index(self):
        p0 = S({0: (2,), 1: (3,)})
        p2 = S({0: (2, 5)})
        p3 = amalgamate(p0, {0}, p2)
        assert p3 == S({0: (2, 5), 1: (3, 5)})
        assert scale_leq(p0, p3) and scale_leq(p2, p3)

    def test_fills_with_zero_without_smaller_index(self):
        p0 = S({1: (3,)})
        p2 = S({0: (4, 4)})
        p3 = amalgamate(p0, {0}, p2)
        assert p3 == S({0: (4, 4), 1: (3, 0)})
        assert scale_leq(p0, p3) and scale_leq(p2, p3)

    def test_all_tops(self):
        assert amalgamate(EMPTY, set(), EMPTY) == EMPTY

    def test_empty_p2_returns_p0(self):
        p0 = S({1: (3, 3)})
        assert amalgamate(p0, {0}, EMPTY) == p0

    def test_short_p2_rejected(self):
        with pytest.raises(AmalgamationPreconditionError) as excinfo:
            amalgamate(S({1: (3, 3)}), {0}, S({0: (4,)}))
        assert "long" in excinfo.value.clause

    def test_p2_not_below_restriction_rejected(self):
        with pytest.raises(AmalgamationPreconditionError) as excinfo:
            amalgamate(S({0: (2,)}), {0}, S({0: (3, 3)}))
        assert "strengthen" in excinfo.value.clause

    def test_p2_outside_j_rejected(self):
        with pytest.raises(AmalgamationPreconditionError):
            amalgamate(S({0: (2,)}), {0}, S({0: (2, 1), 4: (0, 0)}))

    def test_agrees_with_meet(self):
        p0 = S({0: (2,), 1: (3,), 2: (1,)})
        p2 = S({0: (2, 5, 6), 2: (1, 7, 7)})
        assert amalgamate(p0, {0, 2}, p2) == meet(p0, p2)

    def test_small_exhaustive_sweep(self):
        [report] = amalgamation_sweep("scale", Truncation((0, 1), 2, 2))
        assert report.passed, report.failures
        assert report.checked > 100


class TestPadTo:
    def test_pads_with_monotone_columns(self):
        p = S({0: (2,), 1: (3,)})
        padded = pad_to(p, 3, {0, 1})
        assert padded.n == 3
        assert scale_leq(p, padded)

    def test_pads_empty_with_smallest_index(self):
        assert pad_to(EMPTY, 2, {2, 1}) == S({1: (0, 0)})

    def test_already_long_enough(self):
        p = S({0: (2, 2)})
        assert pad_to(p, 1, {0}) is p

    def test_empty_without_indices(self):
        with pytest.raises(InvalidConditionError):
            pad_to(EMPTY, 1)


class TestLlCheck:
    def test_strict_everywhere(self):
        assert ll_check((0, 0, 0), (1, 1, 1), 0)

    def test_exception_below_threshold_needs_a_strict_point(self):
        assert not ll_check((2, 0), (1, 0), 1)

    def test_equal_fragments(self):
        assert not ll_check((1, 1), (1, 1), 0)

    def test_threshold_allows_early_exceptions(self):
        assert ll_check((5, 0, 1), (1, 0, 2), 1)

    def test_unequal_lengths(self):
        with pytest.raises(InvalidConditionError):
            ll_check((1,), (1, 2), 0)


class TestForcingClause:
    def test_clause_holds_below(self):
        p = S({0: (2,), 1: (3,)})
        assert forcing_clause_holds(p, S({0: (2, 5, 6), 1: (3, 5, 9)}))

    def test_exhaustive_small(self):
        t = Truncation((0, 1), 2, 2)
        poset = poset_core.get_poset("scale")
        for p in poset_core.enumerate_universe(poset, t):
            for q in poset.strengthenings(p, t):
                assert forcing_clause_holds(p, q)
                for beta in p.domain:
                    for alpha in p.domain:
                        if beta < alpha:
                            assert all(q[beta][i] <= q[alpha][i] for i in range(p.n, q.n))
