"""Tests for the product poset, its dense set D, projection and lifting."""

import random

import pytest

from app.models import DCondition, EvDiffCondition, RCondition, Truncation
from app.models.product import d_violation
from app.services.embed_product import (
    ProductPoset,
    d_ancestors,
    densify,
    enumerate_d,
    in_d,
    lift,
    naive_proj,
    proj,
    r_leq,
    random_d_condition,
    random_projection_strengthening,
    random_r_condition,
)
from app.services.evdiff_poset import evdiff_leq
from app.services.verification import monotonicity_exhaustive
from app.utils.errors import LiftPreconditionError, MalformedDError

EMPTY_D = DCondition(RCondition(), 0)
E = EvDiffCondition.of


def assert_lift_postconditions(r0, p1, r2):
    assert d_violation(r2.r, r2.n)[0] is None
    assert r_leq(r0, r2)
    assert evdiff_leq(p1, proj(r2))
    assert r2.n == p1.n + 1
    assert set(r2.r.seq_map) == set(p1.domain)


class TestRLeq:
    def test_empty_is_top(self, projection_example):
        assert r_leq(RCondition(), projection_example)

    def test_cutoffs_preserved_exactly(self):
        assert not r_leq(RCondition.of(cutoffs={0: 1}), RCondition.of(cutoffs={0: 2}))

    def test_coder_extension(self):
        assert r_leq(RCondition.of(coder={(): 0}), RCondition.of(coder={(): 0, (0,): 3}))

    def test_sequence_extension(self):
        assert r_leq(RCondition.of({0: (1,)}), RCondition.of({0: (1, 2)}))
        assert not r_leq(RCondition.of({0: (1,)}), RCondition.of({0: (2, 2)}))


class TestMembership:
    def test_empty(self):
        result = in_d(RCondition())
        assert result.member and result.n == 0

    def test_sequences_must_be_distinct(self):
        result = in_d(RCondition.of({0: (0, 0), 1: (0, 0)}, {0: 0, 1: 0}))
        assert not result
        assert "distinct" in result.clause

    def test_missing_cutoffs(self):
        assert not in_d(RCondition.of({0: (0, 0), 1: (0, 0)}))

    def test_all_clauses_hold(self):
        result = in_d(RCondition.of({0: (0,)}, {0: 0}, {(): 5, (0,): 2}))
        assert result.member and result.n == 1

    def test_coder_must_cover_prefixes_exactly(self):
        assert not in_d(RCondition.of({0: (0,)}, {0: 0}, {(): 5}))
        assert not in_d(RCondition.of({0: (0,)}, {0: 0}, {(): 5, (0,): 2, (1,): 3}))


class TestProjection:
    def test_empty(self):
        assert proj(EMPTY_D) == EvDiffCondition.empty()

    def test_two_branches(self, projection_example):
        assert proj(projection_example) == E({0: (0, 4), 1: (7, 9)})

    def test_cutoff_at_length_copies_sequence(self):
        r = DCondition.of({0: (3,)}, {0: 1}, {(): 0, (3,): 8})
        assert proj(r) == E({0: (3,)})

    def test_requires_d(self):
        with pytest.raises(MalformedDError):
            proj(RCondition.of({0: (0,)}, {0: 0}, {(): 5}))

    def test_naive_projection_collides(self, projection_example):
        # reading the coder one position early sends both sequences to the same values
        assert naive_proj(projection_example) == E({0: (0, 7), 1: (0, 7)})

    def test_monotone_on_small_truncation(self):
        report = monotonicity_exhaustive(Truncation((0, 1), 2, 2))
        assert report.passed, report.failures
        assert report.checked > 1000


class TestDensify:
    def test_empty(self):
        assert densify(RCondition()) == EMPTY_D

    def test_single_sequence(self):
        r = RCondition.of({0: (1,)})
        d = densify(r)
        assert in_d(d.r).member
        assert r_leq(r, d)
        assert d.r.cutoff_map == {0: 1}

    def test_identity_on_d(self, projection_example):
        assert densify(projection_example.r) == projection_example
        assert densify(projection_example) is projection_example

    def test_colliding_padded_sequences(self):
        r = RCondition.of({0: (1,), 1: (1, 0)})
        d = densify(r)
        assert in_d(d.r).member
        assert r_leq(r, d)
        assert d.n == 3

    def test_orphan_coder_keys_get_an_index(self):
        r = RCondition.of({0: (0,)}, {0: 0}, {(): 1, (0,): 0, (2, 2): 4})
        d = densify(r)
        assert in_d(d.r).member
        assert r_leq(r, d)
        assert (2, 2) in d.r.seq_map.values()

    def test_random_conditions(self, policy):
        rng = random.Random(5)
        for _ in range(300):
            r = random_r_condition(rng, policy)
            d = densify(r)
            assert d_violation(d.r, d.n)[0] is None, r
            assert r_leq(r, d), r


class TestLift:
    def test_empty(self):
        r2 = lift(EMPTY_D, EvDiffCondition.empty())
        assert r2.n == 1
        assert r2.r.is_empty()

    def test_empty_lift_sits_strictly_below_top(self):
        poset = ProductPoset()
        r2 = lift(EMPTY_D, EvDiffCondition.empty())
        assert r_leq(r2, EMPTY_D) and r_leq(EMPTY_D, r2)
        assert poset.leq(EMPTY_D, r2)
        assert not poset.leq(r2, EMPTY_D)

    def test_lift_along_own_projection(self, projection_example):
        p1 = proj(projection_example)
        r2 = lift(projection_example, p1)
        assert r2.n == 3
        assert_lift_postconditions(projection_example, p1, r2)
        assert evdiff_leq(proj(projection_example), proj(r2))

    def test_lift_with_new_index(self):
        r0 = DCondition.of({0: (0,)}, {0: 0}, {(): 2, (0,): 5})
        p1 = E({0: (5, 2), 1: (4, 4)})
        r2 = lift(r0, p1)
        assert_lift_postconditions(r0, p1, r2)
        assert r2.r.seq_map == {0: (0, 0, 0), 1: (4, 4, 0)}
        assert r2.r.cutoff_map == {0: 0, 1: 2}
        assert proj(r2) == E({0: (5, 2, 0), 1: (4, 4, 1)})

    def test_precondition(self):
        r0 = DCondition.of({0: (0,)}, {0: 0}, {(): 2, (0,): 5})
        with pytest.raises(LiftPreconditionError):
            lift(r0, E({0: (2, 5), 1: (4, 4)}))

    def test_random_pairs(self, policy):
        rng = random.Random(17)
        for _ in range(300):
            r0 = random_d_condition(rng, policy, steps=rng.randrange(0, 4))
            p1 = random_projection_strengthening(r0, rng, policy)
            assert_lift_postconditions(r0, p1, lift(r0, p1))


class TestDUniverse:
    def test_count_single_index(self):
        assert len(list(enumerate_d(Truncation((0,), 1, 2)))) == 17

    def test_members_are_in_d(self):
        universe = list(enumerate_d(Truncation((0, 1), 2, 2)))
        assert len(set(universe)) == len(universe)
        for r in universe:
            assert d_violation(r.r, r.n)[0] is None

    def test_ancestors(self, projection_example):
        ancestors = list(d_ancestors(projection_example))
        assert EMPTY_D in ancestors
        assert projection_example in ancestors
        for r0 in ancestors:
            assert r_leq(r0, projection_example)
