"""Tests for pseudo-generic filters and derived function families."""

import json

import pytest

from app.models import (
    CohenCondition,
    DenseSet,
    DerivedFamily,
    EvDiffCondition,
    FilterTrace,
    GrowthPolicy,
    PosetKind,
    ScaleCondition,
    SideMode,
    Truncation,
)
from app.services import generic_sim, poset_core
from app.services.generic_sim import (
    build_filter,
    chain_recovered,
    check_family,
    derive_family,
    index_in_domain,
    length_at_least,
    reconstruct_filter,
    write_trace_log,
)
from app.services.verification import simulation_sweep
from app.utils.errors import DenseSetViolationError, UnsupportedModeError

E = EvDiffCondition.of


def assert_strictly_descending(kind, chain):
    poset = poset_core.get_poset(kind)
    for p, q in zip(chain, chain[1:]):
        assert poset.leq(p, q) and p != q


class TestBuildFilter:
    def test_length_and_index_sets(self):
        sets = [length_at_least("evdiff", 3), index_in_domain("evdiff", 0)]
        trace = build_filter("evdiff", GrowthPolicy(), sets, steps=6, seed=1)
        assert trace.final.n >= 3
        assert 0 in trace.final.domain
        assert [record.name for record in trace.met] == ["length >= 3", "index 0 in domain"]
        assert_strictly_descending("evdiff", trace.chain)

    def test_scale_chain_keeps_columns_ordered(self):
        sets = [index_in_domain("scale", 0), index_in_domain("scale", 1), length_at_least("scale", 2)]
        trace = build_filter("scale", GrowthPolicy(), sets, steps=10, seed=7)
        final = trace.final
        assert {0, 1} <= set(final.domain) and final.n >= 2
        assert_strictly_descending("scale", trace.chain)
        assert check_family(derive_family(trace), SideMode.SCALE).passed

    def test_no_sets_no_steps(self):
        trace = build_filter("cohen", GrowthPolicy(), [], steps=0, seed=0)
        assert trace.chain == (CohenCondition.of({}),)
        assert trace.met == ()

    def test_deterministic_given_seed(self):
        sets = generic_sim.standard_dense_sets("evdiff")
        first = build_filter("evdiff", GrowthPolicy(), sets, steps=12, seed=3)
        second = build_filter("evdiff", GrowthPolicy(), sets, steps=12, seed=3)
        assert first.chain == second.chain

    def test_broken_dense_set(self):
        broken = DenseSet("broken", lambda p: False, lambda p, rng: p)
        with pytest.raises(DenseSetViolationError) as excinfo:
            build_filter("scale", GrowthPolicy(), [broken], steps=1, seed=0)
        assert excinfo.value.name == "broken"

    def test_product_chain_stays_in_d(self):
        trace = build_filter("r", GrowthPolicy(), generic_sim.standard_dense_sets("r"), steps=8, seed=2)
        assert_strictly_descending("r", trace.chain)
        assert chain_recovered(trace)


class TestDeriveFamily:
    def test_single_condition(self):
        trace = FilterTrace(PosetKind.EVDIFF, (E({0: (2, 5)}),))
        assert derive_family(trace).fragments == {0: (2, 5)}

    def test_pair_threshold(self):
        chain = (EvDiffCondition.empty(), E({0: (2,)}), E({0: (2, 5), 1: (3, 4)}))
        family = derive_family(FilterTrace(PosetKind.EVDIFF, chain))
        assert family.fragments == {0: (2, 5), 1: (3, 4)}
        assert family.thresholds == {0: 1, 1: 2, (0, 1): 2}

    def test_empty_chain(self):
        family = derive_family(FilterTrace(PosetKind.EVDIFF, ()))
        assert family.fragments == {} and family.thresholds == {}

    def test_cohen_has_no_sequences(self):
        trace = FilterTrace(PosetKind.COHEN, (CohenCondition.of({0: 1}),))
        with pytest.raises(UnsupportedModeError):
            derive_family(trace)


class TestCheckFamily:
    def test_evdiff_collision(self):
        family = DerivedFamily({0: (9, 1), 1: (0, 1)}, {(0, 1): 1})
        report = check_family(family, SideMode.EVDIFF)
        assert not report.passed
        assert report.violations == [(0, 1, 1)]

    def test_collision_before_threshold_is_allowed(self):
        family = DerivedFamily({0: (1, 2), 1: (1, 3)}, {(0, 1): 1})
        assert check_family(family, SideMode.EVDIFF).passed

    def test_single_index(self):
        report = check_family(DerivedFamily({0: (1, 1)}, {0: 1}), SideMode.EVDIFF)
        assert report.passed and report.pairs_checked == 0

    def test_scale_order_and_strictness(self):
        ordered = check_family(DerivedFamily({0: (1, 2), 1: (1, 3)}, {(0, 1): 0}), SideMode.SCALE)
        assert ordered.passed
        assert ordered.strict_observed == {(0, 1): True}
        reversed_pair = check_family(DerivedFamily({0: (2,), 1: (1,)}, {(0, 1): 0}), SideMode.SCALE)
        assert reversed_pair.violations == [(0, 1, 0)]


class TestReconstructFilter:
    def test_empty_family(self):
        universe = poset_core.enumerate_universe("evdiff", Truncation((0, 1), 1, 2))
        assert reconstruct_filter(DerivedFamily(), universe, SideMode.EVDIFF) == [EvDiffCondition.empty()]

    def test_single_fragment(self):
        universe = poset_core.enumerate_universe("evdiff", Truncation((0, 1), 1, 3))
        family = DerivedFamily({0: (2,)}, {0: 1})
        assert reconstruct_filter(family, universe, SideMode.EVDIFF) == [
            EvDiffCondition.empty(),
            E({0: (2,)}),
        ]

    def test_scale_members_respect_order(self):
        family = DerivedFamily({0: (1, 0), 1: (0, 2)}, {})
        universe = poset_core.enumerate_universe("scale", Truncation((0, 1), 2, 3))
        members = reconstruct_filter(family, universe, SideMode.SCALE)
        assert ScaleCondition.of({0: (1,), 1: (0,)}) in members
        assert ScaleCondition.of({0: (1, 0), 1: (0, 2)}) in members

    @pytest.mark.parametrize("kind", ["scale", "evdiff"])
    def test_chain_recovered(self, kind):
        sets = generic_sim.standard_dense_sets(kind)
        for seed in range(1, 21):
            trace = build_filter(kind, GrowthPolicy(), sets, steps=20, seed=seed)
            assert chain_recovered(trace), seed


class TestSimulationSweep:
    @pytest.mark.parametrize("kind", ["cohen", "scale", "evdiff", "r"])
    def test_twenty_seeds(self, kind):
        report = simulation_sweep(kind, range(1, 21), steps=20)
        assert report.passed, report.failures
        assert report.checked == 20


class TestTraceLog:
    def test_writes_one_record_per_step(self, tmp_path):
        trace = build_filter("evdiff", GrowthPolicy(), generic_sim.standard_dense_sets("evdiff"), 6, seed=5)
        path = tmp_path / "traces" / "seed-5.jsonl"
        write_trace_log(trace, str(path))

        records = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
        assert len(records) == len(trace.chain)
        assert records[0] == {"step": 0, "condition": {"kind": "evdiff", "n": 0, "entries": {}}, "met": []}
        met = [name for record in records for name in record["met"]]
        assert sorted(met) == sorted(record.name for record in trace.met)
