"""
Exhaustive and large randomized sweeps at full size.

Run with: pytest --runslow tests/functional
"""

import pytest

from app.models import SideMode, Truncation
from app.services import verification

pytestmark = pytest.mark.slow


def assert_passed(*reports):
    for report in reports:
        assert report.passed, (report.name, report.failures)
        assert report.checked > 0, report.name


class TestSequencePosets:
    def test_scale_amalgamation(self):
        assert_passed(*verification.amalgamation_sweep("scale", Truncation((0, 1, 2), 2, 3), p2_max_len=3))

    def test_evdiff_amalgamation(self):
        assert_passed(*verification.amalgamation_sweep("evdiff", Truncation((0, 1, 2), 2, 4), p2_max_len=3))

    @pytest.mark.parametrize("kind", ["cohen", "scale", "evdiff"])
    def test_order_axioms(self, kind):
        assert_passed(verification.order_axioms(kind, Truncation((0, 1, 2), 2, 2)))

    def test_product_order_axioms(self):
        assert_passed(verification.order_axioms("r", Truncation((0, 1), 1, 2)))

    @pytest.mark.parametrize("kind", ["scale", "evdiff"])
    def test_forcing_clause(self, kind):
        assert_passed(verification.forcing_clause_sweep(kind, Truncation((0, 1, 2), 2, 2)))

    def test_predensity_of_restricted_antichains(self):
        report = verification.regularity_sweep(
            "scale", Truncation((0, 1), 2, 2), sub_indices=(0,), bounded_search=True
        )
        assert_passed(report)
        assert report.notes["antichains"] > 1


class TestEmbedding:
    def test_monotonicity_exhaustive(self):
        assert_passed(verification.monotonicity_exhaustive(Truncation((0, 1), 2, 3)))

    def test_monotonicity_random(self):
        assert_passed(verification.monotonicity_random(10_000, seed=1))

    def test_lifting_random(self):
        report = verification.lifting_random(10_000, seed=2)
        assert_passed(report)
        assert report.checked == 10_000

    def test_densify_random(self):
        assert_passed(verification.densify_random(10_000, seed=3))


class TestIteration:
    def test_separativity(self):
        assert_passed(verification.separativity_sweep(Truncation((0, 1, 2), 2, 4)))

    def test_separativity_over_sampled_tables(self):
        environments = verification.sampled_environments((0, 1, 2), 4, samples=40, seed=5)
        assert len(environments) == 1 + 64 + 40
        assert_passed(verification.separativity_sweep(Truncation((0, 1, 2), 2, 4), environments))

    def test_compatibility_over_sampled_tables(self):
        environments = verification.sampled_environments((0, 1, 2), 2, samples=20, seed=6)
        t = Truncation((0, 1, 2), 2, 2)
        assert_passed(verification.compatibility_oracle_sweep(t, environments=environments))

    @pytest.mark.parametrize("mode", [SideMode.EVDIFF, SideMode.SCALE])
    def test_flat_isomorphism(self, mode):
        report = verification.flat_isomorphism_sweep(Truncation((0, 1, 2), 2, 3), mode)
        assert_passed(report)
        assert report.notes["injective"]

    def test_non_density_witness(self):
        assert_passed(verification.non_density_random(Truncation((0, 1, 2), 2, 4), samples=10_000))


class TestSimulation:
    @pytest.mark.parametrize("kind", ["scale", "evdiff", "r"])
    def test_hundred_seeds(self, kind):
        report = verification.simulation_sweep(kind, range(1, 101), steps=50)
        assert_passed(report)
        assert report.checked == 100
