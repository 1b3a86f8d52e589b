"""
Shared fixtures for the workbench test suites.
"""

import pytest

from app.app_factory import create_app
from app.models import (
    DCondition,
    EvDiffCondition,
    GrowthPolicy,
    RCondition,
    ScaleCondition,
    Truncation,
)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full-size sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive sweeps over the acceptance truncations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def workbench():
    return create_app("testing")


@pytest.fixture
def scale():
    """Shorthand for building scale conditions: scale({0: (2,)}, 1)."""
    return ScaleCondition.of


@pytest.fixture
def evdiff():
    return EvDiffCondition.of


@pytest.fixture
def small_truncation():
    return Truncation((0, 1), max_len=2, max_val=2)


@pytest.fixture
def policy():
    return GrowthPolicy(indices=(0, 1, 2), max_val=6)


@pytest.fixture
def projection_example():
    """A member of D with n = 2 whose projection is {0: (0, 4), 1: (7, 9)}."""
    return DCondition(
        RCondition.of(
            {0: (0, 0), 1: (0, 1)},
            {0: 1, 1: 0},
            {(): 0, (0,): 7, (0, 0): 4, (0, 1): 9},
        ),
        2,
    )
