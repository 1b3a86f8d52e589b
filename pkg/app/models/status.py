"""
Status Models for the forcing workbench

This module defines enum classes for kinds and status values used across the workbench.
"""

import enum


class PosetKind(enum.Enum):
    """
    Enum for the poset kinds the workbench implements.
    Values double as the "kind" tag of the canonical JSON form.
    """

    COHEN = "cohen"
    SCALE = "scale"
    EVDIFF = "evdiff"
    PRODUCT = "r"


class SideMode(enum.Enum):
    """Side-condition clause used by residue conditions and derived families."""

    EVDIFF = "evdiff"
    SCALE = "scale"


class CheckStatus(enum.Enum):
    """Outcome of a property suite."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
