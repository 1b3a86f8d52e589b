"""
Models package for the forcing workbench.

This package contains the immutable value types used by the services.
"""

from app.models.condition import CohenCondition, EvDiffCondition, ScaleCondition, SequenceCondition
from app.models.iteration import Environment, FlatIterCondition, QCondition
from app.models.product import DCondition, RCondition
from app.models.status import CheckStatus, PosetKind, SideMode
from app.models.trace import DenseSet, DerivedFamily, FamilyReport, FilterTrace, GrowthPolicy, MetRecord
from app.models.truncation import (
    AntichainReport,
    PredensityFailure,
    PredensityWitness,
    PropertyReport,
    Truncation,
)

# Import all models here so they are available through the models package
__all__ = [
    "AntichainReport",
    "CheckStatus",
    "CohenCondition",
    "DCondition",
    "DenseSet",
    "DerivedFamily",
    "Environment",
    "EvDiffCondition",
    "FamilyReport",
    "FilterTrace",
    "FlatIterCondition",
    "GrowthPolicy",
    "MetRecord",
    "PosetKind",
    "PredensityFailure",
    "PredensityWitness",
    "PropertyReport",
    "QCondition",
    "RCondition",
    "ScaleCondition",
    "SequenceCondition",
    "SideMode",
    "Truncation",
]
