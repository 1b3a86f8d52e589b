"""
Truncation and Report Models for the forcing workbench

This module defines the finite bounds that cut an infinite poset down to an
enumerable universe, and the report objects the order-theoretic checks return.
"""

from dataclasses import dataclass, field

from app.models.status import CheckStatus
from app.utils.errors import InvalidConditionError


@dataclass(frozen=True)
class Truncation:
    """
    Finite shadow of an infinite poset.

    Attributes:
        indices (tuple): Sorted indices a condition may use
        max_len (int): Bound on the committed length n
        max_val (int): Exclusive bound on sequence entries
    """

    indices: tuple = ()
    max_len: int = 1
    max_val: int = 1

    def __post_init__(self):
        indices = tuple(sorted(set(self.indices)))
        if any(not isinstance(i, int) or i < 0 for i in indices):
            raise InvalidConditionError(f"Truncation indices must be natural numbers: {indices}")
        if self.max_len < 1:
            raise InvalidConditionError(f"max_len must be at least 1, got {self.max_len}")
        if self.max_val < 1:
            raise InvalidConditionError(f"max_val must be at least 1, got {self.max_val}")
        object.__setattr__(self, "indices", indices)

    def with_max_len(self, max_len):
        return Truncation(self.indices, max_len, self.max_val)

    def with_indices(self, indices):
        return Truncation(tuple(indices), self.max_len, self.max_val)

    def to_dict(self):
        return {"indices": list(self.indices), "max_len": self.max_len, "max_val": self.max_val}


@dataclass(frozen=True)
class PredensityWitness:
    """A member of the tested set together with a common lower bound."""

    member: object
    lower_bound: object
    truncation_relative: bool = False

    found = True


@dataclass(frozen=True)
class PredensityFailure:
    """No member of the tested set is compatible with the probe."""

    probe: object
    truncation_relative: bool = True

    found = False


@dataclass(frozen=True)
class AntichainReport:
    """
    Antichain status of a set of conditions plus predensity results.

    Attributes:
        antichain (tuple): The conditions examined
        is_antichain (bool): True iff every distinct pair is incompatible
        is_predense_in (dict): Probe condition -> witness or failure
    """

    antichain: tuple
    is_antichain: bool
    is_predense_in: dict = field(default_factory=dict)

    @property
    def is_predense(self):
        return all(result.found for result in self.is_predense_in.values())


@dataclass
class PropertyReport:
    """
    Result of one property suite.

    Attributes:
        name (str): Property name shown in the verification table
        checked (int): Number of cases examined
        failures (list): Descriptions of failing cases (truncated to max_examples)
        failure_count (int): Total number of failing cases
        notes (dict): Extra counters, e.g. observed strict inequalities
        topic (str): Construction the suite exercises, used to group the table
        skipped (str): Reason the suite did not run, or None
    """

    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    notes: dict = field(default_factory=dict)
    max_examples: int = 5
    topic: str = ""
    skipped: str = None

    def record(self, ok, example=None):
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < self.max_examples:
                self.failures.append(example)
        return ok

    @property
    def status(self):
        if self.failure_count:
            return CheckStatus.FAIL
        return CheckStatus.SKIPPED if self.skipped else CheckStatus.PASS

    @property
    def passed(self):
        """False only on a failing case; a skipped suite does not fail the run."""
        return self.status is not CheckStatus.FAIL

    def to_dict(self):
        return {
            "name": self.name,
            "topic": self.topic,
            "status": self.status.value,
            "checked": self.checked,
            "failures": self.failure_count,
            "notes": dict(self.notes),
            "skipped": self.skipped,
        }

    def __repr__(self):
        return f"<PropertyReport {self.name} {self.status.value} {self.checked - self.failure_count}/{self.checked}>"
