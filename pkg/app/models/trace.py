"""
Simulation Models for the forcing workbench

This module defines dense sets, filter traces produced by the generic
simulator and the function families derived from them.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class DenseSet:
    """
    A dense set given as code.

    Attributes:
        name (str): Descriptor used in traces and error messages
        contains (callable): contains(p) -> bool
        strengthen (callable): strengthen(p, rng) -> condition below p inside the set
    """

    name: str
    contains: object
    strengthen: object

    def __repr__(self):
        return f"<DenseSet {self.name}>"


@dataclass(frozen=True)
class MetRecord:
    """A dense set together with the chain position where it was met."""

    name: str
    position: int

    def to_dict(self):
        return {"name": self.name, "position": self.position}


@dataclass(frozen=True)
class GrowthPolicy:
    """
    How random strengthening steps grow conditions.

    Attributes:
        indices (tuple): Index pool new domain elements are drawn from
        max_val (int): Exclusive bound on randomly drawn values
        new_index_probability (float): Chance that a step adds an index
    """

    indices: tuple = (0, 1, 2, 3)
    max_val: int = 8
    new_index_probability: float = 0.3


@dataclass(frozen=True)
class FilterTrace:
    """
    A descending chain of conditions with the dense sets it met.

    Attributes:
        kind (PosetKind): Poset the chain lives in
        chain (tuple): Conditions, each strictly below its predecessor
        met (tuple): MetRecord entries
        seed (int): RNG seed the trace was built from
    """

    kind: object
    chain: tuple
    met: tuple = ()
    seed: int = 0

    @property
    def final(self):
        return self.chain[-1]

    def met_at(self, position):
        return [record.name for record in self.met if record.position == position]

    def __repr__(self):
        return f"<FilterTrace {self.kind.value} steps={len(self.chain) - 1} seed={self.seed}>"


@dataclass(frozen=True)
class DerivedFamily:
    """
    The function fragments read off a filter trace.

    Attributes:
        fragments (dict): Index -> union of that index's sequences along the chain
        thresholds (dict): Index or (smaller, larger) index pair -> the n of
            the first chain element whose domain contains it
    """

    fragments: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)

    def pair_thresholds(self):
        return {k: v for k, v in self.thresholds.items() if isinstance(k, tuple)}

    def to_dict(self):
        return {
            "fragments": {str(k): list(v) for k, v in sorted(self.fragments.items())},
            "thresholds": {
                (f"{k[0]},{k[1]}" if isinstance(k, tuple) else str(k)): v
                for k, v in sorted(self.thresholds.items(), key=lambda kv: str(kv[0]))
            },
        }


@dataclass
class FamilyReport:
    """
    Outcome of checking a derived family.

    Attributes:
        mode (SideMode): Clause that was checked
        pairs_checked (int): Number of index pairs examined
        violations (list): (smaller, larger, column) triples where the clause fails
        strict_observed (dict): Scale mode only: pair -> whether a strict
            inequality was observed inside the decided fragment
    """

    mode: object
    pairs_checked: int = 0
    violations: list = field(default_factory=list)
    strict_observed: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.violations
