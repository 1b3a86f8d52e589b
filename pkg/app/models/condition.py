"""
Condition Models for the forcing workbench

This module defines the finite conditions of the Cohen poset and of the two
sequence posets (the scale poset and the eventually-different poset).
All conditions are immutable and hashable.
"""

from dataclasses import dataclass

from app.models.status import PosetKind
from app.utils.errors import InvalidConditionError


def _items(entries):
    if entries is None:
        return ()
    if hasattr(entries, "items"):
        return tuple(entries.items())
    return tuple(entries)


def _natural(value, what):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidConditionError(f"{what} must be a natural number, got {value!r}")
    return value


@dataclass(frozen=True, repr=False)
class CohenCondition:
    """
    A finite partial function from indices to {0, 1}.

    Attributes:
        entries (tuple): Sorted (index, bit) pairs
    """

    entries: tuple = ()

    kind = PosetKind.COHEN

    def __post_init__(self):
        frozen = tuple(sorted((_natural(k, "Index"), v) for k, v in _items(self.entries)))
        indices = [k for k, _ in frozen]
        if len(set(indices)) != len(indices):
            raise InvalidConditionError(f"Duplicate index in Cohen condition: {indices}")
        for index, bit in frozen:
            if bit not in (0, 1):
                raise InvalidConditionError(f"Cohen value at {index} must be 0 or 1, got {bit!r}")
        object.__setattr__(self, "entries", frozen)

    @classmethod
    def of(cls, entries=None):
        return cls(_items(entries))

    @property
    def domain(self):
        return tuple(k for k, _ in self.entries)

    def as_dict(self):
        return dict(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_dict(self):
        return {"kind": self.kind.value, "entries": {str(k): v for k, v in self.entries}}

    @classmethod
    def from_dict(cls, data):
        return cls.of({int(k): v for k, v in data.get("entries", {}).items()})

    def __repr__(self):
        return f"<CohenCondition {self.as_dict()}>"


@dataclass(frozen=True, repr=False)
class SequenceCondition:
    """
    A finite map from indices to value sequences of one common length n.

    n is 0 exactly when the domain is empty: the empty condition is the
    unique top element, and a nonempty condition commits at least one column.

    Attributes:
        entries (tuple): Sorted (index, sequence) pairs
        n (int): The common sequence length
    """

    entries: tuple = ()
    n: int = 0

    kind = None

    def __post_init__(self):
        frozen = []
        for index, seq in _items(self.entries):
            _natural(index, "Index")
            frozen.append((index, tuple(_natural(v, f"Entry at index {index}") for v in seq)))
        frozen.sort()
        indices = [k for k, _ in frozen]
        if len(set(indices)) != len(indices):
            raise InvalidConditionError(f"Duplicate index in condition: {indices}")

        n = _natural(self.n, "Length")
        if not frozen:
            n = 0
        else:
            if n < 1:
                raise InvalidConditionError("A condition with nonempty domain needs n >= 1")
            for index, seq in frozen:
                if len(seq) != n:
                    raise InvalidConditionError(
                        f"Sequence at index {index} has length {len(seq)}, expected {n}"
                    )
        object.__setattr__(self, "entries", tuple(frozen))
        object.__setattr__(self, "n", n)

    @classmethod
    def of(cls, entries=None, n=None):
        """Build a condition, inferring n from the sequences when omitted."""
        items = _items(entries)
        if n is None:
            n = len(items[0][1]) if items else 0
        return cls(items, n)

    @classmethod
    def empty(cls):
        return cls((), 0)

    @property
    def domain(self):
        return tuple(k for k, _ in self.entries)

    def as_dict(self):
        return dict(self.entries)

    def __getitem__(self, index):
        for k, seq in self.entries:
            if k == index:
                return seq
        raise KeyError(index)

    def __contains__(self, index):
        return any(k == index for k, _ in self.entries)

    def __len__(self):
        return len(self.entries)

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "n": self.n,
            "entries": {str(k): list(seq) for k, seq in self.entries},
        }

    @classmethod
    def from_dict(cls, data):
        entries = {int(k): tuple(v) for k, v in data.get("entries", {}).items()}
        return cls.of(entries, data.get("n"))

    def __repr__(self):
        body = ", ".join(f"{k}:{seq}" for k, seq in self.entries)
        return f"<{type(self).__name__} n={self.n} {{{body}}}>"


class ScaleCondition(SequenceCondition):
    """A condition of the poset growing a dominating scale."""

    kind = PosetKind.SCALE


class EvDiffCondition(SequenceCondition):
    """A condition of the poset growing eventually different functions."""

    kind = PosetKind.EVDIFF
