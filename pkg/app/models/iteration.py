"""
Iteration Models for the forcing workbench

This module defines residue conditions <s, a>, the concrete function
environment they are interpreted against, and flat iteration conditions
(the dense set of the finite support iteration).
"""

from dataclasses import dataclass

from app.utils.errors import EnvironmentCoverageError, InvalidConditionError


def _naturals(values, what):
    values = tuple(values)
    if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in values):
        raise InvalidConditionError(f"{what} must hold natural numbers: {values}")
    return values


@dataclass(frozen=True, repr=False)
class QCondition:
    """
    A residue condition: a finite sequence plus a finite side set of indices.

    Attributes:
        s (tuple): The sequence part
        a (frozenset): The side condition
    """

    s: tuple = ()
    a: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "s", _naturals(self.s, "Sequence part"))
        object.__setattr__(self, "a", frozenset(_naturals(self.a, "Side set")))

    @classmethod
    def of(cls, s=(), a=()):
        return cls(tuple(s), frozenset(a))

    def to_dict(self):
        return {"kind": "q", "s": list(self.s), "a": sorted(self.a)}

    @classmethod
    def from_dict(cls, data):
        return cls.of(data.get("s", ()), data.get("a", ()))

    def __repr__(self):
        return f"<QCondition s={self.s} a={sorted(self.a)}>"


@dataclass(frozen=True, repr=False)
class Environment:
    """
    A concrete family of functions f_gamma : omega -> omega.

    Below the table length L the values come from the tables; from L on
    every function follows the tail rule f_gamma(i) = gamma, so distinct
    indices give functions that differ at every i >= L.

    Attributes:
        length (int): The common table length L
        tables (tuple): Sorted (index, table) pairs, each table of length L
    """

    length: int = 0
    tables: tuple = ()

    def __post_init__(self):
        items = self.tables.items() if hasattr(self.tables, "items") else self.tables
        tables = tuple(sorted((int(k), _naturals(v, f"Table {k}")) for k, v in items))
        for index, table in tables:
            if len(table) != self.length:
                raise InvalidConditionError(
                    f"Table for {index} has length {len(table)}, expected {self.length}"
                )
        object.__setattr__(self, "tables", tables)

    @classmethod
    def of(cls, tables=None, length=None):
        tables = dict(tables or {})
        if length is None:
            length = len(next(iter(tables.values()))) if tables else 0
        return cls(length, tables)

    @classmethod
    def from_sequences(cls, seqs, length):
        """Environment whose tables are the given sequences cut to a common length."""
        return cls(length, {k: tuple(v[:length]) for k, v in dict(seqs).items()})

    def value(self, index, i):
        if i >= self.length:
            return index
        for k, table in self.tables:
            if k == index:
                return table[i]
        raise EnvironmentCoverageError(f"Environment has no table for index {index}")

    def covers(self, indices):
        known = {k for k, _ in self.tables}
        return self.length == 0 or set(indices) <= known

    def to_dict(self):
        return {"L": self.length, "tables": {str(k): list(v) for k, v in self.tables}}

    @classmethod
    def from_dict(cls, data):
        return cls(int(data.get("L", 0)), {int(k): v for k, v in data.get("tables", {}).items()})

    def __repr__(self):
        return f"<Environment L={self.length} tables={dict(self.tables)}>"


@dataclass(frozen=True, repr=False)
class FlatIterCondition:
    """
    A flat condition of the iteration: every coordinate decided up to n.

    Attributes:
        entries (tuple): Sorted (index, sequence, side set) triples
        n (int): The common sequence length
    """

    entries: tuple = ()
    n: int = 0

    def __post_init__(self):
        items = self.entries.items() if hasattr(self.entries, "items") else self.entries
        entries = []
        for item in items:
            if len(item) == 2:
                index, (s, a) = item
            else:
                index, s, a = item
            entries.append((int(index), _naturals(s, f"Sequence {index}"), frozenset(a)))
        entries.sort(key=lambda e: e[0])
        domain = [e[0] for e in entries]
        if len(set(domain)) != len(domain):
            raise InvalidConditionError(f"Duplicate index in flat condition: {domain}")

        n = self.n if entries else 0
        if entries and n < 1:
            raise InvalidConditionError("A flat condition with nonempty domain needs n >= 1")
        for index, s, a in entries:
            if len(s) != n:
                raise InvalidConditionError(f"Sequence at {index} has length {len(s)}, expected {n}")
            expected = frozenset(g for g in domain if g < index)
            if a != expected:
                raise InvalidConditionError(
                    f"Side set at {index} must be dom ∩ {index} = {sorted(expected)}, got {sorted(a)}"
                )
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "n", n)

    @property
    def domain(self):
        return tuple(e[0] for e in self.entries)

    def coordinate(self, index):
        for k, s, a in self.entries:
            if k == index:
                return s, a
        raise KeyError(index)

    def to_dict(self):
        return {
            "kind": "flat",
            "n": self.n,
            "entries": {str(k): {"s": list(s), "a": sorted(a)} for k, s, a in self.entries},
        }

    @classmethod
    def from_dict(cls, data):
        entries = [
            (int(k), tuple(v["s"]), frozenset(v["a"])) for k, v in data.get("entries", {}).items()
        ]
        return cls(tuple(entries), int(data.get("n", 0)))

    def __repr__(self):
        body = ", ".join(f"{k}:({s}, {sorted(a)})" for k, s, a in self.entries)
        return f"<FlatIterCondition n={self.n} {{{body}}}>"
