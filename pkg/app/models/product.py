"""
Product Models for the forcing workbench

This module defines the conditions of the product poset R used to embed the
eventually-different poset into Cohen forcing, and the dense set D.

An R-condition has three coordinate families:
    seqs     index -> finite sequence of naturals
    cutoffs  index -> natural
    coder    finite sequence -> natural, one-to-one among keys of equal length
"""

from collections import defaultdict
from dataclasses import dataclass

from app.models.status import PosetKind
from app.utils.errors import InvalidConditionError


def _items(mapping):
    if mapping is None:
        return ()
    if hasattr(mapping, "items"):
        return tuple(mapping.items())
    return tuple(mapping)


def prefixes(seq):
    """All initial segments of seq, from the empty sequence to seq itself."""
    return [tuple(seq[:k]) for k in range(len(seq) + 1)]


def level_collisions(coder):
    """Pairs of equal-length coder keys sharing a value."""
    seen = defaultdict(dict)
    collisions = []
    for key, value in coder:
        level = seen[len(key)]
        if value in level:
            collisions.append((level[value], key))
        else:
            level[value] = key
    return collisions


@dataclass(frozen=True, repr=False)
class RCondition:
    """
    A condition of the product poset R.

    Attributes:
        seqs (tuple): Sorted (index, sequence) pairs
        cutoffs (tuple): Sorted (index, cutoff) pairs
        coder (tuple): Sorted (sequence, value) pairs
    """

    seqs: tuple = ()
    cutoffs: tuple = ()
    coder: tuple = ()

    kind = PosetKind.PRODUCT

    def __post_init__(self):
        seqs = tuple(sorted((int(k), tuple(v)) for k, v in _items(self.seqs)))
        cutoffs = tuple(sorted((int(k), int(v)) for k, v in _items(self.cutoffs)))
        coder = tuple(sorted((tuple(k), int(v)) for k, v in _items(self.coder)))

        for name, pairs in (("seqs", seqs), ("cutoffs", cutoffs), ("coder", coder)):
            keys = [k for k, _ in pairs]
            if len(set(keys)) != len(keys):
                raise InvalidConditionError(f"Duplicate key in {name}: {keys}")
        values = [v for _, seq in seqs for v in seq] + [v for _, v in cutoffs]
        values += [v for _, v in coder] + [v for key, _ in coder for v in key]
        values += [k for k, _ in seqs] + [k for k, _ in cutoffs]
        if any(v < 0 for v in values):
            raise InvalidConditionError("Product conditions hold natural numbers only")
        collisions = level_collisions(coder)
        if collisions:
            raise InvalidConditionError(f"Coder is not one-to-one on a level: {collisions[0]}")

        object.__setattr__(self, "seqs", seqs)
        object.__setattr__(self, "cutoffs", cutoffs)
        object.__setattr__(self, "coder", coder)

    @classmethod
    def of(cls, seqs=None, cutoffs=None, coder=None):
        return cls(_items(seqs), _items(cutoffs), _items(coder))

    @property
    def seq_map(self):
        return dict(self.seqs)

    @property
    def cutoff_map(self):
        return dict(self.cutoffs)

    @property
    def coder_map(self):
        return dict(self.coder)

    def is_empty(self):
        return not (self.seqs or self.cutoffs or self.coder)

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "seqs": {str(k): list(v) for k, v in self.seqs},
            "cutoffs": {str(k): v for k, v in self.cutoffs},
            "coder": [[list(k), v] for k, v in self.coder],
        }

    @classmethod
    def from_dict(cls, data):
        return cls.of(
            {int(k): tuple(v) for k, v in data.get("seqs", {}).items()},
            {int(k): int(v) for k, v in data.get("cutoffs", {}).items()},
            [(tuple(k), int(v)) for k, v in data.get("coder", [])],
        )

    def __repr__(self):
        return f"<RCondition seqs={self.seq_map} cutoffs={self.cutoff_map} coder={self.coder_map}>"


def d_violation(r, n=None):
    """
    Return the first violated clause of the dense set D, or None.

    Args:
        r (RCondition): The condition to check
        n (int, optional): Claimed common length; inferred when omitted

    Returns:
        tuple: (clause, n) where clause is None when r is in D
    """
    seqs = r.seq_map
    cutoffs = r.cutoff_map

    if set(seqs) != set(cutoffs):
        return "seqs and cutoffs must have identical domains", n

    lengths = {len(seq) for seq in seqs.values()}
    if len(lengths) > 1:
        return "seqs must share one length", n
    if lengths:
        common = lengths.pop()
        if n is not None and n != common:
            return f"seqs have length {common}, expected {n}", n
        n = common
        if n < 1:
            return "a nonempty D-condition needs n >= 1", n
    elif n is None:
        n = 0

    if len(set(seqs.values())) != len(seqs):
        return "seqs must be pairwise distinct", n

    for index, cutoff in cutoffs.items():
        if cutoff > n:
            return f"cutoff {cutoff} at index {index} exceeds n = {n}", n

    wanted = {p for seq in seqs.values() for p in prefixes(seq)}
    if set(r.coder_map) != wanted:
        return "coder domain must be exactly the prefixes of seqs", n
    return None, n


@dataclass(frozen=True, repr=False)
class DCondition:
    """
    A member of the dense set D: an R-condition with its common length.

    Attributes:
        r (RCondition): The underlying product condition
        n (int): The common sequence length n_r
    """

    r: RCondition
    n: int = 0

    def __post_init__(self):
        clause, n = d_violation(self.r, self.n if self.r.seqs else None)
        if clause is not None:
            raise InvalidConditionError(f"Not in D: {clause}")
        if not self.r.seqs and self.n < 0:
            raise InvalidConditionError("n must be a natural number")
        object.__setattr__(self, "n", n if self.r.seqs else self.n)

    @classmethod
    def of(cls, seqs=None, cutoffs=None, coder=None, n=None):
        r = RCondition.of(seqs, cutoffs, coder)
        if n is None:
            n = len(r.seqs[0][1]) if r.seqs else 0
        return cls(r, n)

    def to_dict(self):
        return {**self.r.to_dict(), "n": self.n}

    @classmethod
    def from_dict(cls, data):
        return cls(RCondition.from_dict(data), int(data.get("n", 0)))

    def __repr__(self):
        return f"<DCondition n={self.n} seqs={self.r.seq_map} cutoffs={self.r.cutoff_map}>"
