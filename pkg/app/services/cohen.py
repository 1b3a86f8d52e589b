"""
Cohen forcing: finite partial functions into {0, 1} ordered by extension.
"""

import itertools

from app.models.condition import CohenCondition
from app.models.status import PosetKind
from app.services.poset_core import Poset


def cohen_leq(p0, p1):
    """True iff p1 extends p0."""
    entries = p1.as_dict()
    return all(entries.get(index) == bit for index, bit in p0.entries)


def cohen_compatible(p0, p1):
    entries = p1.as_dict()
    return all(entries.get(index, bit) == bit for index, bit in p0.entries)


def cohen_restrict(p, indices):
    indices = set(indices)
    return CohenCondition.of({k: v for k, v in p.entries if k in indices})


class CohenPoset(Poset):
    kind = PosetKind.COHEN
    condition_type = CohenCondition

    def leq(self, p0, p1):
        return cohen_leq(p0, p1)

    def compatible(self, p, q):
        return cohen_compatible(p, q)

    def meet(self, p, q):
        if not cohen_compatible(p, q):
            return None
        return CohenCondition.of({**p.as_dict(), **q.as_dict()})

    def restrict(self, p, indices):
        return cohen_restrict(p, indices)

    def universe_size(self, t):
        return (1 + min(t.max_val, 2)) ** len(t.indices)

    def iter_universe(self, t):
        # None marks an index outside the domain
        choices = [None] + list(range(min(t.max_val, 2)))
        for values in itertools.product(choices, repeat=len(t.indices)):
            yield CohenCondition.of({k: v for k, v in zip(t.indices, values) if v is not None})

    def weakenings(self, p):
        for size in range(len(p.entries) + 1):
            for subset in itertools.combinations(p.entries, size):
                yield CohenCondition.of(subset)

    def random_extension(self, p, rng, policy):
        entries = p.as_dict()
        spare = [k for k in policy.indices if k not in entries]
        index = rng.choice(spare) if spare else max(list(policy.indices) + list(entries), default=-1) + 1
        entries[index] = rng.randrange(2)
        return CohenCondition.of(entries)
