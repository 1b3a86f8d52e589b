"""
The eventually-different poset: the same conditions as the scale poset, with
new columns required to be one-to-one across the old domain.
"""

import logging

from app.models.condition import EvDiffCondition
from app.models.status import PosetKind
from app.services.poset_core import SequencePoset
from app.services.scale_poset import check_amalgamation
from app.utils.errors import InvalidConditionError

logger = logging.getLogger(__name__)


def _smallest_avoiding(taken):
    value = 0
    while value in taken:
        value += 1
    return value


class EvDiffPoset(SequencePoset):
    kind = PosetKind.EVDIFF
    condition_type = EvDiffCondition

    def column_ok(self, values):
        return len(set(values)) == len(values)

    def fill_column(self, column, others):
        fixed = [value for _, value in column if value is not None]
        if len(set(fixed)) != len(fixed):
            return None
        taken = set(fixed) | set(others)
        filled = {}
        for index, value in column:
            if value is None:
                value = _smallest_avoiding(taken)
                taken.add(value)
            filled[index] = value
        return filled

    def random_column(self, indices, rng, policy):
        values = rng.sample(range(max(policy.max_val, len(indices))), len(indices))
        return dict(zip(indices, values))

    def forcing_clause_holds(self, p, q):
        """For q below p, distinct indices of dom(p) differ on every column from n_p to n_q."""
        if not self.leq(p, q):
            return True
        for i in range(p.n, q.n):
            column = [q[alpha][i] for alpha in p.domain]
            if len(set(column)) != len(column):
                return False
        return True

    def pad_to(self, p, n, indices=()):
        if n <= p.n:
            return p
        entries = p.as_dict()
        if not entries:
            if not indices:
                raise InvalidConditionError("Cannot pad the empty condition without an index")
            entries = {min(indices): ()}
        order = sorted(entries)
        start = len(entries[order[0]])
        for _ in range(start, n):
            column = self.fill_column([(k, None) for k in order], [])
            entries = {k: entries[k] + (column[k],) for k in order}
        return self.condition_type.of(entries, n)


_poset = EvDiffPoset()


def evdiff_leq(p0, p1):
    """True iff p1 strengthens p0 in the eventually-different poset."""
    return _poset.leq(p0, p1)


def restrict(p, indices):
    return _poset.restrict(p, indices)


def meet(p, q):
    return _poset.meet(p, q)


def pad_to(p, n, indices=()):
    return _poset.pad_to(p, n, indices)


def forcing_clause_holds(p, q):
    return _poset.forcing_clause_holds(p, q)


def evdiff_amalgamate(p0, indices, p2):
    """
    Common lower bound of p0 and a condition p2 below p0's restriction to J.

    Indices of dom(p0) outside J are processed in increasing order; at each
    new column they take the smallest value not used by any other index of
    the result at that column.

    Raises:
        AmalgamationPreconditionError: If p2 does not satisfy the precondition
    """
    check_amalgamation(_poset, p0, indices, p2)
    if not p2.entries:
        return p0
    indices = set(indices)
    seqs = p2.as_dict()
    outside = [alpha for alpha in p0.domain if alpha not in indices]
    tails = {alpha: [] for alpha in outside}
    for i in range(p0.n, p2.n):
        taken = {seq[i] for seq in seqs.values()}
        for alpha in outside:
            value = _smallest_avoiding(taken)
            tails[alpha].append(value)
            taken.add(value)
    for alpha in outside:
        seqs[alpha] = p0[alpha] + tuple(tails[alpha])
    p3 = EvDiffCondition.of(seqs, p2.n)
    logger.debug(f"Amalgamated {p0} with {p2} into {p3}")
    return p3
