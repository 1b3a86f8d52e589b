"""
The scale poset: conditions growing a family of functions that is increasing
modulo finite, with the amalgamation that makes P(J) a regular subposet of P(I).
"""

import logging

from app.models.condition import ScaleCondition
from app.models.status import PosetKind
from app.services.poset_core import SequencePoset
from app.utils.errors import AmalgamationPreconditionError, InvalidConditionError

logger = logging.getLogger(__name__)


class ScalePoset(SequencePoset):
    kind = PosetKind.SCALE
    condition_type = ScaleCondition

    def column_ok(self, values):
        return all(a <= b for a, b in zip(values, values[1:]))

    def fill_column(self, column, others):
        filled = {}
        previous = None
        for index, value in column:
            if value is None:
                value = previous if previous is not None else 0
            elif previous is not None and value < previous:
                return None
            filled[index] = value
            previous = value
        return filled

    def random_column(self, indices, rng, policy):
        column = {}
        value = rng.randrange(policy.max_val)
        for index in indices:
            column[index] = value
            value += rng.randrange(3)
        return column

    def forcing_clause_holds(self, p, q):
        """
        For q below p: q(beta)(i) <= q(alpha)(i) whenever beta < alpha lie in
        dom(p) and n_p <= i < n_q. Vacuous when q does not extend p.
        """
        if not self.leq(p, q):
            return True
        for i in range(p.n, q.n):
            for beta in p.domain:
                for alpha in p.domain:
                    if beta < alpha and q[beta][i] > q[alpha][i]:
                        return False
        return True

    def pad_to(self, p, n, indices=()):
        """
        Strengthen p within P(J) to length n.

        Columns are filled so the chain clause holds; an empty p first gets
        the smallest index of J.
        """
        if n <= p.n:
            return p
        entries = p.as_dict()
        if not entries:
            if not indices:
                raise InvalidConditionError("Cannot pad the empty condition without an index")
            entries = {min(indices): ()}
        free = {k: [] for k in entries}
        for _ in range(len(next(iter(entries.values()))), n):
            column = self.fill_column([(k, None) for k in sorted(entries)], [])
            for k in entries:
                free[k].append(column[k])
        return self.condition_type.of({k: seq + tuple(free[k]) for k, seq in entries.items()}, n)


_poset = ScalePoset()


def scale_leq(p0, p1):
    """True iff p1 strengthens p0 in the scale poset."""
    return _poset.leq(p0, p1)


def restrict(p, indices):
    return _poset.restrict(p, indices)


def meet(p, q):
    return _poset.meet(p, q)


def pad_to(p, n, indices=()):
    return _poset.pad_to(p, n, indices)


def forcing_clause_holds(p, q):
    return _poset.forcing_clause_holds(p, q)


def check_amalgamation(poset, p0, indices, p2):
    """Raise AmalgamationPreconditionError naming the first failed clause."""
    indices = set(indices)
    if not p2.entries:
        if poset.restrict(p0, indices).entries:
            raise AmalgamationPreconditionError("p2 must strengthen p0 restricted to J")
        return
    if not set(p2.domain) <= indices:
        raise AmalgamationPreconditionError("p2 must be a condition over J")
    if not poset.leq(poset.restrict(p0, indices), p2):
        raise AmalgamationPreconditionError("p2 must strengthen p0 restricted to J")
    if p2.n < p0.n:
        raise AmalgamationPreconditionError(
            "p2 must be at least as long as p0",
            f"n_p2 = {p2.n} is below n_p0 = {p0.n}; strengthen p2 with pad_to first",
        )


def amalgamate(p0, indices, p2):
    """
    Common lower bound of p0 and a condition p2 below p0's restriction to J.

    For alpha in dom(p0) outside J the new columns copy the value of the
    largest smaller index of dom(p0) inside J, or 0 when there is none.

    Args:
        p0 (ScaleCondition): Condition over I
        indices (iterable): The index set J
        p2 (ScaleCondition): Condition over J with p2 <= p0|J and n_p2 >= n_p0

    Returns:
        ScaleCondition: p3 below both p0 and p2

    Raises:
        AmalgamationPreconditionError: If p2 does not satisfy the precondition
    """
    check_amalgamation(_poset, p0, indices, p2)
    if not p2.entries:
        return p0
    indices = set(indices)
    seqs = p2.as_dict()
    anchors = [k for k in p0.domain if k in indices]
    for alpha in p0.domain:
        if alpha in indices:
            continue
        below = [beta for beta in anchors if beta < alpha]
        beta = below[-1] if below else None
        tail = tuple(seqs[beta][i] if beta is not None else 0 for i in range(p0.n, p2.n))
        seqs[alpha] = p0[alpha] + tail
    p3 = ScaleCondition.of(seqs, p2.n)
    logger.debug(f"Amalgamated {p0} with {p2} into {p3}")
    return p3


def ll_check(f, g, threshold):
    """
    Finite reading of f << g.

    True iff f(i) <= g(i) for every i >= threshold and f(i) < g(i) somewhere.
    """
    f, g = tuple(f), tuple(g)
    if len(f) != len(g):
        raise InvalidConditionError(f"Fragments differ in length: {len(f)} and {len(g)}")
    if not 0 <= threshold <= len(f):
        raise InvalidConditionError(f"Threshold {threshold} outside 0..{len(f)}")
    dominated = all(f[i] <= g[i] for i in range(threshold, len(f)))
    return dominated and any(a < b for a, b in zip(f, g))
