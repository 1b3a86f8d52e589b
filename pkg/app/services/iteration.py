"""
The residue poset of one iteration stage, read against a concrete
environment of functions, and the flat conditions of the iteration.

A residue condition <s, a> promises that every later value of s avoids
(eventually-different mode) or dominates (scale mode) each f_gamma,
gamma in a.
"""

import itertools
import logging

from app.models.condition import EvDiffCondition, ScaleCondition
from app.models.iteration import Environment, FlatIterCondition, QCondition
from app.models.status import SideMode
from app.services.evdiff_poset import EvDiffPoset
from app.utils.errors import (
    NotSeparableError,
    SeparationContradictionError,
    UnsupportedModeError,
    WitnessPreconditionError,
)

logger = logging.getLogger(__name__)


def side_clause(mode, value, bound):
    """The per-column promise a side index makes about a later value."""
    if SideMode(mode) is SideMode.EVDIFF:
        return value != bound
    return value >= bound


def _is_prefix(short, long):
    return len(short) <= len(long) and long[: len(short)] == short


def q_leq(q0, q1, env, mode=SideMode.EVDIFF):
    """
    True iff q1 strengthens q0.

    q1 must extend s and a, and every value q1 adds beyond q0.s must respect
    the side clause for every gamma in q0.a.
    """
    if not _is_prefix(q0.s, q1.s) or not q0.a <= q1.a:
        return False
    for i in range(len(q0.s), len(q1.s)):
        for gamma in sorted(q0.a):
            if not side_clause(mode, q1.s[i], env.value(gamma, i)):
                return False
    return True


def q_compatible(q0, q1, env, mode=SideMode.EVDIFF):
    """
    True iff q0 and q1 have a common extension.

    With s comparable, <longer s, a0 | a1> extends both exactly when the
    longer s already respects the shorter side's promises.
    """
    short, long = (q0, q1) if len(q0.s) <= len(q1.s) else (q1, q0)
    if not _is_prefix(short.s, long.s):
        return False
    for i in range(len(short.s), len(long.s)):
        for gamma in sorted(short.a):
            if not side_clause(mode, long.s[i], env.value(gamma, i)):
                return False
    return True


def q_meet(q0, q1, env, mode=SideMode.EVDIFF):
    if not q_compatible(q0, q1, env, mode):
        return None
    s = q0.s if len(q0.s) >= len(q1.s) else q1.s
    return QCondition(s, q0.a | q1.a)


def bounded_common_extension(q0, q1, env, mode=SideMode.EVDIFF, depth=2, max_val=None):
    """
    Brute-force search for a common extension, up to depth extra positions.

    Candidates extend the longer sequence part and carry the union of the
    side sets; values range below max_val, by default one more than
    anything in sight.
    """
    short, long = sorted((q0, q1), key=lambda q: len(q.s))
    if not _is_prefix(short.s, long.s):
        return None
    a = q0.a | q1.a
    if max_val is None:
        seen = list(long.s) + list(a) + [v for _, table in env.tables for v in table]
        max_val = max(seen, default=0) + len(a) + 2
    for extra in range(depth + 1):
        for tail in itertools.product(range(max_val), repeat=extra):
            candidate = QCondition(long.s + tail, a)
            if q_leq(q0, candidate, env, mode) and q_leq(q1, candidate, env, mode):
                return candidate
    return None


def _avoiding(env, indices, i, banned=()):
    taken = {env.value(delta, i) for delta in indices} | set(banned)
    value = 0
    while value in taken:
        value += 1
    return value


def separate(q0, q1, env, mode=SideMode.EVDIFF):
    """
    Extend q0 to a condition incompatible with q1.

    Args:
        q0 (QCondition): The condition to extend
        q1 (QCondition): A condition q0 does not extend
        env (Environment): Pairwise eventually different functions
        mode (SideMode): Only EVDIFF is supported

    Returns:
        QCondition: q2 extending q0 with q2 incompatible with q1

    Raises:
        UnsupportedModeError: For scale mode
        NotSeparableError: If q0 already extends q1
        SeparationContradictionError: If the case analysis finds q0 compatible
            with q1 although q0 does not extend it
    """
    if SideMode(mode) is not SideMode.EVDIFF:
        raise UnsupportedModeError("Separation is implemented for the eventually-different mode only")
    if q_leq(q1, q0, env, mode):
        raise NotSeparableError(f"{q0} already extends {q1}")

    s0, a0 = q0.s, q0.a
    s1, a1 = q1.s, q1.a

    if not _is_prefix(s1, s0):
        if not _is_prefix(s0, s1):
            return q0
        i = len(s0)
        value = _avoiding(env, a0, i, banned=(s1[i],))
        q2 = QCondition(s0 + (value,), a0)
        logger.debug(f"Separated {q0} from {q1} by disagreeing at {i}: {q2}")
        return q2

    if not a1 <= a0:
        gamma = min(a1 - a0)
        i = len(s0)
        while any(env.value(gamma, i) == env.value(delta, i) for delta in a0):
            i += 1
        filler = tuple(_avoiding(env, a0, j) for j in range(len(s0), i))
        q2 = QCondition(s0 + filler + (env.value(gamma, i),), a0)
        logger.debug(f"Separated {q0} from {q1} by meeting f_{gamma} at {i}: {q2}")
        return q2

    if q_compatible(q0, q1, env, mode):
        raise SeparationContradictionError(
            f"{q0} is compatible with {q1} without extending it; the environment is not eventually different"
        )
    return q0


def find_unused_index(conditions, pool):
    """The smallest index of pool occurring in no side set of the conditions."""
    used = set().union(*(q.a for q in conditions)) if conditions else set()
    for index in sorted(pool):
        if index not in used:
            return index
    raise WitnessPreconditionError(f"Every index of {sorted(pool)} occurs in a side set")


def non_dense_witness(conditions, gamma, q, env, mode=SideMode.EVDIFF):
    """
    Add gamma to q's side set; no member of the family can extend the result.

    Raises:
        WitnessPreconditionError: If gamma occurs in q.a or in a member's side set
    """
    if gamma in q.a:
        raise WitnessPreconditionError(f"{gamma} already occurs in the side set of {q}")
    for member in conditions:
        if gamma in member.a:
            raise WitnessPreconditionError(f"{gamma} occurs in the side set of {member}")
    witness = QCondition(q.s, q.a | {gamma})
    for member in conditions:
        if q_leq(witness, member, env, mode):
            raise WitnessPreconditionError(f"{member} extends the witness {witness}")
    return witness


def flatten(r, mode=SideMode.EVDIFF):
    """The sequence condition with the same domain, sequences and length."""
    condition_type = EvDiffCondition if SideMode(mode) is SideMode.EVDIFF else ScaleCondition
    return condition_type.of({index: s for index, s, _ in r.entries}, r.n)


def unflatten(p):
    domain = p.domain
    return FlatIterCondition(
        tuple((beta, p[beta], frozenset(g for g in domain if g < beta)) for beta in domain), p.n
    )


def flat_leq(r0, r1, mode=SideMode.EVDIFF):
    """
    True iff r1 strengthens r0 in the flat ordering.

    Coordinatewise residue order, with each f_gamma read off r1's own
    sequence s_gamma.
    """
    if not set(r0.domain) <= set(r1.domain):
        return False
    env = Environment.from_sequences({index: s for index, s, _ in r1.entries}, r1.n)
    for index, s, a in r0.entries:
        s1, a1 = r1.coordinate(index)
        if not q_leq(QCondition(s, a), QCondition(s1, a1), env, mode):
            return False
    return True


def densify_iteration(raw, mode=SideMode.EVDIFF):
    """
    A flat condition below a raw family of residue conditions.

    Args:
        raw (dict): index -> (s, a) with a below the index; lengths may differ

    Returns:
        FlatIterCondition: domain is dom(raw) plus every side index, all
        sequences padded to the longest length with new values respecting
        every side clause
    """
    raw = {int(k): (tuple(s), frozenset(a)) for k, (s, a) in dict(raw).items()}
    domain = set(raw) | set().union(*(a for _, a in raw.values()))
    if not domain:
        return FlatIterCondition((), 0)
    seqs = {beta: raw.get(beta, ((), frozenset()))[0] for beta in domain}
    n = max([len(s) for s in seqs.values()] + [1])

    for i in range(n):
        column = {beta: s[i] for beta, s in seqs.items() if len(s) > i}
        for beta in sorted(domain):
            if beta in column:
                continue
            if SideMode(mode) is SideMode.EVDIFF:
                value = max(column.values(), default=-1) + 1
            else:
                value = max((v for g, v in column.items() if g < beta), default=0)
            column[beta] = value
            seqs[beta] = seqs[beta] + (value,)

    ordered = sorted(domain)
    return FlatIterCondition(
        tuple((beta, seqs[beta], frozenset(g for g in ordered if g < beta)) for beta in ordered), n
    )


def enumerate_q_universe(t):
    """Residue conditions with |s| <= max_len, values below max_val, a within t.indices."""
    side_sets = [
        frozenset(subset)
        for size in range(len(t.indices) + 1)
        for subset in itertools.combinations(t.indices, size)
    ]
    for length in range(t.max_len + 1):
        for s in itertools.product(range(t.max_val), repeat=length):
            for a in side_sets:
                yield QCondition(s, a)


def enumerate_flat_universe(t):
    return [unflatten(p) for p in EvDiffPoset().iter_universe(t)]
