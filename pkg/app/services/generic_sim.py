"""
Pseudo-generic filters.

A descending chain is grown by meeting a finite list of dense sets in
round-robin order; the function family it determines is read off the chain
and checked against the clause the poset forces.
"""

import json
import logging
import os
import random

from app.models.condition import SequenceCondition
from app.models.product import DCondition
from app.models.status import PosetKind, SideMode
from app.models.trace import DenseSet, DerivedFamily, FamilyReport, FilterTrace, GrowthPolicy, MetRecord
from app.services.embed_product import densify, in_d, proj
from app.services.poset_core import get_poset
from app.utils.errors import DenseSetViolationError, UnsupportedModeError
from app.utils.serialization import condition_to_dict

logger = logging.getLogger(__name__)


def mode_for(kind):
    """The side clause a poset kind forces on its derived family."""
    return SideMode.SCALE if PosetKind(kind) is PosetKind.SCALE else SideMode.EVDIFF


def _length(p):
    if isinstance(p, (SequenceCondition, DCondition)):
        return p.n
    return len(p.entries)


def _domain(p):
    if isinstance(p, DCondition):
        return tuple(index for index, _ in p.r.seqs)
    return p.domain


def index_in_domain(kind, index):
    """Dense set of conditions whose domain contains index."""
    poset = get_poset(kind)

    def strengthen(p, rng):
        policy = GrowthPolicy(indices=(index,))
        q = p
        while index not in _domain(q):
            q = poset.random_extension(q, rng, policy)
        return q

    return DenseSet(f"index {index} in domain", lambda p: index in _domain(p), strengthen)


def length_at_least(kind, k, policy=None):
    """Dense set of conditions committing at least k columns."""
    poset = get_poset(kind)
    policy = policy or GrowthPolicy()

    def strengthen(p, rng):
        q = p
        while _length(q) < k:
            q = poset.random_extension(q, rng, policy)
        return q

    return DenseSet(f"length >= {k}", lambda p: _length(p) >= k, strengthen)


def dense_in_product():
    """The dense set D of the product poset, as seen from arbitrary R-conditions."""
    return DenseSet("D of the product poset", lambda r: bool(in_d(r)), lambda r, rng: densify(r))


def standard_dense_sets(kind, indices=(0, 1), length=3):
    """Domain sets for each index plus one length set."""
    sets = [index_in_domain(kind, index) for index in indices]
    sets.append(length_at_least(kind, length))
    if PosetKind(kind) is PosetKind.PRODUCT:
        sets.append(dense_in_product())
    return sets


def build_filter(kind, policy, dense_sets, steps, seed):
    """
    Grow a strictly descending chain from the top condition.

    Each step takes the next dense set in round-robin order: a chain element
    already inside it is recorded as meeting it and strengthened at random,
    otherwise the set's own strengthening procedure is applied. The loop runs
    at least once per dense set.

    Raises:
        DenseSetViolationError: If a strengthening procedure does not return a
            strictly stronger member of its set
    """
    poset = get_poset(kind)
    rng = random.Random(seed)
    chain = [poset.top()]
    met = []
    seen = set()
    rounds = max(steps, len(dense_sets))
    for step in range(rounds):
        current = chain[-1]
        if not dense_sets:
            chain.append(poset.random_extension(current, rng, policy))
            continue
        dense = dense_sets[step % len(dense_sets)]
        if dense.contains(current):
            if dense.name not in seen:
                met.append(MetRecord(dense.name, len(chain) - 1))
                seen.add(dense.name)
            chain.append(poset.random_extension(current, rng, policy))
            continue
        following = dense.strengthen(current, rng)
        if following == current or not poset.leq(current, following) or not dense.contains(following):
            raise DenseSetViolationError(dense.name)
        chain.append(following)
        if dense.name not in seen:
            met.append(MetRecord(dense.name, len(chain) - 1))
            seen.add(dense.name)

    trace = FilterTrace(poset.kind, tuple(chain), tuple(met), seed)
    logger.debug(f"Built {trace} meeting {[record.name for record in met]}")
    return trace


def _sequences(p):
    if isinstance(p, DCondition):
        return proj(p)
    if not isinstance(p, SequenceCondition):
        raise UnsupportedModeError("Function families are read off sequence conditions")
    return p


def derive_family(trace):
    """
    Read the function fragments and commitment thresholds off a chain.

    Fragments are the unions of each index's sequences along the chain;
    thresholds record the n of the first chain element whose domain holds
    the index, or both indices of a pair.
    """
    fragments = {}
    thresholds = {}
    for p in trace.chain:
        p = _sequences(p)
        for index, seq in p.entries:
            if len(seq) > len(fragments.get(index, ())):
                fragments[index] = seq
            thresholds.setdefault(index, p.n)
        domain = p.domain
        for i, beta in enumerate(domain):
            for alpha in domain[i + 1 :]:
                thresholds.setdefault((beta, alpha), p.n)
    return DerivedFamily(fragments, thresholds)


def check_family(family, mode):
    """
    Check the forced clause for every committed pair from its threshold on.

    Eventually-different mode requires distinct values; scale mode requires
    the smaller index to stay below and reports whether a strict inequality
    was observed.
    """
    mode = SideMode(mode)
    report = FamilyReport(mode)
    for (beta, alpha), start in sorted(family.pair_thresholds().items()):
        f, g = family.fragments.get(beta, ()), family.fragments.get(alpha, ())
        common = min(len(f), len(g))
        report.pairs_checked += 1
        for i in range(start, common):
            ok = f[i] != g[i] if mode is SideMode.EVDIFF else f[i] <= g[i]
            if not ok:
                report.violations.append((beta, alpha, i))
        if mode is SideMode.SCALE:
            report.strict_observed[(beta, alpha)] = any(f[i] < g[i] for i in range(common))
    if report.violations:
        logger.warning(f"Family check ({mode.value}) found violations: {report.violations[:5]}")
    return report


def filter_member(p, family, mode):
    """
    True iff p belongs to the filter the family determines.

    Every p(alpha) must be a prefix of the fragment for alpha, and for every
    pair of its domain the clause must hold on each decided column from n_p on.
    """
    mode = SideMode(mode)
    p = _sequences(p)
    for index, seq in p.entries:
        fragment = family.fragments.get(index)
        if fragment is None or fragment[: len(seq)] != seq:
            return False
    domain = p.domain
    for i, beta in enumerate(domain):
        for alpha in domain[i + 1 :]:
            f, g = family.fragments[beta], family.fragments[alpha]
            for column in range(p.n, min(len(f), len(g))):
                if mode is SideMode.EVDIFF and f[column] == g[column]:
                    return False
                if mode is SideMode.SCALE and f[column] > g[column]:
                    return False
    return True


def reconstruct_filter(family, universe, mode):
    """The members of a universe lying in the filter the family determines."""
    return [p for p in universe if filter_member(p, family, mode)]


def chain_recovered(trace, family=None):
    """True iff every chain element lies in the filter its family determines."""
    family = family or derive_family(trace)
    mode = mode_for(trace.kind)
    return all(filter_member(p, family, mode) for p in trace.chain)


def write_trace_log(trace, path):
    """Write a trace as line-delimited JSON records {step, condition, met}."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        for step, condition in enumerate(trace.chain):
            record = {"step": step, "condition": condition_to_dict(condition), "met": trace.met_at(step)}
            handle.write(json.dumps(record, sort_keys=False, separators=(",", ":")) + "\n")
    logger.info(f"Wrote {len(trace.chain)} trace records to {path}")
