"""
Shared order-theoretic machinery.

Every poset implements the Poset interface below. Conditions are immutable
values and every function here is pure, so universes can be swept in
parallel without coordination.

Orientation: leq(p0, p1) is True when p1 strengthens p0 (p1 <= p0 with the
stronger condition below). below(p, q) reads the other way round.
"""

import itertools
import logging

import networkx as nx

from app.models.status import PosetKind
from app.models.truncation import (
    AntichainReport,
    PredensityFailure,
    PredensityWitness,
    PropertyReport,
)
from app.utils.errors import EnumerationOverflowError

logger = logging.getLogger(__name__)

_settings = {"enumeration_cap": 1_000_000, "compatibility_slack": 2}


def configure(enumeration_cap=None, compatibility_slack=None):
    """Apply configuration to the enumeration cap and the bounded-search slack."""
    if enumeration_cap is not None:
        _settings["enumeration_cap"] = int(enumeration_cap)
    if compatibility_slack is not None:
        _settings["compatibility_slack"] = int(compatibility_slack)


def settings():
    return dict(_settings)


class Poset:
    """
    Interface shared by every implemented poset.

    Subclasses provide the order, an exact meet where one exists, and the
    enumeration of truncated universes.
    """

    kind = None
    condition_type = None

    def top(self):
        return self.condition_type()

    def leq(self, p0, p1):
        raise NotImplementedError

    def below(self, p, q):
        """True when p <= q, i.e. p is at least as strong as q."""
        return self.leq(q, p)

    def meet(self, p, q):
        """A common lower bound of p and q, or None when they are incompatible."""
        raise NotImplementedError

    def compatible(self, p, q):
        return self.meet(p, q) is not None

    def universe_size(self, t):
        raise NotImplementedError

    def iter_universe(self, t):
        raise NotImplementedError

    def strengthenings(self, q, t):
        """Every condition of the truncated universe below q."""
        return (p for p in self.iter_universe(t) if self.leq(q, p))

    def weakenings(self, p):
        """Every condition above p obtained by shrinking domain and length."""
        raise NotImplementedError

    def random_extension(self, p, rng, policy):
        """A condition strictly below p drawn with rng."""
        raise NotImplementedError

    def domain_size(self, p):
        return len(p.domain)

    def __repr__(self):
        return f"<Poset {self.kind.value}>"


class SequencePoset(Poset):
    """
    Common machinery of the two sequence posets.

    A condition maps finitely many indices to sequences of one length n.
    p1 strengthens p0 when it extends every sequence of p0 and every new
    column i in [n_p0, n_p1), read over dom(p0) in index order, satisfies
    the column clause of the poset.
    """

    def column_ok(self, values):
        """Column clause over dom(p0) listed in increasing index order."""
        raise NotImplementedError

    def fill_column(self, column, others):
        """
        Complete a column.

        Args:
            column (list): (index, value or None) pairs in increasing index
                order; None marks a free position
            others (list): Values of the same column outside the constrained domain

        Returns:
            dict: index -> value for the whole column, or None when no
            completion satisfies column_ok
        """
        raise NotImplementedError

    def random_column(self, indices, rng, policy):
        """Random values for a new column satisfying the column clause."""
        raise NotImplementedError

    def leq(self, p0, p1):
        if p0.n > p1.n:
            return False
        seqs1 = p1.as_dict()
        for index, seq in p0.entries:
            extended = seqs1.get(index)
            if extended is None or extended[: p0.n] != seq:
                return False
        for i in range(p0.n, p1.n):
            if not self.column_ok([seqs1[index][i] for index in p0.domain]):
                return False
        return True

    def restrict(self, p, indices):
        indices = set(indices)
        return self.condition_type.of({k: s for k, s in p.entries if k in indices}, p.n)

    def meet(self, p, q):
        if not p.entries:
            return q
        if not q.entries:
            return p
        short, long = (p, q) if p.n <= q.n else (q, p)
        long_seqs = long.as_dict()
        for index, seq in short.entries:
            if index in long_seqs and long_seqs[index][: short.n] != seq:
                return None

        result = dict(long_seqs)
        free = [k for k in short.domain if k not in long_seqs]
        tails = {k: [] for k in free}
        for i in range(short.n, long.n):
            column = [(k, long_seqs[k][i] if k in long_seqs else None) for k in short.domain]
            others = [long_seqs[k][i] for k in long.domain if k not in short.as_dict()]
            filled = self.fill_column(column, others)
            if filled is None:
                return None
            for k in free:
                tails[k].append(filled[k])
        short_seqs = short.as_dict()
        for k in free:
            result[k] = short_seqs[k] + tuple(tails[k])
        return self.condition_type.of(result, long.n)

    def universe_size(self, t):
        total = 1
        for size in range(1, len(t.indices) + 1):
            subsets = _binomial(len(t.indices), size)
            total += subsets * sum(t.max_val ** (n * size) for n in range(1, t.max_len + 1))
        return total

    def iter_universe(self, t):
        yield self.condition_type.empty()
        for size in range(1, len(t.indices) + 1):
            for domain in itertools.combinations(t.indices, size):
                for n in range(1, t.max_len + 1):
                    sequences = list(itertools.product(range(t.max_val), repeat=n))
                    for choice in itertools.product(sequences, repeat=size):
                        yield self.condition_type.of(dict(zip(domain, choice)), n)

    def strengthenings(self, q, t):
        spare = [k for k in t.indices if k not in q.as_dict()]
        q_seqs = q.as_dict()
        for size in range(len(spare) + 1):
            for extra in itertools.combinations(spare, size):
                domain = sorted(set(q.domain) | set(extra))
                if not domain:
                    yield self.condition_type.empty()
                    continue
                for n in range(max(q.n, 1), t.max_len + 1):
                    parts = []
                    for k in domain:
                        known = q_seqs.get(k, ())
                        tails = itertools.product(range(t.max_val), repeat=n - len(known))
                        parts.append([known + tail for tail in tails])
                    for choice in itertools.product(*parts):
                        p = self.condition_type.of(dict(zip(domain, choice)), n)
                        if self.leq(q, p):
                            yield p

    def weakenings(self, p):
        yield self.condition_type.empty()
        for size in range(1, len(p.domain) + 1):
            for domain in itertools.combinations(p.domain, size):
                for n in range(1, p.n + 1):
                    yield self.condition_type.of({k: p[k][:n] for k in domain}, n)

    def random_extension(self, p, rng, policy):
        seqs = p.as_dict()
        n = p.n
        spare = [k for k in policy.indices if k not in seqs]
        if spare and (not seqs or rng.random() < policy.new_index_probability):
            index = rng.choice(spare)
            seqs[index] = tuple(rng.randrange(policy.max_val) for _ in range(max(n, 1)))
            if n == 0:
                return self.condition_type.of(seqs, 1)
        elif not seqs:
            index = max(policy.indices, default=-1) + 1
            return self.condition_type.of({index: (rng.randrange(policy.max_val),)}, 1)

        column = self.random_column(p.domain, rng, policy)
        extended = {}
        for k, seq in seqs.items():
            value = column[k] if k in column else rng.randrange(policy.max_val)
            extended[k] = seq + (value,)
        return self.condition_type.of(extended, n + 1)


def _binomial(n, k):
    from math import comb

    return comb(n, k)


_registry = {}


def registry():
    """The poset implementations keyed by PosetKind."""
    if not _registry:
        from app.services.cohen import CohenPoset
        from app.services.embed_product import ProductPoset
        from app.services.evdiff_poset import EvDiffPoset
        from app.services.scale_poset import ScalePoset

        for poset in (CohenPoset(), ScalePoset(), EvDiffPoset(), ProductPoset()):
            _registry[poset.kind] = poset
    return _registry


def get_poset(kind):
    if isinstance(kind, Poset):
        return kind
    return registry()[PosetKind(kind)]


def poset_of(condition):
    """The poset a condition belongs to."""
    kind = getattr(condition, "kind", None)
    if kind is None and hasattr(condition, "r"):
        kind = condition.r.kind
    return get_poset(kind)


def enumerate_universe(kind, t, cap=None):
    """
    Every condition of a poset kind within a truncation.

    Args:
        kind (PosetKind | str | Poset): The poset
        t (Truncation): Bounds on indices, length and values
        cap (int, optional): Size limit; defaults to the configured cap

    Returns:
        list: Conditions in deterministic order, without duplicates

    Raises:
        EnumerationOverflowError: If the universe is larger than the cap
    """
    poset = get_poset(kind)
    cap = _settings["enumeration_cap"] if cap is None else cap
    size = poset.universe_size(t)
    if size > cap:
        raise EnumerationOverflowError(size, cap)
    universe = list(poset.iter_universe(t))
    logger.debug(f"Enumerated {len(universe)} {poset.kind.value} conditions for {t}")
    return universe


def search_universe(kind, t, cap=None):
    """The universe bounded search runs over: t with max_len widened by the slack."""
    return enumerate_universe(kind, t.with_max_len(t.max_len + _settings["compatibility_slack"]), cap)


def bounded_meet(p, q, universe, leq):
    """
    Brute-force search for a common lower bound inside a universe.

    The answer is relative to the universe: None means no lower bound was
    found within its bounds.
    """
    for r in universe:
        if leq(p, r) and leq(q, r):
            return r
    return None


def is_antichain(conditions, leq, compatible):
    """True iff every distinct pair of conditions is incompatible."""
    members = list(conditions)
    for i, p in enumerate(members):
        for q in members[i + 1 :]:
            if p == q:
                continue
            if leq(p, q) or leq(q, p) or compatible(p, q):
                return False
    return True


def is_predense_below(antichain, p0, universe=None, poset=None):
    """
    Find a member of the antichain compatible with p0.

    Without a universe the poset's exact meet decides. With one, a common
    lower bound is searched in it and the answer is truncation-relative.

    Returns:
        PredensityWitness | PredensityFailure
    """
    poset = poset or poset_of(p0)
    bounded = universe is not None
    for member in antichain:
        if bounded:
            lower = bounded_meet(member, p0, universe, poset.leq)
        else:
            lower = poset.meet(member, p0)
        if lower is not None:
            return PredensityWitness(member, lower, truncation_relative=bounded)
    return PredensityFailure(p0, truncation_relative=bounded)


def antichain_report(antichain, probes, poset, universe=None):
    """Antichain status of a set plus its predensity below each probe."""
    members = tuple(antichain)
    return AntichainReport(
        antichain=members,
        is_antichain=is_antichain(members, poset.leq, poset.compatible),
        is_predense_in={p: is_predense_below(members, p, universe, poset) for p in probes},
    )


def incompatibility_graph(poset, universe):
    graph = nx.Graph()
    graph.add_nodes_from(range(len(universe)))
    for i, j in itertools.combinations(range(len(universe)), 2):
        if not poset.compatible(universe[i], universe[j]):
            graph.add_edge(i, j)
    return graph


def maximal_antichains(kind, t, universe=None):
    """
    All maximal antichains of a truncated universe.

    These are the maximal cliques of the incompatibility graph; maximality is
    relative to the truncated universe.
    """
    poset = get_poset(kind)
    universe = universe if universe is not None else enumerate_universe(poset, t)
    graph = incompatibility_graph(poset, universe)
    cliques = sorted(sorted(clique) for clique in nx.find_cliques(graph))
    return [tuple(universe[i] for i in clique) for clique in cliques]


def universe_stats(kind, t):
    """Universe size broken down by domain size."""
    poset = get_poset(kind)
    counts = {}
    for p in enumerate_universe(poset, t):
        size = poset.domain_size(p)
        counts[size] = counts.get(size, 0) + 1
    return dict(sorted(counts.items()))


def check_order_axioms(kind, universe, name=None):
    """
    Check the order and compatibility axioms over a universe.

    Checked: reflexivity, antisymmetry, transitivity of leq; symmetry and
    reflexivity of compatibility; comparable implies compatible; downward
    closure of the universe under weakening.
    """
    poset = get_poset(kind)
    report = PropertyReport(name or f"order axioms ({poset.kind.value})")
    members = list(universe)
    present = set(members)
    down = []
    for p in members:
        down.append({j for j, q in enumerate(members) if poset.leq(p, q)})

    for i, p in enumerate(members):
        report.record(i in down[i], ("reflexivity", p))
        report.record(poset.compatible(p, p), ("compatibility reflexive", p))
        for j in down[i]:
            if j != i:
                report.record(i not in down[j], ("antisymmetry", p, members[j]))
            report.record(down[j] <= down[i], ("transitivity", p, members[j]))
            report.record(poset.compatible(p, members[j]), ("comparable implies compatible", p, members[j]))
        for weaker in poset.weakenings(p):
            report.record(weaker in present, ("downward closure", p, weaker))

    for p, q in itertools.combinations(members, 2):
        report.record(
            poset.compatible(p, q) == poset.compatible(q, p), ("compatibility symmetric", p, q)
        )

    logger.info(f"{report.name}: {report.checked} checks, {report.failure_count} failures")
    return report
