"""
The product poset R, its dense set D and the projection of D onto the
eventually-different poset, including the lifting construction that makes
the projection a complete embedding at the level of conditions.
"""

import itertools
import logging
from dataclasses import dataclass

from app.models.condition import EvDiffCondition
from app.models.product import DCondition, RCondition, d_violation, level_collisions, prefixes
from app.models.status import PosetKind
from app.services.evdiff_poset import EvDiffPoset, evdiff_leq
from app.services.poset_core import Poset
from app.utils.errors import LiftPreconditionError, MalformedDError

logger = logging.getLogger(__name__)


def _as_r(r):
    return r.r if isinstance(r, DCondition) else r


def _extends(small, large):
    return all(k in large and large[k] == v for k, v in small.items())


def r_leq(r0, r1):
    """True iff r1 extends r0 coordinatewise; cutoffs must agree exactly."""
    r0, r1 = _as_r(r0), _as_r(r1)
    seqs1 = r1.seq_map
    for index, seq in r0.seqs:
        if index not in seqs1 or seqs1[index][: len(seq)] != seq:
            return False
    return _extends(r0.cutoff_map, r1.cutoff_map) and _extends(r0.coder_map, r1.coder_map)


def r_meet(r0, r1):
    """Coordinatewise union, or None when r0 and r1 are incompatible in R."""
    r0, r1 = _as_r(r0), _as_r(r1)
    seqs = r0.seq_map
    for index, seq in r1.seqs:
        other = seqs.get(index, ())
        short, long = sorted((other, seq), key=len)
        if long[: len(short)] != short:
            return None
        seqs[index] = long
    cutoffs = r0.cutoff_map
    coder = r0.coder_map
    for mapping, extra in ((cutoffs, r1.cutoff_map), (coder, r1.coder_map)):
        for key, value in extra.items():
            if mapping.setdefault(key, value) != value:
                return None
    if level_collisions(coder.items()):
        return None
    return RCondition.of(seqs, cutoffs, coder)


@dataclass(frozen=True)
class DMembership:
    """Outcome of a D-membership check: the first failed clause, if any."""

    n: int
    clause: str = None

    @property
    def member(self):
        return self.clause is None

    def __bool__(self):
        return self.member


def in_d(r):
    """Check every clause of D and report the first violation."""
    if isinstance(r, DCondition):
        return DMembership(r.n)
    clause, n = d_violation(r)
    return DMembership(n or 0, clause)


def _smallest_unused(taken):
    value = 0
    while value in taken:
        value += 1
    return value


def complete_coder(coder, seqs):
    """Extend coder to every prefix of seqs with the smallest unused value per level."""
    coder = dict(coder)
    used = {}
    for key, value in coder.items():
        used.setdefault(len(key), set()).add(value)
    wanted = sorted({p for seq in seqs for p in prefixes(seq)}, key=lambda s: (len(s), s))
    for key in wanted:
        if key not in coder:
            level = used.setdefault(len(key), set())
            coder[key] = _smallest_unused(level)
            level.add(coder[key])
    return coder


def _fresh_index(used):
    return _smallest_unused(set(used))


def densify(r):
    """
    A member of D below r.

    Missing cutoffs and sequences are added, coder keys that are not
    prefixes of any sequence get a new index of their own, sequences are
    padded with zeros to a common length, and the coder is completed with the
    smallest unused value on each level. Identity on D.
    """
    if isinstance(r, DCondition):
        return r
    clause, n = d_violation(r)
    if clause is None:
        return DCondition(r, n)

    seqs = r.seq_map
    cutoffs = r.cutoff_map
    coder = r.coder_map
    for index in cutoffs:
        seqs.setdefault(index, ())

    covered = {p for seq in seqs.values() for p in prefixes(seq)}
    orphans = [key for key in coder if key not in covered]
    maximal = [key for key in orphans if not any(o != key and o[: len(key)] == key for o in orphans)]
    for key in sorted(maximal):
        seqs[_fresh_index(set(seqs) | set(cutoffs))] = key

    lengths = [len(s) for s in seqs.values()] + list(cutoffs.values()) + [len(k) for k in coder]
    n = max(lengths + [1])
    padded = {k: seq + (0,) * (n - len(seq)) for k, seq in seqs.items()}
    if len(set(padded.values())) != len(padded):
        padded = {k: seq + (position,) for position, (k, seq) in enumerate(sorted(padded.items()))}
        n += 1
    for index in padded:
        cutoffs.setdefault(index, n)

    result = DCondition(RCondition.of(padded, cutoffs, complete_coder(coder, padded.values())), n)
    logger.debug(f"Densified {r} to {result}")
    return result


def proj(r):
    """
    Project a member of D onto the eventually-different poset.

    Below the cutoff of alpha the projection copies the sequence; from the
    cutoff on it reads the coder at the prefix of length i + 1.

    Raises:
        MalformedDError: If r is not in D
    """
    r = _project_input(r)
    coder = r.r.coder_map
    cutoffs = r.r.cutoff_map
    entries = {}
    for index, seq in r.r.seqs:
        values = []
        for i in range(r.n):
            if i < cutoffs[index]:
                values.append(seq[i])
            else:
                key = seq[: i + 1]
                if key not in coder:
                    raise MalformedDError(f"coder is undefined at {key}")
                values.append(coder[key])
        entries[index] = tuple(values)
    return EvDiffCondition.of(entries, r.n if entries else 0)


def naive_proj(r):
    """The variant reading the coder one position early, at the prefix of length i."""
    r = _project_input(r)
    coder = r.r.coder_map
    cutoffs = r.r.cutoff_map
    entries = {}
    for index, seq in r.r.seqs:
        entries[index] = tuple(
            seq[i] if i < cutoffs[index] else coder[seq[:i]] for i in range(r.n)
        )
    return EvDiffCondition.of(entries, r.n if entries else 0)


def _project_input(r):
    if isinstance(r, DCondition):
        return r
    clause, n = d_violation(r)
    if clause is not None:
        raise MalformedDError(clause, f"Not in D: {clause}")
    return DCondition(r, n)


def lift(r0, p1):
    """
    A member of D below r0 whose projection lies below p1.

    Old sequences are extended to length n_p1 + 1 with the smallest values
    keeping all sequences distinct and their cutoffs are kept. New indices of
    p1 get p1's sequence plus one distinguishing entry and cutoff n_p1. The
    coder is forced to p1's values on the prefixes of old sequences longer
    than n_r0 and completed with the smallest unused value elsewhere.

    Args:
        r0 (DCondition): Member of D
        p1 (EvDiffCondition): Condition below proj(r0)

    Returns:
        DCondition: r2 with n_r2 = n_p1 + 1

    Raises:
        LiftPreconditionError: If p1 does not strengthen proj(r0)
    """
    r0 = _project_input(r0)
    p0 = proj(r0)
    if not evdiff_leq(p0, p1):
        raise LiftPreconditionError("p1 must strengthen proj(r0)")

    target = p1.n
    old = r0.r.seq_map
    p1_seqs = p1.as_dict()
    stems = {}
    for index in p1.domain:
        if index in old:
            stems[index] = old[index] + (0,) * (target - r0.n)
        else:
            stems[index] = p1_seqs[index]

    seqs = {}
    for index in sorted(stems):
        taken = {seq[-1] for seq in seqs.values() if seq[:-1] == stems[index]}
        seqs[index] = stems[index] + (_smallest_unused(taken),)

    cutoffs = r0.r.cutoff_map
    for index in seqs:
        cutoffs.setdefault(index, target)

    coder = r0.r.coder_map
    for index in old:
        for length in range(r0.n + 1, target + 1):
            coder[seqs[index][:length]] = p1_seqs[index][length - 1]
    coder = complete_coder(coder, seqs.values())

    r2 = DCondition(RCondition.of(seqs, cutoffs, coder), target + 1)
    logger.debug(f"Lifted {r0} along {p1} to {r2}")
    return r2


def enumerate_d(t):
    """
    Every member of D inside a truncation.

    Sequences use t.indices, length 1..t.max_len and values below t.max_val;
    coder values are drawn below t.max_val as well.
    """
    yield DCondition(RCondition(), 0)
    for size in range(1, len(t.indices) + 1):
        for domain in itertools.combinations(t.indices, size):
            for n in range(1, t.max_len + 1):
                sequences = list(itertools.product(range(t.max_val), repeat=n))
                for choice in itertools.permutations(sequences, size):
                    seqs = dict(zip(domain, choice))
                    levels = {}
                    for key in sorted({p for seq in choice for p in prefixes(seq)}):
                        levels.setdefault(len(key), []).append(key)
                    level_options = [
                        list(itertools.permutations(range(t.max_val), len(keys)))
                        for _, keys in sorted(levels.items())
                    ]
                    keys = [key for _, ks in sorted(levels.items()) for key in ks]
                    for cutoffs in itertools.product(range(n + 1), repeat=size):
                        for values in itertools.product(*level_options):
                            flat = [v for level in values for v in level]
                            yield DCondition(
                                RCondition.of(seqs, dict(zip(domain, cutoffs)), zip(keys, flat)), n
                            )


def d_ancestors(r1):
    """
    Every member of D above r1.

    These are exactly the restrictions of r1 to a sub-domain and a shorter
    common length whose cutoffs still fit and whose sequences stay distinct.
    """
    r1 = _project_input(r1)
    yield DCondition(RCondition(), 0)
    seqs = r1.r.seq_map
    cutoffs = r1.r.cutoff_map
    coder = r1.r.coder_map
    for size in range(1, len(seqs) + 1):
        for domain in itertools.combinations(sorted(seqs), size):
            for m in range(1, r1.n + 1):
                if any(cutoffs[k] > m for k in domain):
                    continue
                cut = {k: seqs[k][:m] for k in domain}
                if len(set(cut.values())) != len(cut):
                    continue
                keys = {p for seq in cut.values() for p in prefixes(seq)}
                yield DCondition(
                    RCondition.of(cut, {k: cutoffs[k] for k in domain}, {k: coder[k] for k in keys}), m
                )


class ProductPoset(Poset):
    """R restricted to its dense set D."""

    kind = PosetKind.PRODUCT
    condition_type = DCondition

    def top(self):
        return DCondition(RCondition(), 0)

    def leq(self, p0, p1):
        # n is the common sequence length, so it only adds information when r is empty
        return p0.n <= p1.n and r_leq(p0, p1)

    def meet(self, p, q):
        union = r_meet(p, q)
        return None if union is None else densify(union)

    def compatible(self, p, q):
        return r_meet(p, q) is not None

    def universe_size(self, t):
        """Upper bound on |D| inside t, ignoring distinctness and injectivity."""
        total = 1
        for size in range(1, len(t.indices) + 1):
            subsets = itertools.combinations(t.indices, size)
            count = sum(1 for _ in subsets)
            for n in range(1, t.max_len + 1):
                total += count * t.max_val ** (n * size) * (n + 1) ** size * t.max_val ** (1 + n * size)
        return total

    def iter_universe(self, t):
        return enumerate_d(t)

    def weakenings(self, p):
        return d_ancestors(p)

    def domain_size(self, p):
        return len(_as_r(p).seqs)

    def random_extension(self, p, rng, policy):
        return random_d_extension(p, rng, policy)


def random_d_extension(r, rng, policy):
    """A member of D strictly below r, one column longer."""
    r = _project_input(r)
    seqs = r.r.seq_map
    cutoffs = r.r.cutoff_map
    spare = [k for k in policy.indices if k not in seqs]
    if not seqs and not spare:
        spare = [_fresh_index(policy.indices)]
    extended = {k: seq + (rng.randrange(policy.max_val),) for k, seq in seqs.items()}
    if spare and (not seqs or rng.random() < policy.new_index_probability):
        index = rng.choice(spare)
        extended[index] = tuple(rng.randrange(policy.max_val) for _ in range(r.n + 1))
        cutoffs[index] = rng.randrange(r.n + 2)
    return densify(RCondition.of(extended, cutoffs, r.r.coder_map))


def random_d_condition(rng, policy, steps=3):
    r = DCondition(RCondition(), 0)
    for _ in range(steps):
        r = random_d_extension(r, rng, policy)
    return r


def random_projection_strengthening(r0, rng, policy, steps=2):
    """A random p1 below proj(r0): the input shape lift expects."""
    poset = EvDiffPoset()
    p = proj(r0)
    for _ in range(rng.randrange(steps + 1)):
        p = poset.random_extension(p, rng, policy)
    return p


def random_r_condition(rng, policy):
    """A random R-condition, usually outside D: ragged sequences, partial cutoffs and coder."""
    seqs = {}
    cutoffs = {}
    for index in policy.indices:
        roll = rng.random()
        if roll < 0.4:
            seqs[index] = tuple(rng.randrange(policy.max_val) for _ in range(rng.randrange(4)))
        if roll < 0.2 or 0.8 < roll:
            cutoffs[index] = rng.randrange(4)
    coder = {}
    used = {}
    for _ in range(rng.randrange(4)):
        key = tuple(rng.randrange(policy.max_val) for _ in range(rng.randrange(3)))
        level = used.setdefault(len(key), set())
        if key in coder:
            continue
        value = rng.randrange(policy.max_val + 4)
        if value not in level:
            coder[key] = value
            level.add(value)
    return RCondition.of(seqs, cutoffs, coder)
