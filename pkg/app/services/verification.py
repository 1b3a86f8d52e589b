"""
Property suites.

Each suite sweeps a truncated universe (exhaustively) or a seeded random
sample and returns a PropertyReport. run_suites picks the suites that apply
to a poset kind.
"""

import itertools
import logging
import random
import time

from app.models.iteration import Environment, QCondition
from app.models.product import d_violation
from app.models.status import PosetKind, SideMode
from app.models.trace import GrowthPolicy
from app.models.truncation import PropertyReport, Truncation
from app.services import embed_product, generic_sim, iteration, poset_core
from app.services.evdiff_poset import evdiff_amalgamate, evdiff_leq
from app.services.scale_poset import amalgamate, scale_leq

logger = logging.getLogger(__name__)

_AMALGAMATORS = {PosetKind.SCALE: amalgamate, PosetKind.EVDIFF: evdiff_amalgamate}


def _subsets(indices):
    for size in range(len(indices) + 1):
        yield from itertools.combinations(indices, size)


def _finish(report, started):
    report.notes["seconds"] = round(time.monotonic() - started, 3)
    level = logging.INFO if report.passed else logging.WARNING
    logger.log(level, f"{report.name}: {report.checked} checked, {report.failure_count} failed")
    for example in report.failures:
        logger.warning(f"{report.name} failure: {example}")
    return report


def order_axioms(kind, t):
    started = time.monotonic()
    poset = poset_core.get_poset(kind)
    report = poset_core.check_order_axioms(poset, poset_core.enumerate_universe(poset, t))
    report.notes["sizes"] = {str(k): v for k, v in poset_core.universe_stats(poset, t).items()}
    return _finish(report, started)


def amalgamation_sweep(kind, t, p2_max_len=None):
    """
    Amalgamate every p0 with every long enough p2 below p0|J, for every J.

    In eventually-different mode the fresh-value choice is checked as well:
    at each new column an index of dom(p0) outside J differs from every
    other index of the result.
    """
    started = time.monotonic()
    kind = PosetKind(kind)
    poset = poset_core.get_poset(kind)
    combine = _AMALGAMATORS[kind]
    p2_max_len = p2_max_len or t.max_len + 1
    report = PropertyReport(f"amalgamation ({kind.value})")
    fresh = PropertyReport(f"fresh values ({kind.value})")

    for p0 in poset_core.enumerate_universe(poset, t):
        for indices in _subsets(t.indices):
            reduced = poset.restrict(p0, indices)
            sub = Truncation(indices, p2_max_len, t.max_val)
            for p2 in poset.strengthenings(reduced, sub):
                if p2.entries and p2.n < p0.n:
                    continue
                p3 = combine(p0, indices, p2)
                report.record(poset.leq(p0, p3) and poset.leq(p2, p3), (p0, indices, p2, p3))
                if kind is PosetKind.EVDIFF:
                    fresh.record(_fresh_ok(p0, indices, p3), (p0, indices, p2, p3))

    _finish(report, started)
    if kind is PosetKind.EVDIFF:
        return [report, _finish(fresh, started)]
    return [report]


def _fresh_ok(p0, indices, p3):
    outside = [alpha for alpha in p0.domain if alpha not in indices]
    for i in range(p0.n, p3.n):
        for alpha in outside:
            if any(p3[beta][i] == p3[alpha][i] for beta in p3.domain if beta != alpha):
                return False
    return True


def forcing_clause_sweep(kind, t):
    started = time.monotonic()
    poset = poset_core.get_poset(kind)
    report = PropertyReport(f"forcing clause ({poset.kind.value})")
    for p in poset_core.enumerate_universe(poset, t):
        for q in poset.strengthenings(p, t):
            report.record(poset.forcing_clause_holds(p, q), (p, q))
    return _finish(report, started)


def regularity_witness(kind, p0, indices, antichain):
    """
    A member of the antichain and a common lower bound with p0, built from
    the restriction of p0 to J.
    """
    poset = poset_core.get_poset(kind)
    reduced = poset.restrict(p0, indices)
    for member in antichain:
        lower = poset.meet(member, reduced)
        if lower is None:
            continue
        if poset.kind is PosetKind.COHEN:
            return member, poset.meet(p0, lower)
        if lower.entries and lower.n < p0.n:
            lower = poset.pad_to(lower, p0.n, indices)
        return member, _AMALGAMATORS[poset.kind](p0, indices, lower)
    return None


def regularity_sweep(kind, t, sub_indices=None, bounded_search=False):
    """
    Every maximal antichain of the truncated P(J) stays predense in P(I).

    Checked twice: through is_predense_below and through the reduction
    p0 | J followed by amalgamation. With bounded_search the exact meet is
    cross-checked by search in t widened by the compatibility slack; those
    results are truncation-relative.
    """
    started = time.monotonic()
    poset = poset_core.get_poset(kind)
    sub_indices = tuple(sub_indices if sub_indices is not None else t.indices[:1])
    sub = t.with_indices(sub_indices)
    report = PropertyReport(f"regularity of restriction ({poset.kind.value})")
    probes = poset_core.enumerate_universe(poset, t)
    search = poset_core.search_universe(poset, t) if bounded_search else None
    antichains = poset_core.maximal_antichains(poset, sub)
    for antichain in antichains:
        for p0 in probes:
            found = poset_core.is_predense_below(antichain, p0, poset=poset)
            witness = regularity_witness(poset, p0, sub_indices, antichain)
            ok = found.found and witness is not None
            if ok:
                member, lower = witness
                ok = poset.leq(p0, lower) and poset.leq(member, lower)
            if search is not None:
                searched = poset_core.is_predense_below(antichain, p0, search, poset)
                ok = ok and searched.found and searched.truncation_relative
            report.record(ok, (antichain, p0))
    report.notes["antichains"] = len(antichains)
    report.notes["truncation relative"] = search is not None
    return _finish(report, started)


def monotonicity_exhaustive(t):
    """proj is monotone on every pair r0 >= r1 of D inside t."""
    started = time.monotonic()
    report = PropertyReport("projection monotonicity (exhaustive)")
    for r1 in embed_product.enumerate_d(t):
        p1 = embed_product.proj(r1)
        for r0 in embed_product.d_ancestors(r1):
            report.record(evdiff_leq(embed_product.proj(r0), p1), (r0, r1))
    return _finish(report, started)


def monotonicity_random(samples, seed=0, policy=None):
    started = time.monotonic()
    rng = random.Random(seed)
    policy = policy or GrowthPolicy()
    report = PropertyReport("projection monotonicity (random)")
    for _ in range(samples):
        r1 = embed_product.random_d_condition(rng, policy, steps=rng.randrange(1, 5))
        r0 = rng.choice(list(embed_product.d_ancestors(r1)))
        report.record(evdiff_leq(embed_product.proj(r0), embed_product.proj(r1)), (r0, r1))
    return _finish(report, started)


def lifting_random(samples, seed=0, policy=None):
    """lift(r0, p1) lies in D, below r0, and projects below p1."""
    started = time.monotonic()
    rng = random.Random(seed)
    policy = policy or GrowthPolicy()
    report = PropertyReport("lifting (random)")
    for _ in range(samples):
        r0 = embed_product.random_d_condition(rng, policy, steps=rng.randrange(0, 4))
        p1 = embed_product.random_projection_strengthening(r0, rng, policy)
        r2 = embed_product.lift(r0, p1)
        ok = (
            d_violation(r2.r, r2.n)[0] is None
            and embed_product.r_leq(r0, r2)
            and evdiff_leq(p1, embed_product.proj(r2))
        )
        report.record(ok, (r0, p1, r2))
    return _finish(report, started)


def densify_random(samples, seed=0, policy=None):
    started = time.monotonic()
    rng = random.Random(seed)
    policy = policy or GrowthPolicy()
    report = PropertyReport("densify")
    for _ in range(samples):
        r = embed_product.random_r_condition(rng, policy)
        d = embed_product.densify(r)
        ok = d_violation(d.r, d.n)[0] is None and embed_product.r_leq(r, d)
        ok = ok and embed_product.densify(d) == d
        report.record(ok, (r, d))
    return _finish(report, started)


def standard_environments(indices, max_val):
    """A fixed family of environments with and without table collisions."""
    indices = tuple(indices)
    top = max(max_val - 1, 0)
    return [
        Environment(0, {}),
        Environment.of({k: (0,) for k in indices}, 1),
        Environment.of({k: (k % max_val, top) for k in indices}, 2),
        Environment.of({k: (top, (k + 1) % max_val) for k in indices}, 2),
    ]


def sampled_environments(indices, max_val, samples=40, seed=0):
    """
    Every table of length 1 over the indices, then seeded random tables of
    length 2.
    """
    indices = tuple(indices)
    rng = random.Random(seed)
    environments = [Environment(0, {})]
    for column in itertools.product(range(max_val), repeat=len(indices)):
        environments.append(Environment.of({k: (v,) for k, v in zip(indices, column)}, 1))
    for _ in range(samples):
        tables = {k: (rng.randrange(max_val), rng.randrange(max_val)) for k in indices}
        environments.append(Environment.of(tables, 2))
    return environments


def separativity_sweep(t, environments=None, depth=2):
    """
    For every q0 not extending q1, separate(q0, q1) extends q0 and has no
    common extension with q1, cross-checked by bounded search.
    """
    started = time.monotonic()
    report = PropertyReport("separativity (evdiff)")
    environments = environments or standard_environments(t.indices, t.max_val)
    universe = list(iteration.enumerate_q_universe(t))
    for env in environments:
        for q0, q1 in itertools.product(universe, repeat=2):
            if iteration.q_leq(q1, q0, env):
                continue
            q2 = iteration.separate(q0, q1, env)
            ok = iteration.q_leq(q0, q2, env) and not iteration.q_compatible(q2, q1, env)
            ok = ok and iteration.bounded_common_extension(q2, q1, env, depth=depth) is None
            report.record(ok, (env, q0, q1, q2))
    return _finish(report, started)


def compatibility_oracle_sweep(t, mode=SideMode.EVDIFF, environments=None, depth=2):
    """q_compatible agrees with bounded common-extension search."""
    started = time.monotonic()
    mode = SideMode(mode)
    report = PropertyReport(f"residue compatibility ({mode.value})")
    environments = environments or standard_environments(t.indices, t.max_val)
    universe = list(iteration.enumerate_q_universe(t))
    for env in environments:
        for q0, q1 in itertools.combinations(universe, 2):
            exact = iteration.q_compatible(q0, q1, env, mode)
            found = iteration.bounded_common_extension(q0, q1, env, mode, depth) is not None
            report.record(exact == found, (env, q0, q1))
    return _finish(report, started)


def non_density_random(t, samples, seed=0):
    """The pigeonhole witness is never extended by a member of the family."""
    started = time.monotonic()
    rng = random.Random(seed)
    report = PropertyReport("non-density witness")
    universe = list(iteration.enumerate_q_universe(t))
    pool = tuple(t.indices) + (max(t.indices, default=-1) + 1,)
    env = standard_environments(pool, t.max_val)[2]
    for _ in range(samples):
        family = [q for q in rng.sample(universe, rng.randrange(0, 5)) if pool[-1] not in q.a]
        gamma = iteration.find_unused_index(family, pool)
        q = rng.choice(universe)
        if gamma in q.a:
            q = QCondition(q.s, q.a - {gamma})
        witness = iteration.non_dense_witness(family, gamma, q, env)
        report.record(not any(iteration.q_leq(witness, e, env) for e in family), (family, gamma, q))
    return _finish(report, started)


def flat_isomorphism_sweep(t, mode=SideMode.EVDIFF):
    """flatten is a bijection onto the sequence poset that preserves and reflects the order."""
    started = time.monotonic()
    mode = SideMode(mode)
    leq = evdiff_leq if mode is SideMode.EVDIFF else scale_leq
    report = PropertyReport(f"flat isomorphism ({mode.value})")
    universe = iteration.enumerate_flat_universe(t)
    images = [iteration.flatten(r, mode) for r in universe]
    report.notes["injective"] = len(set(images)) == len(images)
    for r, p in zip(universe, images):
        report.record(iteration.unflatten(p) == r, ("round trip", r))
    for (r0, p0), (r1, p1) in itertools.product(zip(universe, images), repeat=2):
        report.record(iteration.flat_leq(r0, r1, mode) == leq(p0, p1), (r0, r1))
    return _finish(report, started)


def densify_iteration_random(samples, seed=0, mode=SideMode.EVDIFF, policy=None):
    """densify_iteration lands below every raw coordinate it was given."""
    started = time.monotonic()
    rng = random.Random(seed)
    mode = SideMode(mode)
    policy = policy or GrowthPolicy()
    report = PropertyReport(f"iteration density ({mode.value})")
    for _ in range(samples):
        raw = {}
        for beta in policy.indices:
            if rng.random() < 0.5:
                s = tuple(rng.randrange(policy.max_val) for _ in range(rng.randrange(4)))
                a = {g for g in policy.indices if g < beta and rng.random() < 0.5}
                raw[beta] = (s, a)
        r = iteration.densify_iteration(raw, mode)
        env = Environment.from_sequences({k: s for k, s, _ in r.entries}, r.n)
        ok = all(
            iteration.q_leq(QCondition(s, a), QCondition(*r.coordinate(beta)), env, mode)
            for beta, (s, a) in raw.items()
        )
        report.record(ok, (raw, r))
    return _finish(report, started)


def simulation_sweep(kind, seeds, steps, policy=None):
    """
    Build one trace per seed and check the chain, the derived family and
    the recovery of the chain from the family.
    """
    started = time.monotonic()
    kind = PosetKind(kind)
    poset = poset_core.get_poset(kind)
    policy = policy or GrowthPolicy()
    report = PropertyReport(f"generic simulation ({kind.value})")
    strict = 0
    for seed in seeds:
        trace = generic_sim.build_filter(kind, policy, generic_sim.standard_dense_sets(kind), steps, seed)
        chain = trace.chain
        ok = all(poset.leq(p, q) and p != q for p, q in zip(chain, chain[1:]))
        ok = ok and len(trace.met) == len(generic_sim.standard_dense_sets(kind))
        if kind is not PosetKind.COHEN:
            family = generic_sim.derive_family(trace)
            family_report = generic_sim.check_family(family, generic_sim.mode_for(kind))
            ok = ok and family_report.passed and generic_sim.chain_recovered(trace, family)
            strict += sum(family_report.strict_observed.values())
        report.record(ok, trace)
    if kind is PosetKind.SCALE:
        report.notes["strict pairs observed"] = strict
    return _finish(report, started)


PRODUCT_AXIOM_LIMIT = 5_000


def _topic(topic, *reports):
    for report in reports:
        report.topic = topic
    return list(reports)


def run_suites(kind, t, config):
    """
    Run the suites that apply to a poset kind.

    Args:
        kind (PosetKind | str): The poset
        t (Truncation): Truncation for the exhaustive sweeps
        config (dict): RANDOM_SAMPLES, SIM_SEEDS, SIM_STEPS, COMPATIBILITY_SLACK

    Returns:
        list: PropertyReport per suite, in execution order, each tagged
        with the construction it exercises
    """
    kind = PosetKind(kind)
    samples = config.get("RANDOM_SAMPLES", 10_000)
    seeds = config.get("SIM_SEEDS_LIST") or range(1, config.get("SIM_SEEDS", 100) + 1)
    steps = config.get("SIM_STEPS", 50)
    depth = config.get("COMPATIBILITY_SLACK", 2)
    logger.info(f"Running {kind.value} suites on {t}")

    reports = []
    if kind is PosetKind.COHEN:
        reports += _topic("order", order_axioms(kind, t))
        reports += _topic("restriction", regularity_sweep(kind, t))
    elif kind in (PosetKind.SCALE, PosetKind.EVDIFF):
        mode = generic_sim.mode_for(kind)
        reports += _topic("order", order_axioms(kind, t))
        reports += _topic("amalgamation", *amalgamation_sweep(kind, t))
        reports += _topic("forcing clause", forcing_clause_sweep(kind, t))
        reports += _topic("restriction", regularity_sweep(kind, t))
        reports += _topic(
            "iteration",
            flat_isomorphism_sweep(t, mode),
            densify_iteration_random(samples, mode=mode),
            compatibility_oracle_sweep(t, mode, depth=depth),
        )
        if kind is PosetKind.EVDIFF:
            reports += _topic("iteration", separativity_sweep(t, depth=depth), non_density_random(t, samples))
    else:
        poset = poset_core.get_poset(kind)
        size = poset.universe_size(t)
        if size <= PRODUCT_AXIOM_LIMIT:
            axioms = order_axioms(kind, t)
        else:
            reason = f"universe of {size} conditions exceeds {PRODUCT_AXIOM_LIMIT}"
            logger.warning(f"Skipping order axioms (r): {reason}")
            axioms = PropertyReport("order axioms (r)", skipped=reason)
        reports += _topic("order", axioms)
        reports += _topic(
            "embedding",
            monotonicity_exhaustive(t),
            monotonicity_random(samples),
            lifting_random(samples),
            densify_random(samples),
        )
    reports += _topic("generic filter", simulation_sweep(kind, seeds, steps))
    return reports
