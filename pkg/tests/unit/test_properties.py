"""Property-based checks over randomly drawn conditions."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from app.models import EvDiffCondition, GrowthPolicy, ScaleCondition
from app.models.product import d_violation
from app.services import poset_core
from app.services.embed_product import (
    densify,
    lift,
    proj,
    r_leq,
    random_d_condition,
    random_projection_strengthening,
)
from app.services.evdiff_poset import evdiff_amalgamate, evdiff_leq
from app.services.scale_poset import amalgamate, scale_leq

POLICY = GrowthPolicy(indices=(0, 1, 2, 3), max_val=5)


@st.composite
def sequence_conditions(draw, condition_type):
    domain = draw(st.sets(st.integers(0, 3), max_size=4))
    if not domain:
        return condition_type.empty()
    n = draw(st.integers(1, 3))
    entries = {k: tuple(draw(st.lists(st.integers(0, 4), min_size=n, max_size=n))) for k in sorted(domain)}
    return condition_type.of(entries, n)


@given(sequence_conditions(ScaleCondition), st.integers(0, 2**16))
def test_scale_amalgamation_of_random_extension(p0, seed):
    rng = random.Random(seed)
    poset = poset_core.get_poset("scale")
    indices = {k for k in p0.domain if rng.random() < 0.5}
    p2 = poset.restrict(p0, indices)
    for _ in range(rng.randrange(1, 4)):
        p2 = poset.random_extension(p2, rng, GrowthPolicy(indices=tuple(sorted(indices)) or (0,), max_val=5))
    if not set(p2.domain) <= indices or p2.n < p0.n:
        return
    p3 = amalgamate(p0, indices, p2)
    assert scale_leq(p0, p3) and scale_leq(p2, p3)


@given(sequence_conditions(EvDiffCondition), st.integers(0, 2**16))
def test_evdiff_amalgamation_of_random_extension(p0, seed):
    rng = random.Random(seed)
    poset = poset_core.get_poset("evdiff")
    indices = {k for k in p0.domain if rng.random() < 0.5}
    p2 = poset.restrict(p0, indices)
    for _ in range(rng.randrange(1, 4)):
        p2 = poset.random_extension(p2, rng, GrowthPolicy(indices=tuple(sorted(indices)) or (0,), max_val=5))
    if not set(p2.domain) <= indices or p2.n < p0.n:
        return
    p3 = evdiff_amalgamate(p0, indices, p2)
    assert evdiff_leq(p0, p3) and evdiff_leq(p2, p3)


@given(st.sampled_from(["scale", "evdiff"]), st.data())
def test_meet_is_a_lower_bound(kind, data):
    condition_type = ScaleCondition if kind == "scale" else EvDiffCondition
    poset = poset_core.get_poset(kind)
    p = data.draw(sequence_conditions(condition_type))
    q = data.draw(sequence_conditions(condition_type))
    lower = poset.meet(p, q)
    if lower is not None:
        assert poset.leq(p, lower) and poset.leq(q, lower)


@settings(max_examples=200)
@given(st.integers(0, 2**32), st.integers(0, 4))
def test_lift_postconditions(seed, steps):
    rng = random.Random(seed)
    r0 = random_d_condition(rng, POLICY, steps=steps)
    p1 = random_projection_strengthening(r0, rng, POLICY)
    r2 = lift(r0, p1)
    assert d_violation(r2.r, r2.n)[0] is None
    assert r_leq(r0, r2)
    assert evdiff_leq(p1, proj(r2))


@given(st.integers(0, 2**32))
def test_densify_is_idempotent(seed):
    rng = random.Random(seed)
    r = random_d_condition(rng, POLICY, steps=rng.randrange(4))
    assert densify(r) is r
    assert densify(r.r) == r
