"""
Command-line interface for the forcing workbench.

Commands: enumerate, verify, simulate, embed-demo, hasse. Every command
accepts a JSON run configuration through --config; explicit flags override
its values. Exit status is 0 when every check passed, 1 on a property
failure and 2 on usage, configuration or overflow errors.
"""

import json
import logging
import os
import random

import click

from app.app_factory import create_app
from app.models.status import PosetKind
from app.models.trace import GrowthPolicy
from app.models.truncation import Truncation
from app.services import embed_product, generic_sim, hasse, poset_core, verification
from app.services.evdiff_poset import evdiff_leq
from app.utils.errors import ConfigError, WorkbenchError
from app.utils.serialization import dumps

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2

_DEFAULTS = {
    "poset": "scale",
    "indices": "0,1",
    "max_len": 2,
    "max_val": 2,
    "seeds": None,
    "steps": None,
    "samples": None,
    "output": None,
}


def parse_indices(text):
    if isinstance(text, (list, tuple)):
        return tuple(int(i) for i in text)
    text = str(text).strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise ConfigError(f"Indices must be comma-separated naturals, got {text!r}") from e


def parse_seeds(text):
    """Seeds as "a..b" (inclusive), "a,b,c" or a list."""
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return [int(s) for s in text]
    text = str(text).strip()
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return list(range(int(low), int(high) + 1))
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        raise ConfigError(f"Seeds must look like 1..100 or 1,2,3, got {text!r}") from e


def load_run_config(config_file):
    """The JSON run configuration as a dict with snake_case keys; empty without a file."""
    if not config_file:
        return {}
    try:
        with open(config_file, encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read run configuration {config_file}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("Run configuration must be a JSON object")
    return {key.replace("-", "_"): value for key, value in data.items()}


def resolve_options(config_file, **flags):
    """Merge defaults, the JSON run configuration and explicit flags, in that order."""
    values = dict(_DEFAULTS)
    values.update(load_run_config(config_file))
    values.update({key: value for key, value in flags.items() if value is not None})

    try:
        values["poset"] = PosetKind(values["poset"])
    except ValueError as e:
        raise ConfigError(f"Unknown poset {values['poset']!r}") from e
    values["truncation"] = Truncation(
        parse_indices(values["indices"]), int(values["max_len"]), int(values["max_val"])
    )
    values["seeds"] = parse_seeds(values["seeds"])
    return values


def truncation_options(command):
    command = click.option("--config", "config_file", type=click.Path(), help="JSON run configuration")(command)
    command = click.option("--max-val", type=int, help="Exclusive bound on values")(command)
    command = click.option("--max-len", type=int, help="Bound on the committed length")(command)
    command = click.option("--indices", help="Comma-separated indices, e.g. 0,1,2")(command)
    command = click.option(
        "--poset", type=click.Choice([kind.value for kind in PosetKind]), help="Poset kind"
    )(command)
    return command


def _emit(text, output):
    if output:
        directory = os.path.dirname(output)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
        click.echo(f"Wrote {output}")
    else:
        click.echo(text, nl=False)


def _guarded(ctx, action):
    try:
        return action()
    except WorkbenchError as e:
        logger.error(f"{ctx.command.name} failed: {e}")
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_USAGE)


@click.group()
@click.option("--env", "config_name", default=None, help="Configuration name (development, testing, production)")
@click.pass_context
def cli(ctx, config_name):
    """Finite-shadow verification of forcing posets."""
    try:
        ctx.obj = create_app(config_name)
    except ConfigError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_USAGE)


@cli.command("enumerate")
@truncation_options
@click.option("--stats", is_flag=True, help="Print counts by domain size instead of conditions")
@click.option("--output", type=click.Path(), help="Write to a file instead of stdout")
@click.pass_context
def enumerate_command(ctx, config_file, stats, **flags):
    """List a truncated universe as canonical JSON lines."""

    def action():
        options = resolve_options(config_file, **flags)
        kind, t = options["poset"], options["truncation"]
        if stats:
            counts = poset_core.universe_stats(kind, t)
            text = dumps({"kind": kind.value, "total": sum(counts.values()), "by_domain_size": counts}) + "\n"
        else:
            text = "".join(dumps(p) + "\n" for p in poset_core.enumerate_universe(kind, t))
        _emit(text, options["output"])

    _guarded(ctx, action)


@cli.command()
@truncation_options
@click.option("--seeds", help="Simulation seeds, e.g. 1..100")
@click.option("--steps", type=int, help="Steps per simulated trace")
@click.option("--samples", type=int, help="Randomized cases per sampled suite")
@click.pass_context
def verify(ctx, config_file, **flags):
    """Run the property suites for a poset and print a pass/fail table."""
    workbench = ctx.obj

    def action():
        options = resolve_options(config_file, **flags)
        config = dict(workbench.config)
        if options["samples"] is not None:
            config["RANDOM_SAMPLES"] = int(options["samples"])
        if options["steps"] is not None:
            config["SIM_STEPS"] = int(options["steps"])
        if options["seeds"] is not None:
            config["SIM_SEEDS_LIST"] = options["seeds"]
        return verification.run_suites(options["poset"], options["truncation"], config)

    reports = _guarded(ctx, action)
    topic_width = max(len(report.topic) for report in reports)
    name_width = max(len(report.name) for report in reports)
    for report in reports:
        status = report.status.value.upper()
        counts = report.skipped if report.skipped else f"{report.checked - report.failure_count}/{report.checked}"
        click.echo(f"{report.topic.ljust(topic_width)}  {report.name.ljust(name_width)}  {status:7}  {counts}")
    if not all(report.passed for report in reports):
        ctx.exit(EXIT_FAILURE)


@cli.command()
@truncation_options
@click.option("--seeds", help="Seeds, e.g. 1..100")
@click.option("--steps", type=int, help="Steps per trace")
@click.option("--trace-dir", type=click.Path(), help="Write one JSON-lines trace log per seed")
@click.pass_context
def simulate(ctx, config_file, trace_dir, **flags):
    """Build seeded pseudo-generic filters and check their function families."""
    workbench = ctx.obj

    def action():
        options = resolve_options(config_file, **flags)
        kind = options["poset"]
        seeds = options["seeds"] or list(range(1, workbench.config["SIM_SEEDS"] + 1))
        steps = int(options["steps"] or workbench.config["SIM_STEPS"])
        policy = GrowthPolicy(indices=options["truncation"].indices or GrowthPolicy().indices)
        passed = 0
        for seed in seeds:
            trace = generic_sim.build_filter(kind, policy, generic_sim.standard_dense_sets(kind), steps, seed)
            ok = True
            if kind is not PosetKind.COHEN:
                family = generic_sim.derive_family(trace)
                ok = generic_sim.check_family(family, generic_sim.mode_for(kind)).passed
                ok = ok and generic_sim.chain_recovered(trace, family)
            passed += ok
            if trace_dir:
                generic_sim.write_trace_log(trace, os.path.join(trace_dir, f"{kind.value}-{seed}.jsonl"))
        return passed, len(seeds)

    passed, total = _guarded(ctx, action)
    click.echo(f"{passed}/{total} family checks pass")
    if passed != total:
        ctx.exit(EXIT_FAILURE)


@cli.command("embed-demo")
@click.option("--config", "config_file", type=click.Path(), help="JSON run configuration")
@click.option("--samples", type=int, help="Number of sampled conditions  [default: 5]")
@click.option("--seed", type=int, help="Random seed  [default: 0]")
@click.pass_context
def embed_demo(ctx, config_file, samples, seed):
    """Sample r in D, project, strengthen the projection, lift and re-check."""
    run_config = _guarded(ctx, lambda: load_run_config(config_file))
    samples = samples if samples is not None else int(run_config.get("samples", 5))
    seed = seed if seed is not None else int(run_config.get("seed", 0))
    rng = random.Random(seed)
    policy = GrowthPolicy()
    failures = 0
    for k in range(samples):
        r0 = embed_product.random_d_condition(rng, policy, steps=rng.randrange(1, 4))
        p0 = embed_product.proj(r0)
        p1 = embed_product.random_projection_strengthening(r0, rng, policy)
        r2 = embed_product.lift(r0, p1)
        checks = {
            "in_D": bool(embed_product.in_d(r2.r)),
            "below_r0": embed_product.r_leq(r0, r2),
            "proj_below_p1": evdiff_leq(p1, embed_product.proj(r2)),
        }
        failures += not all(checks.values())
        click.echo(
            dumps(
                {
                    "sample": k,
                    "r": r0.to_dict(),
                    "proj": p0.to_dict(),
                    "naive_proj": embed_product.naive_proj(r0).to_dict(),
                    "p1": p1.to_dict(),
                    "lift": r2.to_dict(),
                    "checks": checks,
                }
            )
        )
    if failures:
        ctx.exit(EXIT_FAILURE)


@cli.command("hasse")
@truncation_options
@click.option("--output", type=click.Path(), help="Write the DOT file here instead of stdout")
@click.pass_context
def hasse_command(ctx, config_file, **flags):
    """Emit the Hasse diagram of a truncated universe in DOT format."""

    def action():
        options = resolve_options(config_file, **flags)
        kind, t = options["poset"], options["truncation"]
        graph = hasse.hasse_graph(kind, poset_core.enumerate_universe(kind, t))
        _emit(hasse.to_dot(graph, f"{kind.value}"), options["output"])

    _guarded(ctx, action)


def main():
    cli(prog_name="workbench")
