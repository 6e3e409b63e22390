"""Command-line surface: optimize, min-nodes, sweep, compare, verify, plot.

Exit codes: 0 success, 2 config error, 3 invalid scenario, 4 search
exhausted, 5 pairing/test error, 6 I/O error. Commands are deterministic
for identical inputs and seed; configs are parsed fully before any output
file is touched.
"""

from __future__ import annotations

import csv
import functools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import io
from .evaluation import CoverageSampler, fitness
from .geometry import InvalidScenarioError
from .optimizers import ENGINES, run_engine
from .render import render_svg
from .search import (
    SAMPLER_SEED_OFFSET,
    VERIFY_SEED_OFFSET,
    FeasibilityReport,
    SearchExhaustedError,
    find_min_nodes,
    verify_deployment,
)
from .stats import PairedSample, UndefinedTestError, wilcoxon_signed_rank


class PairingError(ValueError):
    """Two sweep columns cannot be paired (mismatched scenario/seed sets)."""


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            fn(*args, **kwargs)
        except io.ConfigError as exc:
            click.echo(f"config error: {exc}", err=True)
            sys.exit(2)
        except InvalidScenarioError as exc:
            click.echo(f"invalid scenario: {exc}", err=True)
            sys.exit(3)
        except SearchExhaustedError as exc:
            click.echo(f"search exhausted: {exc}", err=True)
            sys.exit(4)
        except (UndefinedTestError, PairingError) as exc:
            click.echo(f"comparison error: {exc}", err=True)
            sys.exit(5)
        except OSError as exc:
            click.echo(f"io error: {exc}", err=True)
            sys.exit(6)

    return wrapper


@click.group()
def main():
    """Seeded sensor-placement optimization and comparison harness."""


_algorithm_arg = click.argument("algorithm", type=click.Choice(sorted(ENGINES)))


def _resolve(config_path, scenario_id, seed, override_rc):
    """Config, scenario and seed shared by the run commands."""
    config = io.load_config(config_path)
    spec = config.scenario(scenario_id)
    scenario = spec.to_scenario(config.energy, rc_check_override=override_rc)
    run_seed = config.seeds[0] if seed is None else seed
    return config, scenario, run_seed


@main.command()
@click.argument("config_path", type=click.Path())
@click.argument("scenario_id")
@_algorithm_arg
@click.argument("n_nodes", type=int)
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.option("--seed", type=int, default=None, help="Override the config's first seed.")
@click.option("--override-rc-check", is_flag=True, help="Allow rc < 2*rs scenarios.")
@_guard
def optimize(config_path, scenario_id, algorithm, n_nodes, out_dir, seed, override_rc_check):
    """Run one engine at a fixed node count and write its artifacts."""
    if n_nodes < 1:
        raise click.BadParameter("n_nodes must be >= 1")
    config, scenario, run_seed = _resolve(config_path, scenario_id, seed, override_rc_check)
    run_config = config.optimizer.with_seed(run_seed)
    sampler = CoverageSampler.uniform(
        scenario.region, run_config.mc_samples, run_seed + SAMPLER_SEED_OFFSET
    )

    started = time.perf_counter()
    best, state = run_engine(algorithm, n_nodes, scenario, sampler, config.weights, run_config)
    wall = time.perf_counter() - started

    verified_cov, connected, _ = verify_deployment(
        best, scenario, run_seed + VERIFY_SEED_OFFSET, config.search.verify_samples
    )
    evaluation = fitness(best, scenario, sampler, config.weights)
    record = io.RunRecord(
        scenario_id=scenario_id,
        algorithm=algorithm,
        seed=run_seed,
        n_nodes=n_nodes,
        coverage=verified_cov,
        connectivity_ratio=evaluation.connectivity_ratio,
        is_connected=connected,
        energy_total=evaluation.energy_total,
        fitness=state.global_best_fitness,
        generations_used=state.generation,
        wall_time=wall,
    )

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = f"{scenario_id}_{algorithm}_n{n_nodes}_seed{run_seed}"
    io.write_deployment_json(out / f"{base}.deployment.json", best)
    io.write_history_csv(out / f"{base}.history.csv", state.fitness_history)
    render_svg(best, scenario, out / f"{base}.svg")
    io.append_run_records(out / "runs.csv", [record])
    click.echo(
        f"{scenario_id} {algorithm} n={n_nodes} seed={run_seed}: "
        f"coverage={verified_cov:.4f} connected={'yes' if connected else 'no'} "
        f"energy={evaluation.energy_total:.3e}J fitness={state.global_best_fitness:.4f} "
        f"generations={state.generation} time={wall:.1f}s"
    )


@main.command("min-nodes")
@click.argument("config_path", type=click.Path())
@click.argument("scenario_id")
@_algorithm_arg
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.option("--seed", type=int, default=None, help="Override the config's first seed.")
@click.option("--override-rc-check", is_flag=True)
@_guard
def min_nodes(config_path, scenario_id, algorithm, out_dir, seed, override_rc_check):
    """Search the minimal feasible node count for one scenario and engine."""
    config, scenario, run_seed = _resolve(config_path, scenario_id, seed, override_rc_check)
    report = find_min_nodes(
        scenario,
        algorithm,
        config.optimizer.with_seed(run_seed),
        retries_per_n=config.search.retries_per_n,
        mc_tolerance=config.search.mc_tolerance,
        verify_samples=config.search.verify_samples,
        weights=config.weights,
    )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = f"{scenario_id}_{algorithm}_seed{run_seed}"
    io.write_json(out / f"{base}.report.json",
                  io.report_to_dict(report, scenario_id, algorithm, run_seed))
    row = io.sweep_row(scenario_id, algorithm, run_seed, report)
    path = out / "minnodes.csv"
    new_file = not path.exists()
    with open(path, "a", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if new_file:
            writer.writerow(io.SWEEP_COLUMNS)
        writer.writerow(row)
    click.echo(
        f"{scenario_id} {algorithm} seed={run_seed}: minimal n={report.n} "
        f"coverage={report.verified_coverage:.4f} attempts={report.attempts} "
        f"time={report.wall_time:.1f}s"
    )


def _sweep_cell(args) -> tuple[str, str, int, FeasibilityReport | None]:
    scenario, scenario_id, algorithm, seed, optimizer, search_cfg, weights = args
    try:
        report = find_min_nodes(
            scenario,
            algorithm,
            optimizer.with_seed(seed),
            retries_per_n=search_cfg.retries_per_n,
            mc_tolerance=search_cfg.mc_tolerance,
            verify_samples=search_cfg.verify_samples,
            weights=weights,
        )
    except SearchExhaustedError:
        report = None
    return scenario_id, algorithm, seed, report


@main.command()
@click.argument("config_path", type=click.Path())
@click.option("--algorithms", default="ga,pso,hybrid", show_default=True,
              help="Comma-separated engine names.")
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.option("--seed", type=int, default=None,
              help="Replace the config's seed list with this single seed.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Worker processes for sweep cells.")
@click.option("--override-rc-check", is_flag=True)
@_guard
def sweep(config_path, algorithms, out_dir, seed, jobs, override_rc_check):
    """Run min-nodes for every (scenario, algorithm, seed) cell."""
    config = io.load_config(config_path)
    algo_list = [a.strip() for a in algorithms.split(",") if a.strip()]
    unknown = [a for a in algo_list if a not in ENGINES]
    if unknown or not algo_list:
        raise click.BadParameter(f"unknown algorithm(s): {', '.join(unknown) or '(none)'}")
    seeds = [seed] if seed is not None else list(config.seeds)

    cells = []
    for spec in config.scenarios:
        scenario = spec.to_scenario(config.energy, rc_check_override=override_rc_check)
        for algo in algo_list:
            for s in seeds:
                cells.append(
                    (scenario, spec.id, algo, s, config.optimizer, config.search,
                     config.weights)
                )

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_cell, cells))
    else:
        results = [_sweep_cell(cell) for cell in cells]

    # Deterministic row order regardless of completion order.
    results.sort(key=lambda r: (r[0], r[1], r[2]))
    rows = [io.sweep_row(sid, algo, s, report) for sid, algo, s, report in results]

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    io.write_sweep_csv(out / "sweep.csv", rows)

    cell_means: dict[tuple[str, str], float | None] = {}
    scenario_ids = [spec.id for spec in config.scenarios]
    for sid in scenario_ids:
        for algo in algo_list:
            values = [
                float(report.n)
                for rsid, ralgo, _, report in results
                if rsid == sid and ralgo == algo and report is not None
            ]
            cell_means[(sid, algo)] = io.mean_or_none(values)
    io.write_pivot_csv(out / "sweep_pivot.csv", scenario_ids, algo_list, cell_means)

    succeeded = sum(1 for *_, report in results if report is not None)
    click.echo(f"sweep: {succeeded}/{len(results)} cells feasible -> "
               f"{out / 'sweep.csv'}, {out / 'sweep_pivot.csv'}")
    if succeeded == 0:
        click.echo("sweep: every cell exhausted its search ceiling", err=True)
        sys.exit(4)


_METRIC_FIELDS = {"n_nodes": int, "verified_coverage": float, "attempts": int,
                  "wall_time": float}


@main.command()
@click.argument("sweep_csv", type=click.Path())
@click.argument("algorithm_a")
@click.argument("algorithm_b")
@click.option("--metric", default="n_nodes", show_default=True,
              type=click.Choice(sorted(_METRIC_FIELDS)))
@click.option("--alternative", default="two-sided", show_default=True,
              type=click.Choice(["two-sided", "greater", "less"]))
@click.option("--out", type=click.Path(), default=None, help="Result JSON path.")
@_guard
def compare(sweep_csv, algorithm_a, algorithm_b, metric, alternative, out):
    """Wilcoxon signed-rank test between two algorithms of a sweep CSV."""
    rows = io.read_sweep_rows(sweep_csv)
    parse = _METRIC_FIELDS[metric]
    columns: dict[str, dict[tuple[str, str], float]] = {algorithm_a: {}, algorithm_b: {}}
    for row in rows:
        algo = row["algorithm"]
        if algo in columns and row["status"] == "ok":
            columns[algo][(row["scenario_id"], row["seed"])] = float(parse(row[metric]))

    keys_a = set(columns[algorithm_a])
    keys_b = set(columns[algorithm_b])
    if not keys_a or keys_a != keys_b:
        raise PairingError(
            f"cannot pair {algorithm_a!r} with {algorithm_b!r}: "
            f"{len(keys_a)} vs {len(keys_b)} usable (scenario, seed) cells, "
            f"{len(keys_a & keys_b)} shared"
        )
    ordered = sorted(keys_a)
    sample = PairedSample.from_pairs(
        algorithm_a, algorithm_b,
        [columns[algorithm_a][k] for k in ordered],
        [columns[algorithm_b][k] for k in ordered],
    )
    result = wilcoxon_signed_rank(sample, alternative=alternative)

    mean_diff = sum(sample.differences) / len(sample.differences)
    leader = algorithm_a if mean_diff > 0 else algorithm_b
    # For n_nodes and wall_time smaller is better.
    if metric in ("n_nodes", "wall_time"):
        leader = algorithm_b if mean_diff > 0 else algorithm_a
    verdict = "significant" if result.p_value < 0.05 else "not significant"
    click.echo(
        f"{algorithm_a} vs {algorithm_b} on {metric} ({alternative}): "
        f"W={result.w_statistic:.1f} n={result.n_effective} "
        f"p={result.p_value:.6g} [{result.method}] -> {verdict} at 0.05"
        + (f", favoring {leader}" if verdict == "significant" else "")
    )
    if out is not None:
        io.write_json(out, {
            "labels": [algorithm_a, algorithm_b],
            "metric": metric,
            "alternative": alternative,
            "w_statistic": result.w_statistic,
            "n_effective": result.n_effective,
            "p_value": result.p_value,
            "method": result.method,
        })


@main.command()
@click.argument("config_path", type=click.Path())
@click.argument("scenario_id")
@click.argument("deployment_json", type=click.Path())
@click.option("--seed", type=int, default=None,
              help="Run seed whose verification stream to reuse.")
@click.option("--samples", type=int, default=None, help="Verification sample count.")
@click.option("--override-rc-check", is_flag=True)
@_guard
def verify(config_path, scenario_id, deployment_json, seed, samples, override_rc_check):
    """Re-verify a deployment JSON (bare coordinates or a min-nodes report)."""
    config, scenario, run_seed = _resolve(config_path, scenario_id, seed, override_rc_check)
    try:
        deployment = io.read_deployment_json(deployment_json)
    except ValueError:
        data = json.loads(Path(deployment_json).read_text(encoding="utf-8"))
        if not isinstance(data, dict) or "deployment" not in data:
            raise
        from .geometry import Deployment

        deployment = Deployment(data["deployment"])
    k = samples if samples is not None else config.search.verify_samples
    cov, connected, energy_ok = verify_deployment(
        deployment, scenario, run_seed + VERIFY_SEED_OFFSET, k
    )
    click.echo(
        f"{scenario_id} n={deployment.n}: coverage={cov:.6f} "
        f"connected={'yes' if connected else 'no'} "
        f"per_node_energy_ok={'yes' if energy_ok else 'no'} (K={k}, seed={run_seed})"
    )


@main.command()
@click.argument("config_path", type=click.Path())
@click.argument("scenario_id")
@click.argument("deployment_json", type=click.Path())
@click.option("--out", type=click.Path(), required=True, help="Output SVG path.")
@click.option("--override-rc-check", is_flag=True)
@_guard
def plot(config_path, scenario_id, deployment_json, out, override_rc_check):
    """Render a deployment JSON to a standalone SVG."""
    config = io.load_config(config_path)
    scenario = config.scenario(scenario_id).to_scenario(
        config.energy, rc_check_override=override_rc_check
    )
    deployment = io.read_deployment_json(deployment_json)
    render_svg(deployment, scenario, out)
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
