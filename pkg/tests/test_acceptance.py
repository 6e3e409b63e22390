"""Acceptance gate. One test per criterion; each prints a single
"ACCEPTANCE criterion N: PASS/FAIL" line (run with -v -s to watch live).

The sweep behind criteria 2 and 3 (eight 100x100/150x150 rows, three
seeds, three engines, full minimal-node searches) runs once as a session
fixture and takes tens of minutes on one CPU with the compiled kernels.

Criterion 1's rs=10 row is a known honest failure: the frozen 500-point
search sampler admits sample-covering layouts that do not cover the
area at that disk density, so no engine driven by it reliably clears the
independent K=10000 verification bar below n~48 (details in the repo's
engineering notes).
"""

import csv
import json
import math
import time

import numpy as np
import pytest
from click.testing import CliRunner

from wsnopt import (
    CoverageSampler,
    Deployment,
    FitnessWeights,
    OptimizerConfig,
    PairedSample,
    Region,
    Scenario,
    analytic_lower_bound,
    find_min_nodes,
    run_engine,
    total_energy,
    transmit_energy,
    verify_deployment,
    wilcoxon_signed_rank,
)
from wsnopt.cli import main as cli_main
from wsnopt.optimizers import ENGINES, optimize_objective
from wsnopt.search import VERIFY_SEED_OFFSET
from _oracles import (
    analytic_disk_coverage,
    min_spanning_tree_energy_bruteforce,
    wilcoxon_exact_bruteforce,
)

TABLE2 = OptimizerConfig()  # population 50, generations 50, 0.8/0.1, c1=c2=1.5, K=500
REFERENCE_ROWS_100 = [(10.0, 20.0, 36), (15.0, 30.0, 19), (20.0, 40.0, 12), (25.0, 50.0, 8)]
REFERENCE_ROWS_150 = [(10.0, 20.0, 76), (15.0, 30.0, 36), (20.0, 40.0, 22), (25.0, 50.0, 16)]
SWEEP_SEEDS = (1, 2, 3)
MC_TOLERANCE = 0.02


def _report(criterion, ok, detail):
    print(f"\nACCEPTANCE criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}",
          flush=True)


def test_criterion_1_table3_spot_reproduction():
    rows = []
    all_ok = True
    for rs, rc, reference_n in REFERENCE_ROWS_100:
        scenario = Scenario(region=Region(100, 100), rs=rs, rc=rc)
        bound = analytic_lower_bound(scenario)
        started = time.perf_counter()
        report = find_min_nodes(scenario, "hybrid", TABLE2.with_seed(1),
                                retries_per_n=3, mc_tolerance=MC_TOLERANCE)
        elapsed = time.perf_counter() - started
        ok = bound <= report.n <= reference_n + 2 and elapsed < 300
        all_ok = all_ok and ok
        rows.append(f"rs={rs:g}: n={report.n} (reference {reference_n}, bound {bound}, "
                    f"{elapsed:.0f}s){'' if ok else ' <-FAIL'}")
    detail = "; ".join(rows)
    _report(1, all_ok, detail)
    assert all_ok, detail


@pytest.fixture(scope="session")
def full_sweep():
    """FeasibilityReport per (area, rs, engine, seed) over all eight rows."""
    results = {}
    for area, rows in ((100.0, REFERENCE_ROWS_100), (150.0, REFERENCE_ROWS_150)):
        for rs, rc, _ in rows:
            scenario = Scenario(region=Region(area, area), rs=rs, rc=rc)
            for engine in ("hybrid", "ga", "pso"):
                for seed in SWEEP_SEEDS:
                    started = time.perf_counter()
                    report = find_min_nodes(
                        scenario, engine, TABLE2.with_seed(seed),
                        retries_per_n=3, mc_tolerance=MC_TOLERANCE,
                    )
                    print(f"  sweep {area:g}x{area:g} rs={rs:g} {engine} seed={seed}: "
                          f"n={report.n} ({time.perf_counter() - started:.0f}s)",
                          flush=True)
                    results[(area, rs, engine, seed)] = report
    return results


def test_criterion_2_relative_ordering(full_sweep):
    row_keys = [(100.0, rs) for rs, _, _ in REFERENCE_ROWS_100]
    row_keys += [(150.0, rs) for rs, _, _ in REFERENCE_ROWS_150]

    wins = 0
    for area, rs in row_keys:
        means = {
            engine: np.mean([full_sweep[(area, rs, engine, s)].n for s in SWEEP_SEEDS])
            for engine in ("hybrid", "ga", "pso")
        }
        if means["hybrid"] <= means["ga"] and means["hybrid"] <= means["pso"]:
            wins += 1

    hybrid_counts = [full_sweep[(area, rs, "hybrid", s)].n
                     for area, rs in row_keys for s in SWEEP_SEEDS]
    ga_counts = [full_sweep[(area, rs, "ga", s)].n
                 for area, rs in row_keys for s in SWEEP_SEEDS]
    sample = PairedSample.from_pairs("hybrid", "ga", hybrid_counts, ga_counts)
    result = wilcoxon_signed_rank(sample, alternative="less")

    ok = wins >= math.ceil(0.75 * len(row_keys)) and result.p_value < 0.05
    detail = (f"hybrid best in {wins}/{len(row_keys)} rows; "
              f"Wilcoxon(hybrid-ga, less): p={result.p_value:.3g} "
              f"[{result.method}, n={result.n_effective}]")
    _report(2, ok, detail)
    assert ok, detail


def test_criterion_3_coverage_verification(full_sweep):
    violations = []
    for (area, rs, engine, seed), report in full_sweep.items():
        scenario = Scenario(region=Region(area, area), rs=rs, rc=2 * rs)
        threshold = scenario.coverage_target - MC_TOLERANCE
        cov, connected, _ = verify_deployment(
            report.deployment, scenario, seed + VERIFY_SEED_OFFSET, 10_000
        )
        if not (cov >= threshold and connected
                and cov == report.verified_coverage
                and connected == report.is_connected):
            violations.append((area, rs, engine, seed, cov, connected))
    ok = not violations
    detail = (f"{len(full_sweep)} feasible reports re-verified at K=10000, "
              f"{len(violations)} violations")
    _report(3, ok, detail)
    assert ok, f"{detail}: {violations}"


def test_criterion_4_analytic_coverage_oracle():
    region = Region(100, 100)
    rs = 10.0
    scenario = Scenario(region=region, rs=rs, rc=2 * rs)
    p = analytic_disk_coverage(rs, region.width, region.height)
    k = 10_000
    band = 3 * math.sqrt(p * (1 - p) / k)
    hits = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        node = rng.uniform(rs, 100 - rs, size=2)  # fully interior disk
        sampler = CoverageSampler.uniform(region, k, rng_seed=seed)
        filled = Deployment([node])
        from wsnopt import coverage as coverage_fn

        estimate = coverage_fn(filled, scenario, sampler)
        if abs(estimate - p) <= band:
            hits += 1
    ok = hits >= 19
    detail = f"{hits}/20 seeds within 3-sigma band {band:.5f} of {p:.6f}"
    _report(4, ok, detail)
    assert ok, detail


def test_criterion_5_elitism_monotonicity():
    rng = np.random.default_rng(2024)
    violations = 0
    for run in range(100):
        width = float(rng.uniform(40, 120))
        height = float(rng.uniform(40, 120))
        rs = float(rng.uniform(8, 25))
        scenario = Scenario(region=Region(width, height), rs=rs, rc=2 * rs)
        engine = ("ga", "hybrid")[run % 2]
        config = OptimizerConfig(
            population_size=int(rng.integers(6, 12)),
            max_generations=int(rng.integers(5, 10)),
            mc_samples=int(rng.integers(50, 200)),
            seed=int(rng.integers(1_000_000)),
        )
        sampler = CoverageSampler.uniform(scenario.region, config.mc_samples,
                                          rng_seed=config.seed)
        n = int(rng.integers(3, 10))
        _, state = run_engine(engine, n, scenario, sampler, FitnessWeights(), config)
        history = state.fitness_history
        if any(b < a for a, b in zip(history, history[1:])):
            violations += 1
    ok = violations == 0
    detail = f"100 randomized ga/hybrid runs, {violations} monotonicity violations"
    _report(5, ok, detail)
    assert ok, detail


def test_criterion_6_pso_convex_bowl():
    region = Region(100, 100)
    hits = 0
    for seed in range(10):
        rng = np.random.default_rng(7000 + seed)
        target = rng.uniform(20, 80, size=2)

        def objective(d, target=target):
            dx = d.coords[:, 0] - target[0]
            dy = d.coords[:, 1] - target[1]
            return -float((dx * dx + dy * dy).sum())

        config = OptimizerConfig(population_size=20, max_generations=200,
                                 convergence_epsilon=0.0, seed=seed)
        best, _ = optimize_objective("pso", 1, region, objective, config)
        err = math.hypot(best.coords[0, 0] - target[0], best.coords[0, 1] - target[1])
        if err <= 1e-2:
            hits += 1
    ok = hits == 10
    detail = f"{hits}/10 seeds within 1e-2 of the optimum in <= 200 iterations"
    _report(6, ok, detail)
    assert ok, detail


def test_criterion_7_wilcoxon_exactness():
    rng = np.random.default_rng(505)
    checked = 0
    worst = 0.0
    for trial in range(30):
        n = int(rng.integers(2, 13))
        diffs = np.round(rng.normal(rng.uniform(-1, 1), 1.5, n), 1)
        sample = PairedSample(("a", "b"), tuple(float(d) for d in diffs))
        if not sample.differences:
            continue
        for alternative in ("two-sided", "greater", "less"):
            mine = wilcoxon_signed_rank(sample, alternative).p_value
            oracle = wilcoxon_exact_bruteforce(tuple(diffs), alternative)
            worst = max(worst, abs(mine - oracle))
            checked += 1
    eight = PairedSample(("a", "b"), tuple(float(i) for i in range(1, 9)))
    p_eight = wilcoxon_signed_rank(eight, "greater").p_value
    ok = worst <= 1e-12 and abs(p_eight - 1 / 256) <= 1e-15 and checked >= 60
    detail = (f"{checked} (sample, alternative) cases vs enumeration, "
              f"max |dp|={worst:.2e}; all-positive n=8 one-sided p={p_eight:.6f}")
    _report(7, ok, detail)
    assert ok, detail


def test_criterion_8_energy_oracle():
    scenario = Scenario(region=Region(100, 100), rs=20, rc=40)
    exact_matches = 0
    for seed in range(20):
        rng = np.random.default_rng(900 + seed)
        coords = rng.uniform(0, 100, size=(8, 2))
        mine = total_energy(Deployment(coords), scenario)
        oracle = min_spanning_tree_energy_bruteforce(coords.tolist(), scenario)
        if mine == oracle:
            exact_matches += 1
    te = transmit_energy(20.0, scenario)
    te_ok = abs(te - 3.6e-4) <= 1e-12 * 3.6e-4
    ok = exact_matches == 20 and te_ok
    detail = (f"{exact_matches}/20 deployments equal exhaustive spanning-tree "
              f"minimum exactly; transmit_energy(20m)={te:.6e} J")
    _report(8, ok, detail)
    assert ok, detail


def _write_config(path, **overrides):
    config = {
        "scenarios": [
            {"id": "alpha", "area": [60, 60], "rs": 20, "rc": 40},
            {"id": "beta", "area": [50, 50], "rs": 20, "rc": 40},
        ],
        "optimizer": {"population_size": 8, "max_generations": 5,
                      "mc_samples": 100, "seed": 1},
        "search": {"retries_per_n": 2, "verify_samples": 1000},
        "seeds": [1],
    }
    config.update(overrides)
    path.write_text(json.dumps(config))
    return path


def test_criterion_9_cli_determinism(tmp_path):
    runner = CliRunner()
    config = _write_config(tmp_path / "config.json")
    sweep_src = tmp_path / "wsrc"
    result = runner.invoke(cli_main, ["sweep", str(config), "--algorithms",
                                      "hybrid,random", "--out-dir", str(sweep_src)])
    assert result.exit_code == 0, result.output

    combos = [
        (["optimize", str(config), "alpha", "hybrid", "6"],
         ["alpha_hybrid_n6_seed1.deployment.json", "alpha_hybrid_n6_seed1.history.csv",
          "runs.csv"]),
        (["optimize", str(config), "beta", "ga", "5", "--seed", "4"],
         ["beta_ga_n5_seed4.deployment.json", "beta_ga_n5_seed4.history.csv",
          "runs.csv"]),
        (["min-nodes", str(config), "alpha", "hybrid"],
         ["alpha_hybrid_seed1.report.json", "minnodes.csv"]),
        (["sweep", str(config), "--algorithms", "hybrid,random"],
         ["sweep.csv", "sweep_pivot.csv"]),
        (["compare", str(sweep_src / "sweep.csv"), "hybrid", "random",
          "--metric", "n_nodes"],
         ["wilcoxon.json"]),
    ]

    def run_combo(index, args, artifacts, out_dir):
        out_dir.mkdir(parents=True, exist_ok=True)
        full_args = list(args)
        if args[0] in ("optimize", "min-nodes", "sweep"):
            full_args += ["--out-dir", str(out_dir)]
        else:
            full_args += ["--out", str(out_dir / "wilcoxon.json")]
        result = runner.invoke(cli_main, full_args)
        assert result.exit_code == 0, result.output
        contents = {}
        for name in artifacts:
            data = (out_dir / name).read_bytes()
            if name.endswith(".csv"):
                rows = list(csv.reader(data.decode().splitlines()))
                header = rows[0]
                if "wall_time" in header:
                    drop = header.index("wall_time")
                    rows = [r[:drop] + r[drop + 1:] for r in rows]
                contents[name] = rows
            elif name.endswith(".report.json"):
                payload = json.loads(data)
                payload.pop("wall_time")
                contents[name] = payload
            else:
                contents[name] = data
        return contents

    mismatches = []
    for index, (args, artifacts) in enumerate(combos):
        first = run_combo(index, args, artifacts, tmp_path / f"run{index}_a")
        second = run_combo(index, args, artifacts, tmp_path / f"run{index}_b")
        if first != second:
            mismatches.append(args[0])
    ok = not mismatches
    detail = (f"{len(combos)} command/config combos rerun byte-identical "
              f"(wall_time field masked); mismatches: {mismatches or 'none'}")
    _report(9, ok, detail)
    assert ok, detail


def test_criterion_10_documented_exclusions():
    # The comparison harness covers ga/pso/hybrid/random only: no CMOMPA
    # (the source gives no algorithm for it), no lifetime simulation, no
    # figure-value reproduction; criteria 1-9 stand in for those.
    ok = set(ENGINES) == {"ga", "pso", "hybrid", "random"}
    detail = f"engines limited to {sorted(ENGINES)}; excluded comparisons documented"
    _report(10, ok, detail)
    assert ok, detail
