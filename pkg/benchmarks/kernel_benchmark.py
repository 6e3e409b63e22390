#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure numpy fallback.

Times the three hot kernels at representative sizes plus one end-to-end
hybrid run per backend, and prints a speedup table. The compiled rows are
skipped when the extension is not built.

Usage: python benchmarks/kernel_benchmark.py [--repeats N]
"""

import argparse
import time

import numpy as np

from wsnopt import CoverageSampler, FitnessWeights, OptimizerConfig, Region, Scenario
from wsnopt.kernels import _python

try:
    from wsnopt.kernels import _native
except ImportError:
    _native = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def kernel_cases(rng):
    cases = []
    for n, k in ((12, 500), (40, 500), (120, 500), (120, 10_000)):
        nodes = np.ascontiguousarray(rng.uniform(0, 100, (n, 2)))
        samples = np.ascontiguousarray(rng.uniform(0, 100, (k, 2)))
        cases.append((f"coverage_count n={n} K={k}",
                      lambda b, nodes=nodes, samples=samples: b.coverage_count(nodes, samples, 10.0)))
    for n in (40, 120, 400):
        nodes = np.ascontiguousarray(rng.uniform(0, 100, (n, 2)))
        cases.append((f"largest_component n={n}",
                      lambda b, nodes=nodes: b.largest_component_size(nodes, 20.0)))
        cases.append((f"mst_edges n={n}",
                      lambda b, nodes=nodes: b.mst_edges(nodes, 0)))
    return cases


def hybrid_run(module_name):
    import importlib
    import wsnopt.kernels as kernels

    impl = importlib.import_module(f"wsnopt.kernels.{module_name}")
    saved = (kernels.coverage_count, kernels.largest_component_size, kernels.mst_edges)
    kernels.coverage_count = impl.coverage_count
    kernels.largest_component_size = impl.largest_component_size
    kernels.mst_edges = impl.mst_edges
    try:
        from wsnopt.optimizers import run_hybrid

        scenario = Scenario(region=Region(100, 100), rs=15, rc=30)
        sampler = CoverageSampler.uniform(scenario.region, 500, rng_seed=1)
        config = OptimizerConfig(seed=1, max_generations=20)
        run_hybrid(19, scenario, sampler, FitnessWeights(), config)
    finally:
        kernels.coverage_count, kernels.largest_component_size, kernels.mst_edges = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    rows = []
    for label, call in kernel_cases(rng):
        t_py = timeit(lambda: call(_python), args.repeats)
        if _native is not None:
            t_c = timeit(lambda: call(_native), args.repeats)
            rows.append((label, t_py, t_c))
        else:
            rows.append((label, t_py, None))

    t_py = timeit(lambda: hybrid_run("_python"), 1)
    t_c = timeit(lambda: hybrid_run("_native"), 1) if _native is not None else None
    rows.append(("hybrid run n=19 (20 gens)", t_py, t_c))

    width = max(len(r[0]) for r in rows)
    print(f"{'case'.ljust(width)}  {'python':>12}  {'native':>12}  {'speedup':>8}")
    for label, t_py, t_c in rows:
        if t_c is None:
            print(f"{label.ljust(width)}  {t_py * 1e3:>10.3f}ms  {'n/a':>12}  {'':>8}")
        else:
            print(f"{label.ljust(width)}  {t_py * 1e3:>10.3f}ms  {t_c * 1e3:>10.3f}ms"
                  f"  {t_py / t_c:>7.1f}x")
    if _native is None:
        print("\ncompiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
