"""Outer search for the minimal node count reaching the coverage target with
full connectivity, plus independent fresh-sample verification of returned
deployments.

The search walks n upward from an analytic disk-area lower bound (linear,
not binary: feasibility at a given n is stochastic, which breaks the
monotone predicate binary search needs). A candidate counts as feasible
only after re-measuring coverage with an independent sampler at a larger
K, within a Monte Carlo tolerance of the target.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

from .evaluation import (
    CoverageSampler,
    FitnessWeights,
    connectivity,
    coverage,
    per_node_energies,
)
from .geometry import Deployment, Scenario
from .optimizers import OptimizerConfig, run_engine

# Offset separating the verification sampler's stream from every attempt seed.
VERIFY_SEED_OFFSET = 500_009
# Offset separating a run's search sampler from the engine's own stream
# (same seed would make the first particle coincide with the first samples).
SAMPLER_SEED_OFFSET = 250_007

DEFAULT_RETRIES_PER_N = 3
DEFAULT_MC_TOLERANCE = 0.02
DEFAULT_VERIFY_SAMPLES = 10_000


class SearchExhaustedError(RuntimeError):
    """No feasible n found up to the hard ceiling; scenario or engine is off."""

    def __init__(self, ceiling: int, engine: str):
        self.ceiling = ceiling
        self.engine = engine
        super().__init__(
            f"min-node search exhausted: engine {engine!r} found no feasible "
            f"deployment up to n={ceiling}"
        )


@dataclass(frozen=True)
class FeasibilityReport:
    n: int
    feasible: bool
    verified_coverage: float
    is_connected: bool
    deployment: Deployment
    attempts: int
    wall_time: float


def analytic_lower_bound(scenario: Scenario) -> int:
    """Fewest disks whose total area can reach the coverage target; >= 1."""
    disk = math.pi * scenario.rs ** 2
    need = scenario.coverage_target * scenario.region.area()
    return max(1, math.ceil(need / disk))


def search_ceiling(scenario: Scenario) -> int:
    """Hard upper limit: four full region areas worth of disks."""
    disk = math.pi * scenario.rs ** 2
    return math.ceil(4.0 * scenario.region.area() / disk)


def verify_deployment(
    d: Deployment,
    scenario: Scenario,
    verification_seed: int,
    k_verify: int = DEFAULT_VERIFY_SAMPLES,
) -> tuple[float, bool, bool]:
    """Re-measure a deployment from coordinates alone with a fresh sampler.

    Returns (coverage, is_connected, per_node_energy_ok); the last flag
    checks each node's incident MST edge energy against the e_max cap.
    """
    if k_verify < 1000:
        raise ValueError(f"k_verify must be >= 1000, got {k_verify}")
    sampler = CoverageSampler.uniform(scenario.region, k_verify, verification_seed)
    cov = coverage(d, scenario, sampler)
    _, connected = connectivity(d, scenario)
    energy_ok = bool(per_node_energies(d, scenario).max(initial=0.0) <= scenario.e_max)
    return cov, connected, energy_ok


def find_min_nodes(
    scenario: Scenario,
    engine: str,
    config: OptimizerConfig,
    retries_per_n: int = DEFAULT_RETRIES_PER_N,
    mc_tolerance: float = DEFAULT_MC_TOLERANCE,
    verify_samples: int = DEFAULT_VERIFY_SAMPLES,
    weights: FitnessWeights | None = None,
) -> FeasibilityReport:
    """Smallest n the engine can make feasible, with verified metrics.

    Each n gets retries_per_n independent runs (attempt seeds
    config.seed + 1000*attempt); the first whose verified coverage reaches
    coverage_target - mc_tolerance while fully connected wins. Raises
    SearchExhaustedError past the ceiling.
    """
    if retries_per_n < 1:
        raise ValueError(f"retries_per_n must be >= 1, got {retries_per_n}")
    if weights is None:
        weights = FitnessWeights()

    start_time = time.perf_counter()
    verify_seed = config.seed + VERIFY_SEED_OFFSET
    threshold = scenario.coverage_target - mc_tolerance
    ceiling = search_ceiling(scenario)
    attempts = 0
    for n in range(analytic_lower_bound(scenario), ceiling + 1):
        for attempt in range(retries_per_n):
            attempt_seed = config.seed + 1000 * attempt
            attempt_config = replace(config, seed=attempt_seed)
            sampler = CoverageSampler.uniform(
                scenario.region, config.mc_samples, attempt_seed + SAMPLER_SEED_OFFSET
            )
            best, _ = run_engine(engine, n, scenario, sampler, weights, attempt_config)
            attempts += 1
            cov, connected, _ = verify_deployment(best, scenario, verify_seed, verify_samples)
            if connected and cov >= threshold:
                return FeasibilityReport(
                    n=n,
                    feasible=True,
                    verified_coverage=cov,
                    is_connected=connected,
                    deployment=best,
                    attempts=attempts,
                    wall_time=time.perf_counter() - start_time,
                )
    raise SearchExhaustedError(ceiling, engine)
