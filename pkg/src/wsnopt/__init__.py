"""Seeded sensor-placement optimization: GA, PSO and hybrid GA-PSO engines
over coverage/connectivity/energy objectives, minimal-node-count search,
and a paired statistical comparison harness.
"""

from .evaluation import (
    CoverageSampler,
    Evaluation,
    FitnessWeights,
    connectivity,
    coverage,
    fitness,
    total_energy,
    transmit_energy,
)
from .geometry import (
    Deployment,
    InvalidScenarioError,
    Point,
    Region,
    Scenario,
    clamp_to_region,
    distance,
    random_deployment,
)
from .kernels import BACKEND as kernel_backend
from .optimizers import (
    OptimizerConfig,
    Particle,
    RunState,
    ga_crossover,
    ga_mutate,
    ga_select,
    pso_step,
    run_engine,
    run_ga,
    run_hybrid,
    run_pso,
    run_random_baseline,
)
from .search import (
    FeasibilityReport,
    SearchExhaustedError,
    analytic_lower_bound,
    find_min_nodes,
    verify_deployment,
)
from .stats import (
    PairedSample,
    UndefinedTestError,
    WilcoxonResult,
    summarize_runs,
    wilcoxon_signed_rank,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CoverageSampler",
    "Deployment",
    "Evaluation",
    "FeasibilityReport",
    "FitnessWeights",
    "InvalidScenarioError",
    "OptimizerConfig",
    "PairedSample",
    "Particle",
    "Point",
    "Region",
    "RunState",
    "Scenario",
    "SearchExhaustedError",
    "UndefinedTestError",
    "WilcoxonResult",
    "analytic_lower_bound",
    "clamp_to_region",
    "connectivity",
    "coverage",
    "distance",
    "find_min_nodes",
    "fitness",
    "ga_crossover",
    "ga_mutate",
    "ga_select",
    "kernel_backend",
    "pso_step",
    "random_deployment",
    "run_engine",
    "run_ga",
    "run_hybrid",
    "run_pso",
    "run_random_baseline",
    "summarize_runs",
    "total_energy",
    "transmit_energy",
    "verify_deployment",
    "wilcoxon_signed_rank",
]
