"""Search engines over node coordinates at a fixed node count: a generational
GA with 1-elite carry-over, an inertia-scheduled PSO, the per-generation
hybrid that applies a full GA pass then a PSO step, and a random-placement
baseline with an equal evaluation budget.

Every engine owns a single np.random.Generator seeded from its config and
consumes it sequentially, so identical (scenario, n, config) reruns are
bit-identical. Fitness evaluation is pure and never touches the stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .evaluation import CoverageSampler, FitnessWeights, fitness
from .geometry import Deployment, Region, Scenario, draw_uniform_coords

Objective = Callable[[Deployment], float]


@dataclass(frozen=True)
class OptimizerConfig:
    """Engine parameters; defaults are the stock set-1 experiment values.

    The inertia weight follows a linear schedule from inertia_start to
    inertia_end across max_generations. Velocities are clamped per
    component to velocity_cap_fraction * min(region dimensions). A run
    stops early once the best fitness improves by less than
    convergence_epsilon for convergence_patience consecutive generations
    (set epsilon to 0 to disable). ga_fraction switches the hybrid to the
    sequential variant: that fraction of generations runs GA-only, the
    remainder PSO-only; None (default) interleaves both each generation.
    """

    population_size: int = 50
    max_generations: int = 50
    crossover_rate: float = 0.8
    mutation_rate: float = 0.1
    cognitive_weight: float = 1.5
    social_weight: float = 1.5
    inertia_start: float = 0.9
    inertia_end: float = 0.4
    velocity_cap_fraction: float = 0.2
    convergence_epsilon: float = 1e-4
    convergence_patience: int = 15
    mc_samples: int = 500
    seed: int = 0
    ga_fraction: float | None = None

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError(f"population_size must be >= 2, got {self.population_size}")
        if self.max_generations < 1:
            raise ValueError(f"max_generations must be >= 1, got {self.max_generations}")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {rate}")
        if not self.inertia_start >= self.inertia_end >= 0.0:
            raise ValueError("inertia schedule requires inertia_start >= inertia_end >= 0")
        if self.velocity_cap_fraction <= 0:
            raise ValueError("velocity_cap_fraction must be positive")
        if self.convergence_epsilon < 0:
            raise ValueError("convergence_epsilon must be >= 0")
        if self.convergence_patience < 1:
            raise ValueError("convergence_patience must be >= 1")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be >= 1")
        if self.ga_fraction is not None and not 0.0 <= self.ga_fraction <= 1.0:
            raise ValueError(f"ga_fraction must be in [0, 1], got {self.ga_fraction}")

    def with_seed(self, seed: int) -> OptimizerConfig:
        return replace(self, seed=seed)


@dataclass
class Particle:
    position: Deployment
    velocity: np.ndarray
    personal_best: Deployment
    personal_best_fitness: float
    fitness: float


@dataclass
class RunState:
    """Full engine state; fitness_history holds the best-so-far per generation."""

    population: list[Particle]
    global_best: Deployment
    global_best_fitness: float
    generation: int
    fitness_history: list[float] = field(default_factory=list)
    evaluations: int = 0


def standard_objective(
    scenario: Scenario, sampler: CoverageSampler, weights: FitnessWeights
) -> Objective:
    """The weighted coverage/connectivity/energy fitness as a plain callable."""

    def evaluate(d: Deployment) -> float:
        return fitness(d, scenario, sampler, weights).fitness

    return evaluate


def inertia_weight(config: OptimizerConfig, generation: int) -> float:
    """Linearly interpolated inertia for a 0-based generation index."""
    span = config.inertia_start - config.inertia_end
    return config.inertia_start - span * (generation / config.max_generations)


# ---------------------------------------------------------------------------
# GA operators


def ga_select(
    population: list[tuple[Deployment, float]], rng: np.random.Generator
) -> tuple[Deployment, Deployment]:
    """Two parents, each by an independent size-2 tournament.

    The second contestant wins ties, which keeps selection uniform when
    all fitnesses are equal while still never preferring a strictly worse
    candidate.
    """
    if len(population) < 2:
        raise ValueError(f"selection needs a population of >= 2, got {len(population)}")
    parents = []
    for _ in range(2):
        i = int(rng.integers(len(population)))
        j = int(rng.integers(len(population)))
        winner = j if population[j][1] >= population[i][1] else i
        parents.append(population[winner][0])
    return parents[0], parents[1]


def ga_crossover(
    a: Deployment, b: Deployment, crossover_rate: float, rng: np.random.Generator
) -> Deployment:
    """Uniform crossover at node granularity, gated by crossover_rate.

    When the gate fails the child is parent a unchanged; otherwise each
    node (both coordinates together) comes from either parent with equal
    probability.
    """
    if a.n != b.n:
        raise ValueError(f"parents must have equal node counts, got {a.n} and {b.n}")
    if rng.random() >= crossover_rate:
        return a
    take_a = rng.random(a.n) < 0.5
    return Deployment(np.where(take_a[:, None], a.coords, b.coords))


def ga_mutate(
    d: Deployment, mutation_rate: float, region: Region, rng: np.random.Generator
) -> Deployment:
    """Displace each node with probability mutation_rate, then clamp.

    Displacements are uniform over +-10% of each region dimension.
    """
    flags = rng.random(d.n) < mutation_rate
    hit = int(flags.sum())
    if hit == 0:
        return d
    low = np.array([-0.1 * region.width, -0.1 * region.height])
    deltas = rng.uniform(low, -low, size=(hit, 2))
    coords = d.coords.copy()
    coords[flags] += deltas
    np.clip(coords[:, 0], 0.0, region.width, out=coords[:, 0])
    np.clip(coords[:, 1], 0.0, region.height, out=coords[:, 1])
    return Deployment(coords)


# ---------------------------------------------------------------------------
# Engine internals


def _refresh_global_best(state: RunState) -> None:
    for p in state.population:
        if p.fitness > state.global_best_fitness:
            state.global_best_fitness = p.fitness
            state.global_best = p.position


def _initial_state(
    n: int, region: Region, objective: Objective, config: OptimizerConfig,
    rng: np.random.Generator,
) -> RunState:
    particles = []
    for _ in range(config.population_size):
        pos = Deployment(draw_uniform_coords(n, region, rng))
        score = objective(pos)
        particles.append(Particle(pos, np.zeros((n, 2)), pos, score, score))
    best = max(particles, key=lambda p: p.fitness)
    state = RunState(
        population=particles,
        global_best=best.position,
        global_best_fitness=best.fitness,
        generation=0,
        fitness_history=[best.fitness],
        evaluations=config.population_size,
    )
    return state


def _ga_pass(
    state: RunState, region: Region, objective: Objective, config: OptimizerConfig,
    rng: np.random.Generator, preserve_memory: bool,
) -> None:
    """One select/crossover/mutate generation; the elite slot is untouched.

    With preserve_memory (hybrid), a replaced slot keeps its personal best
    when that still beats the new position, and its velocity resets to
    zero; plain GA slots just adopt the child as their own best.
    """
    particles = state.population
    pool = [(p.position, p.fitness) for p in particles]
    elite = int(np.argmax([p.fitness for p in particles]))
    new_population = []
    for slot, old in enumerate(particles):
        if slot == elite:
            new_population.append(old)
            continue
        parent_a, parent_b = ga_select(pool, rng)
        child = ga_crossover(parent_a, parent_b, config.crossover_rate, rng)
        child = ga_mutate(child, config.mutation_rate, region, rng)
        score = objective(child)
        state.evaluations += 1
        if preserve_memory and old.personal_best_fitness > score:
            best_pos, best_fit = old.personal_best, old.personal_best_fitness
        else:
            best_pos, best_fit = child, score
        new_population.append(
            Particle(child, np.zeros((child.n, 2)), best_pos, best_fit, score)
        )
    state.population = new_population
    _refresh_global_best(state)


def _pso_pass(
    state: RunState, region: Region, objective: Objective, config: OptimizerConfig,
    generation: int, rng: np.random.Generator,
) -> None:
    """One synchronous velocity/position update for every particle."""
    w = inertia_weight(config, generation)
    cap = config.velocity_cap_fraction * min(region.width, region.height)
    g = state.global_best.coords
    for p in state.population:
        n = p.position.n
        r1 = rng.random((n, 2))
        r2 = rng.random((n, 2))
        x = p.position.coords
        v = (
            w * p.velocity
            + config.cognitive_weight * r1 * (p.personal_best.coords - x)
            + config.social_weight * r2 * (g - x)
        )
        np.clip(v, -cap, cap, out=v)
        moved = x + v
        out_x = (moved[:, 0] < 0.0) | (moved[:, 0] > region.width)
        out_y = (moved[:, 1] < 0.0) | (moved[:, 1] > region.height)
        np.clip(moved[:, 0], 0.0, region.width, out=moved[:, 0])
        np.clip(moved[:, 1], 0.0, region.height, out=moved[:, 1])
        v[out_x, 0] = 0.0
        v[out_y, 1] = 0.0
        new_pos = Deployment(moved)
        score = objective(new_pos)
        state.evaluations += 1
        p.position = new_pos
        p.velocity = v
        p.fitness = score
        if score > p.personal_best_fitness:
            p.personal_best = new_pos
            p.personal_best_fitness = score
    _refresh_global_best(state)


def pso_step(
    state: RunState,
    scenario: Scenario,
    sampler: CoverageSampler,
    weights: FitnessWeights,
    config: OptimizerConfig,
    generation: int,
    rng: np.random.Generator,
) -> RunState:
    """Public single PSO step on the standard fitness; mutates and returns state."""
    objective = standard_objective(scenario, sampler, weights)
    _pso_pass(state, scenario.region, objective, config, generation, rng)
    return state


def _hybrid_phases(config: OptimizerConfig, generation: int) -> tuple[bool, bool]:
    if config.ga_fraction is None:
        return True, True
    ga_generations = math.ceil(config.ga_fraction * config.max_generations)
    return generation < ga_generations, generation >= ga_generations


def optimize_objective(
    engine: str, n: int, region: Region, objective: Objective, config: OptimizerConfig
) -> tuple[Deployment, RunState]:
    """Run any engine against an arbitrary objective (higher is better).

    This is the driver behind run_ga/run_pso/run_hybrid and is exposed so
    synthetic objectives can exercise the dynamics directly.
    """
    if engine == "random":
        return _random_search(n, region, objective, config, budget=None)
    if engine not in ("ga", "pso", "hybrid"):
        raise ValueError(f"unknown engine {engine!r}")
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")

    rng = np.random.default_rng(config.seed)
    state = _initial_state(n, region, objective, config, rng)
    # A degenerate GA phase (both rates zero) is skipped outright so the
    # hybrid reduces exactly to PSO; tournament cloning is not an identity.
    ga_enabled = config.crossover_rate > 0 or config.mutation_rate > 0
    stall = 0
    previous_best = state.global_best_fitness
    for t in range(config.max_generations):
        if engine == "ga":
            _ga_pass(state, region, objective, config, rng, preserve_memory=False)
        elif engine == "pso":
            _pso_pass(state, region, objective, config, t, rng)
        else:
            ga_phase, pso_phase = _hybrid_phases(config, t)
            if ga_phase and ga_enabled:
                _ga_pass(state, region, objective, config, rng, preserve_memory=True)
            if pso_phase:
                _pso_pass(state, region, objective, config, t, rng)
        state.generation = t + 1
        state.fitness_history.append(state.global_best_fitness)
        improvement = state.global_best_fitness - previous_best
        previous_best = state.global_best_fitness
        if improvement < config.convergence_epsilon:
            stall += 1
            if stall >= config.convergence_patience:
                break
        else:
            stall = 0
    return state.global_best, state


def _random_search(
    n: int, region: Region, objective: Objective, config: OptimizerConfig,
    budget: int | None,
) -> tuple[Deployment, RunState]:
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    if budget is None:
        budget = config.population_size * config.max_generations
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    rng = np.random.default_rng(config.seed)
    best_pos: Deployment | None = None
    best_fit = -math.inf
    history: list[float] = []
    batch: list[Particle] = []
    drawn = 0
    while drawn < budget:
        batch = []
        for _ in range(min(config.population_size, budget - drawn)):
            pos = Deployment(draw_uniform_coords(n, region, rng))
            score = objective(pos)
            drawn += 1
            if score > best_fit:
                best_fit = score
                best_pos = pos
            batch.append(Particle(pos, np.zeros((n, 2)), pos, score, score))
        history.append(best_fit)
    assert best_pos is not None
    state = RunState(
        population=batch,
        global_best=best_pos,
        global_best_fitness=best_fit,
        generation=len(history),
        fitness_history=history,
        evaluations=drawn,
    )
    return best_pos, state


# ---------------------------------------------------------------------------
# Public engine entry points


def run_ga(
    n: int, scenario: Scenario, sampler: CoverageSampler, weights: FitnessWeights,
    config: OptimizerConfig,
) -> tuple[Deployment, RunState]:
    """Evolve n-node deployments by tournament GA with 1-elite carry-over."""
    objective = standard_objective(scenario, sampler, weights)
    return optimize_objective("ga", n, scenario.region, objective, config)


def run_pso(
    n: int, scenario: Scenario, sampler: CoverageSampler, weights: FitnessWeights,
    config: OptimizerConfig,
) -> tuple[Deployment, RunState]:
    """Pure PSO dynamics with the linear inertia schedule."""
    objective = standard_objective(scenario, sampler, weights)
    return optimize_objective("pso", n, scenario.region, objective, config)


def run_hybrid(
    n: int, scenario: Scenario, sampler: CoverageSampler, weights: FitnessWeights,
    config: OptimizerConfig,
) -> tuple[Deployment, RunState]:
    """Per generation: full GA pass on particle positions, then one PSO step.

    Personal bests survive GA replacement when they still beat the new
    position; the velocity of a replaced slot resets to zero.
    """
    objective = standard_objective(scenario, sampler, weights)
    return optimize_objective("hybrid", n, scenario.region, objective, config)


def run_random_baseline(
    n: int, scenario: Scenario, sampler: CoverageSampler, weights: FitnessWeights,
    config: OptimizerConfig, budget: int | None = None,
) -> tuple[Deployment, RunState]:
    """Best of population_size * max_generations random deployments.

    The budget equals one optimizer run's per-generation evaluations; pass
    `budget` to override.
    """
    objective = standard_objective(scenario, sampler, weights)
    return _random_search(n, scenario.region, objective, config, budget)


ENGINES = {
    "ga": run_ga,
    "pso": run_pso,
    "hybrid": run_hybrid,
    "random": run_random_baseline,
}


def run_engine(
    name: str, n: int, scenario: Scenario, sampler: CoverageSampler,
    weights: FitnessWeights, config: OptimizerConfig,
) -> tuple[Deployment, RunState]:
    """Dispatch by engine name ('ga', 'pso', 'hybrid' or 'random')."""
    try:
        runner = ENGINES[name]
    except KeyError:
        raise ValueError(f"unknown engine {name!r}; expected one of {sorted(ENGINES)}") from None
    return runner(n, scenario, sampler, weights, config)
