"""File formats: the JSON experiment config, run-record and sweep CSV
schemas, deployment coordinate JSON, and report JSON.

The config parser is strict (unknown keys and type mismatches are errors
with a field path) and total: parse(serialize(config)) round-trips every
valid config. CSV schemas have fixed column order, UTF-8, RFC 4180
quoting; stored values keep full declared precision.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .evaluation import FitnessWeights
from .geometry import Region, Scenario
from .optimizers import OptimizerConfig
from .search import (
    DEFAULT_MC_TOLERANCE,
    DEFAULT_RETRIES_PER_N,
    DEFAULT_VERIFY_SAMPLES,
    FeasibilityReport,
)


class ConfigError(ValueError):
    """Config file could not be parsed; message carries field diagnostics."""


@dataclass(frozen=True)
class EnergyParams:
    e_elec: float = 50e-9
    e_amp: float = 100e-12
    packet_bits: int = 4000


@dataclass(frozen=True)
class SearchSettings:
    retries_per_n: int = DEFAULT_RETRIES_PER_N
    mc_tolerance: float = DEFAULT_MC_TOLERANCE
    verify_samples: int = DEFAULT_VERIFY_SAMPLES


@dataclass(frozen=True)
class ScenarioSpec:
    """One experiment scenario as written in the config file."""

    id: str
    width: float
    height: float
    rs: float
    rc: float
    coverage_target: float = 0.95

    def to_scenario(self, energy: EnergyParams, rc_check_override: bool = False) -> Scenario:
        return Scenario(
            region=Region(self.width, self.height),
            rs=self.rs,
            rc=self.rc,
            e_elec=energy.e_elec,
            e_amp=energy.e_amp,
            packet_bits=energy.packet_bits,
            coverage_target=self.coverage_target,
            rc_check_override=rc_check_override,
        )


@dataclass(frozen=True)
class ConfigFile:
    scenarios: tuple[ScenarioSpec, ...]
    optimizer: OptimizerConfig
    energy: EnergyParams
    weights: FitnessWeights
    search: SearchSettings
    seeds: tuple[int, ...]

    def scenario(self, scenario_id: str) -> ScenarioSpec:
        for spec in self.scenarios:
            if spec.id == scenario_id:
                return spec
        known = ", ".join(s.id for s in self.scenarios)
        raise ConfigError(f"unknown scenario id {scenario_id!r}; config defines: {known}")


def _default_scenario_id(width: float, height: float, rs: float) -> str:
    def fmt(v: float) -> str:
        return str(int(v)) if float(v).is_integer() else str(v)

    return f"{fmt(width)}x{fmt(height)}_rs{fmt(rs)}"


_MISSING = object()


class _Section:
    """Typed field extraction with path-qualified error messages."""

    def __init__(self, data, path: str):
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected an object, got {type(data).__name__}")
        self.data = dict(data)
        self.path = path

    def take(self, key: str, kind, default=_MISSING):
        if key not in self.data:
            if default is _MISSING:
                raise ConfigError(f"{self.path}.{key}: required field is missing")
            return default
        value = self.data.pop(key)
        if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        if kind is int and isinstance(value, int) and not isinstance(value, bool):
            return value
        if kind in (list, dict, str) and isinstance(value, kind):
            return value
        raise ConfigError(
            f"{self.path}.{key}: expected {kind.__name__}, got {type(value).__name__}"
        )

    def finish(self):
        if self.data:
            extra = ", ".join(sorted(self.data))
            raise ConfigError(f"{self.path}: unknown field(s): {extra}")


def _parse_scenario(data, index: int) -> ScenarioSpec:
    sec = _Section(data, f"scenarios[{index}]")
    area = sec.take("area", list)
    if len(area) != 2 or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in area
    ):
        raise ConfigError(f"scenarios[{index}].area: expected [width, height] numbers")
    width, height = float(area[0]), float(area[1])
    if width <= 0 or height <= 0:
        raise ConfigError(f"scenarios[{index}].area: dimensions must be positive")
    rs = sec.take("rs", float)
    rc = sec.take("rc", float, default=2.0 * rs)
    if rs <= 0 or rc <= 0:
        raise ConfigError(f"scenarios[{index}]: rs and rc must be positive")
    coverage_target = sec.take("coverage_target", float, default=0.95)
    if not 0.0 < coverage_target <= 1.0:
        raise ConfigError(f"scenarios[{index}].coverage_target: must be in (0, 1]")
    scenario_id = sec.take("id", str, default=_default_scenario_id(width, height, rs))
    sec.finish()
    return ScenarioSpec(
        id=scenario_id, width=width, height=height, rs=rs, rc=rc,
        coverage_target=coverage_target,
    )


def config_from_dict(data: dict) -> ConfigFile:
    root = _Section(data, "config")

    raw_scenarios = root.take("scenarios", list)
    if not raw_scenarios:
        raise ConfigError("config.scenarios: at least one scenario is required")
    scenarios = tuple(_parse_scenario(s, i) for i, s in enumerate(raw_scenarios))
    seen: set[str] = set()
    for spec in scenarios:
        if spec.id in seen:
            raise ConfigError(f"config.scenarios: duplicate scenario id {spec.id!r}")
        seen.add(spec.id)

    opt = _Section(root.take("optimizer", dict, default={}), "optimizer")
    defaults = OptimizerConfig()
    try:
        optimizer = OptimizerConfig(
            population_size=opt.take("population_size", int, defaults.population_size),
            max_generations=opt.take("max_generations", int, defaults.max_generations),
            crossover_rate=opt.take("crossover_rate", float, defaults.crossover_rate),
            mutation_rate=opt.take("mutation_rate", float, defaults.mutation_rate),
            cognitive_weight=opt.take("cognitive_weight", float, defaults.cognitive_weight),
            social_weight=opt.take("social_weight", float, defaults.social_weight),
            inertia_start=opt.take("inertia_start", float, defaults.inertia_start),
            inertia_end=opt.take("inertia_end", float, defaults.inertia_end),
            velocity_cap_fraction=opt.take(
                "velocity_cap_fraction", float, defaults.velocity_cap_fraction
            ),
            convergence_epsilon=opt.take(
                "convergence_epsilon", float, defaults.convergence_epsilon
            ),
            convergence_patience=opt.take(
                "convergence_patience", int, defaults.convergence_patience
            ),
            mc_samples=opt.take("mc_samples", int, defaults.mc_samples),
            seed=opt.take("seed", int, defaults.seed),
        )
    except ValueError as exc:
        raise ConfigError(f"optimizer: {exc}") from exc
    opt.finish()

    en = _Section(root.take("energy", dict, default={}), "energy")
    energy = EnergyParams(
        e_elec=en.take("e_elec", float, EnergyParams.e_elec),
        e_amp=en.take("e_amp", float, EnergyParams.e_amp),
        packet_bits=en.take("packet_bits", int, EnergyParams.packet_bits),
    )
    en.finish()

    wt = _Section(root.take("weights", dict, default={}), "weights")
    try:
        weights = FitnessWeights(
            w1=wt.take("w1", float, FitnessWeights.w1),
            w2=wt.take("w2", float, FitnessWeights.w2),
            w3=wt.take("w3", float, FitnessWeights.w3),
        )
    except ValueError as exc:
        raise ConfigError(f"weights: {exc}") from exc
    wt.finish()

    se = _Section(root.take("search", dict, default={}), "search")
    search = SearchSettings(
        retries_per_n=se.take("retries_per_n", int, SearchSettings.retries_per_n),
        mc_tolerance=se.take("mc_tolerance", float, SearchSettings.mc_tolerance),
        verify_samples=se.take("verify_samples", int, SearchSettings.verify_samples),
    )
    se.finish()

    raw_seeds = root.take("seeds", list, default=[0])
    if not raw_seeds or not all(
        isinstance(s, int) and not isinstance(s, bool) for s in raw_seeds
    ):
        raise ConfigError("config.seeds: expected a non-empty list of integers")
    root.finish()

    return ConfigFile(
        scenarios=scenarios,
        optimizer=optimizer,
        energy=energy,
        weights=weights,
        search=search,
        seeds=tuple(raw_seeds),
    )


def config_to_dict(config: ConfigFile) -> dict:
    scenarios = []
    for s in config.scenarios:
        scenarios.append({
            "id": s.id,
            "area": [s.width, s.height],
            "rs": s.rs,
            "rc": s.rc,
            "coverage_target": s.coverage_target,
        })
    o = config.optimizer
    return {
        "scenarios": scenarios,
        "optimizer": {
            "population_size": o.population_size,
            "max_generations": o.max_generations,
            "crossover_rate": o.crossover_rate,
            "mutation_rate": o.mutation_rate,
            "cognitive_weight": o.cognitive_weight,
            "social_weight": o.social_weight,
            "inertia_start": o.inertia_start,
            "inertia_end": o.inertia_end,
            "velocity_cap_fraction": o.velocity_cap_fraction,
            "convergence_epsilon": o.convergence_epsilon,
            "convergence_patience": o.convergence_patience,
            "mc_samples": o.mc_samples,
            "seed": o.seed,
        },
        "energy": {
            "e_elec": config.energy.e_elec,
            "e_amp": config.energy.e_amp,
            "packet_bits": config.energy.packet_bits,
        },
        "weights": {
            "w1": config.weights.w1,
            "w2": config.weights.w2,
            "w3": config.weights.w3,
        },
        "search": {
            "retries_per_n": config.search.retries_per_n,
            "mc_tolerance": config.search.mc_tolerance,
            "verify_samples": config.search.verify_samples,
        },
        "seeds": list(config.seeds),
    }


def load_config(path) -> ConfigFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return config_from_dict(data)


def save_config(config: ConfigFile, path) -> None:
    Path(path).write_text(
        json.dumps(config_to_dict(config), indent=2) + "\n", encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# Run records (one row per fixed-n engine run)

RUN_RECORD_COLUMNS = [
    "scenario_id", "algorithm", "seed", "n_nodes", "coverage",
    "connectivity_ratio", "is_connected", "energy_total", "fitness",
    "generations_used", "wall_time",
]


@dataclass(frozen=True)
class RunRecord:
    scenario_id: str
    algorithm: str
    seed: int
    n_nodes: int
    coverage: float
    connectivity_ratio: float
    is_connected: bool
    energy_total: float
    fitness: float
    generations_used: int
    wall_time: float

    def to_row(self) -> list[str]:
        return [
            self.scenario_id,
            self.algorithm,
            str(self.seed),
            str(self.n_nodes),
            f"{self.coverage:.6f}",
            f"{self.connectivity_ratio:.6f}",
            "true" if self.is_connected else "false",
            f"{self.energy_total:.6e}",
            f"{self.fitness:.6f}",
            str(self.generations_used),
            f"{self.wall_time:.3f}",
        ]

    @classmethod
    def from_row(cls, row: dict) -> RunRecord:
        return cls(
            scenario_id=row["scenario_id"],
            algorithm=row["algorithm"],
            seed=int(row["seed"]),
            n_nodes=int(row["n_nodes"]),
            coverage=float(row["coverage"]),
            connectivity_ratio=float(row["connectivity_ratio"]),
            is_connected=row["is_connected"] == "true",
            energy_total=float(row["energy_total"]),
            fitness=float(row["fitness"]),
            generations_used=int(row["generations_used"]),
            wall_time=float(row["wall_time"]),
        )


def append_run_records(path, records: list[RunRecord]) -> None:
    path = Path(path)
    new_file = not path.exists()
    with open(path, "a", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if new_file:
            writer.writerow(RUN_RECORD_COLUMNS)
        for record in records:
            writer.writerow(record.to_row())


def read_run_records(path) -> list[RunRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [RunRecord.from_row(row) for row in csv.DictReader(fh)]


# ---------------------------------------------------------------------------
# Sweep results (one row per minimal-node search cell)

SWEEP_COLUMNS = [
    "scenario_id", "algorithm", "seed", "status", "n_nodes",
    "verified_coverage", "is_connected", "attempts", "wall_time",
]


def sweep_row(scenario_id: str, algorithm: str, seed: int,
              report: FeasibilityReport | None) -> list[str]:
    if report is None:
        return [scenario_id, algorithm, str(seed), "exhausted", "", "", "", "", ""]
    return [
        scenario_id, algorithm, str(seed), "ok", str(report.n),
        f"{report.verified_coverage:.6f}",
        "true" if report.is_connected else "false",
        str(report.attempts),
        f"{report.wall_time:.3f}",
    ]


def write_sweep_csv(path, rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(rows)


def read_sweep_rows(path) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def write_pivot_csv(path, scenario_ids: list[str], algorithms: list[str],
                    cells: dict[tuple[str, str], float | None]) -> None:
    """Table 3 style view: rows scenarios, columns algorithms, cell mean n."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scenario_id"] + algorithms)
        for sid in scenario_ids:
            row = [sid]
            for algo in algorithms:
                value = cells.get((sid, algo))
                row.append("" if value is None else f"{value:.2f}")
            writer.writerow(row)


# ---------------------------------------------------------------------------
# JSON artifacts


def write_deployment_json(path, deployment) -> None:
    pairs = [[float(x), float(y)] for x, y in deployment.coords]
    Path(path).write_text(json.dumps(pairs) + "\n", encoding="utf-8")


def read_deployment_json(path):
    from .geometry import Deployment

    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in data
    ):
        raise ValueError(f"{path}: expected a JSON list of [x, y] pairs")
    return Deployment([[float(p[0]), float(p[1])] for p in data] if data else [])


def report_to_dict(report: FeasibilityReport, scenario_id: str, algorithm: str,
                   seed: int) -> dict:
    return {
        "scenario_id": scenario_id,
        "algorithm": algorithm,
        "seed": seed,
        "n": report.n,
        "feasible": report.feasible,
        "verified_coverage": report.verified_coverage,
        "is_connected": report.is_connected,
        "attempts": report.attempts,
        "wall_time": report.wall_time,
        "deployment": [[float(x), float(y)] for x, y in report.deployment.coords],
    }


def write_json(path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def write_history_csv(path, history: list[float]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["generation", "best_fitness"])
        for generation, value in enumerate(history):
            writer.writerow([str(generation), f"{value:.12g}"])


def mean_or_none(values: list[float]) -> float | None:
    if not values:
        return None
    return math.fsum(values) / len(values)
