"""Objective metrics for a deployment: Monte Carlo area coverage, disk-graph
connectivity, a spanning-tree transmit-energy proxy, and their weighted
scalar fitness.

Coverage is the fraction of a frozen set of uniform sample points lying
within the sensing radius of at least one node (binary disk model).
Connectivity is the fraction of nodes in the largest component of the
rc-disk graph. Energy sums the transmit cost of one packet per edge of the
Euclidean minimum spanning tree, a minimal multi-hop backbone rooted at
the node nearest the region center; edges longer than rc are allowed in
this proxy since infeasibility is already punished through connectivity.

The sample set is drawn once per optimizer run and reused for every
fitness call, so fitness is a deterministic function during search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .geometry import Deployment, Region, Scenario, draw_uniform_coords


@dataclass(frozen=True, eq=False)
class CoverageSampler:
    """Frozen Monte Carlo sample set used by every coverage call of one run."""

    points: np.ndarray
    rng_seed: int

    def __post_init__(self):
        arr = np.ascontiguousarray(np.array(self.points, dtype=np.float64, copy=True))
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError(f"expected (K >= 1, 2) sample points, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @classmethod
    def uniform(cls, region: Region, k: int, rng_seed: int) -> CoverageSampler:
        """K uniform samples over the region, reproducible from the seed."""
        if k < 1:
            raise ValueError(f"sample count must be >= 1, got {k}")
        rng = np.random.default_rng(rng_seed)
        return cls(draw_uniform_coords(k, region, rng), rng_seed)

    @property
    def k(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class FitnessWeights:
    """Non-negative weights for coverage, connectivity and energy terms."""

    w1: float = 0.6
    w2: float = 0.3
    w3: float = 0.1

    def __post_init__(self):
        if self.w1 < 0 or self.w2 < 0 or self.w3 < 0:
            raise ValueError("weights must be non-negative")
        if self.w1 + self.w2 + self.w3 <= 0:
            raise ValueError("at least one weight must be positive")


@dataclass(frozen=True)
class Evaluation:
    """All metrics of one deployment under one scenario."""

    coverage: float
    connectivity_ratio: float
    is_connected: bool
    energy_total: float
    fitness: float


def coverage(d: Deployment, scenario: Scenario, sampler: CoverageSampler) -> float:
    """Fraction of sample points within rs of at least one node."""
    if d.n == 0:
        return 0.0
    hit = kernels.coverage_count(d.coords, sampler.points, scenario.rs)
    return hit / sampler.k


def connectivity(d: Deployment, scenario: Scenario) -> tuple[float, bool]:
    """(largest-component fraction, fully-connected flag) of the rc-disk graph.

    Edge (i, j) exists iff distance <= rc. Empty deployments report
    (0.0, False); a single node is trivially connected.
    """
    if d.n == 0:
        return 0.0, False
    if d.n == 1:
        return 1.0, True
    largest = kernels.largest_component_size(d.coords, scenario.rc)
    ratio = largest / d.n
    return ratio, largest == d.n


def transmit_energy(dist: float, scenario: Scenario) -> float:
    """Energy to transmit one packet over `dist` meters (first-order model)."""
    if dist < 0:
        raise ValueError(f"distance must be >= 0, got {dist}")
    bits = scenario.packet_bits
    return scenario.e_elec * bits + scenario.e_amp * bits * (dist * dist)


def _mst_squared_lengths(d: Deployment, region: Region) -> np.ndarray:
    """Squared lengths of the Euclidean MST edges, rooted center-nearest."""
    coords = d.coords
    cx, cy = region.width / 2.0, region.height / 2.0
    dx = coords[:, 0] - cx
    dy = coords[:, 1] - cy
    start = int(np.argmin(dx * dx + dy * dy))
    _, _, d2 = kernels.mst_edges(coords, start)
    return d2


def _edge_energies(d2: np.ndarray, scenario: Scenario) -> list[float]:
    bits = scenario.packet_bits
    fixed = scenario.e_elec * bits
    amp = scenario.e_amp * bits
    return [fixed + amp * e for e in d2.tolist()]


def total_energy(d: Deployment, scenario: Scenario) -> float:
    """Transmit energy of one packet per MST edge; 0 for n <= 1.

    Summed with math.fsum so the result does not depend on edge order.
    """
    if d.n <= 1:
        return 0.0
    d2 = _mst_squared_lengths(d, scenario.region)
    return math.fsum(_edge_energies(d2, scenario))


def per_node_energies(d: Deployment, scenario: Scenario) -> np.ndarray:
    """Each node's share of the MST backbone: the energies of its incident edges."""
    out = np.zeros(d.n)
    if d.n <= 1:
        return out
    coords = d.coords
    cx, cy = scenario.region.width / 2.0, scenario.region.height / 2.0
    dxc = coords[:, 0] - cx
    dyc = coords[:, 1] - cy
    start = int(np.argmin(dxc * dxc + dyc * dyc))
    us, vs, d2 = kernels.mst_edges(coords, start)
    energies = _edge_energies(d2, scenario)
    for u, v, e in zip(us.tolist(), vs.tolist(), energies):
        out[u] += e
        out[v] += e
    return out


def fitness(
    d: Deployment,
    scenario: Scenario,
    sampler: CoverageSampler,
    weights: FitnessWeights,
) -> Evaluation:
    """Weighted scalar fitness w1*coverage + w2*connectivity - w3*energy.

    The energy term is normalized by n * transmit_energy(rc) so all three
    terms are dimensionless and O(1); it is 0 for n <= 1.
    """
    cov = coverage(d, scenario, sampler)
    ratio, connected = connectivity(d, scenario)
    energy = total_energy(d, scenario)
    if d.n > 1:
        norm_energy = energy / (d.n * transmit_energy(scenario.rc, scenario))
    else:
        norm_energy = 0.0
    score = weights.w1 * cov + weights.w2 * ratio - weights.w3 * norm_energy
    return Evaluation(
        coverage=cov,
        connectivity_ratio=ratio,
        is_connected=connected,
        energy_total=energy,
        fitness=score,
    )
