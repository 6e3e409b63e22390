"""Spatial types shared by every other module: points, the rectangular
region, the scenario parameters and node deployments.

Coordinates are plain double-precision meters anchored at the origin, so a
region spans [0, M] x [0, N]. Out-of-bounds handling everywhere is hard
clamping. All types here are immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class InvalidScenarioError(ValueError):
    """Scenario parameters violate a model constraint (e.g. rc < 2*rs)."""


@dataclass(frozen=True)
class Point:
    """A location in meters; coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle [0, width] x [0, height]."""

    width: float
    height: float

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError(f"region dimensions must be positive, got {self.width}x{self.height}")

    def area(self) -> float:
        return self.width * self.height

    def center(self) -> Point:
        return Point(self.width / 2.0, self.height / 2.0)

    def contains(self, p: Point) -> bool:
        return 0.0 <= p.x <= self.width and 0.0 <= p.y <= self.height


@dataclass(frozen=True)
class Scenario:
    """Region plus sensing/communication radii, energy constants and targets.

    Defaults for the energy constants follow the usual first-order radio
    model (50 nJ/bit electronics, 100 pJ/bit/m^2 amplifier, 4000-bit
    packets). The communication radius must satisfy rc >= 2*rs unless
    rc_check_override is set.
    """

    region: Region
    rs: float
    rc: float
    e_elec: float = 50e-9
    e_amp: float = 100e-12
    packet_bits: int = 4000
    coverage_target: float = 0.95
    e_max: float = math.inf
    rc_check_override: bool = False

    def __post_init__(self):
        if self.rs <= 0 or self.rc <= 0:
            raise InvalidScenarioError(f"radii must be positive, got rs={self.rs}, rc={self.rc}")
        if self.rc < 2 * self.rs and not self.rc_check_override:
            raise InvalidScenarioError(
                f"rc={self.rc} violates rc >= 2*rs (rs={self.rs}); "
                "pass rc_check_override=True to allow"
            )
        if not (0 < self.coverage_target <= 1):
            raise InvalidScenarioError(
                f"coverage_target must be in (0, 1], got {self.coverage_target}"
            )
        if self.packet_bits <= 0:
            raise InvalidScenarioError(f"packet_bits must be positive, got {self.packet_bits}")
        if self.e_elec < 0 or self.e_amp < 0:
            raise InvalidScenarioError("energy constants must be non-negative")


@dataclass(frozen=True, eq=False)
class Deployment:
    """Ordered node coordinates; the candidate solution for every engine.

    Wraps an immutable (n, 2) float64 array. Node order is stable: index i
    is node identity within one optimizer run.
    """

    coords: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))

    def __post_init__(self):
        arr = np.array(self.coords, dtype=np.float64, copy=True)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"expected (n, 2) coordinates, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("node coordinates must be finite")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def from_points(cls, points: list[Point]) -> Deployment:
        return cls(np.array([(p.x, p.y) for p in points], dtype=np.float64).reshape(-1, 2))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    def nodes(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self.coords]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Deployment):
            return NotImplemented
        return self.coords.shape == other.coords.shape and bool(
            (self.coords == other.coords).all()
        )


def distance(a: Point, b: Point) -> float:
    """Euclidean distance between two points."""
    return math.hypot(a.x - b.x, a.y - b.y)


def clamp_to_region(p: Point, region: Region) -> Point:
    """Project a point onto the region; interior points are unchanged."""
    return Point(min(max(p.x, 0.0), region.width), min(max(p.y, 0.0), region.height))


def draw_uniform_coords(n: int, region: Region, rng: np.random.Generator) -> np.ndarray:
    """n uniform positions as an (n, 2) array, consuming rng x-draws then y-draws."""
    xs = rng.uniform(0.0, region.width, size=n)
    ys = rng.uniform(0.0, region.height, size=n)
    return np.column_stack([xs, ys]) if n else np.empty((0, 2))


def random_deployment(n: int, region: Region, rng_seed: int) -> Deployment:
    """n nodes drawn uniformly over the region; same seed, same deployment."""
    if n < 0:
        raise ValueError(f"node count must be >= 0, got {n}")
    rng = np.random.default_rng(rng_seed)
    return Deployment(draw_uniform_coords(n, region, rng))
