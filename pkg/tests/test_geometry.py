import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wsnopt import (
    Deployment,
    InvalidScenarioError,
    Point,
    Region,
    Scenario,
    clamp_to_region,
    distance,
    random_deployment,
)

coords = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
points = st.builds(Point, coords, coords)


class TestDistance:
    def test_pythagorean_triple(self):
        assert distance(Point(0, 0), Point(3, 4)) == 5.0

    def test_identical_points(self):
        assert distance(Point(7, 7), Point(7, 7)) == 0.0

    def test_axis_aligned(self):
        assert distance(Point(0, 0), Point(10, 0)) == 10.0

    @given(points, points)
    def test_symmetry(self, a, b):
        assert distance(a, b) == distance(b, a)

    @given(points, points, points)
    def test_triangle_inequality(self, a, b, c):
        assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9

    @given(points, points)
    def test_zero_iff_equal(self, a, b):
        if (a.x, a.y) == (b.x, b.y):
            assert distance(a, b) == 0.0
        else:
            assert distance(a, b) > 0.0


class TestClamp:
    def test_lower_bound(self):
        assert clamp_to_region(Point(-5, 50), Region(100, 100)) == Point(0, 50)

    def test_interior_fixed_point(self):
        assert clamp_to_region(Point(50, 50), Region(100, 100)) == Point(50, 50)

    def test_corner(self):
        assert clamp_to_region(Point(120, 130), Region(100, 100)) == Point(100, 100)

    @given(points)
    def test_idempotent(self, p):
        region = Region(100, 100)
        once = clamp_to_region(p, region)
        assert clamp_to_region(once, region) == once
        assert region.contains(once)


class TestTypes:
    def test_point_rejects_nan(self):
        with pytest.raises(ValueError):
            Point(float("nan"), 0.0)
        with pytest.raises(ValueError):
            Point(0.0, float("inf"))

    def test_region_validation(self):
        with pytest.raises(ValueError):
            Region(0, 10)
        with pytest.raises(ValueError):
            Region(10, -1)
        assert Region(20, 30).area() == 600

    def test_scenario_rc_condition(self):
        region = Region(100, 100)
        with pytest.raises(InvalidScenarioError):
            Scenario(region=region, rs=20, rc=30)
        sc = Scenario(region=region, rs=20, rc=30, rc_check_override=True)
        assert sc.rc == 30
        assert Scenario(region=region, rs=20, rc=40).rc == 40

    def test_scenario_target_bounds(self):
        region = Region(100, 100)
        with pytest.raises(InvalidScenarioError):
            Scenario(region=region, rs=10, rc=20, coverage_target=0.0)
        with pytest.raises(InvalidScenarioError):
            Scenario(region=region, rs=10, rc=20, coverage_target=1.5)

    def test_deployment_immutable_and_shaped(self):
        d = Deployment([[1.0, 2.0], [3.0, 4.0]])
        assert d.n == 2 and len(d) == 2
        with pytest.raises(ValueError):
            d.coords[0, 0] = 9.0
        with pytest.raises(ValueError):
            Deployment([[1.0, 2.0, 3.0]])
        with pytest.raises(ValueError):
            Deployment([[float("nan"), 0.0]])

    def test_deployment_round_trip_points(self):
        pts = [Point(1.5, 2.5), Point(3.0, 4.0)]
        d = Deployment.from_points(pts)
        assert d.nodes() == pts


class TestRandomDeployment:
    def test_empty(self, region):
        d = random_deployment(0, region, rng_seed=1)
        assert d.n == 0
        assert d.coords.shape == (0, 2)

    def test_bounds_and_determinism(self, region):
        a = random_deployment(100, region, rng_seed=42)
        b = random_deployment(100, region, rng_seed=42)
        assert (a.coords == b.coords).all()
        assert (a.coords >= 0).all()
        assert (a.coords[:, 0] <= region.width).all()
        assert (a.coords[:, 1] <= region.height).all()

    def test_different_seeds_differ(self, region):
        a = random_deployment(50, region, rng_seed=1)
        b = random_deployment(50, region, rng_seed=2)
        assert not (a.coords == b.coords).all()

    def test_uniform_moments(self, region):
        # Law of large numbers: mean x within 3 standard errors of M/2.
        n = 10_000
        d = random_deployment(n, region, rng_seed=42)
        band = 3 * (region.width / math.sqrt(12)) / math.sqrt(n)
        assert abs(d.coords[:, 0].mean() - region.width / 2) <= band
        assert abs(d.coords[:, 1].mean() - region.height / 2) <= band

    def test_negative_count_rejected(self, region):
        with pytest.raises(ValueError):
            random_deployment(-1, region, rng_seed=0)
