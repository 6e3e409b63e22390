import numpy as np
import pytest

from wsnopt import CoverageSampler, FitnessWeights, OptimizerConfig, Region, Scenario


@pytest.fixture
def region():
    return Region(100.0, 100.0)


@pytest.fixture
def scenario(region):
    return Scenario(region=region, rs=20.0, rc=40.0)


@pytest.fixture
def sampler(region):
    return CoverageSampler.uniform(region, 500, rng_seed=7)


@pytest.fixture
def weights():
    return FitnessWeights()


@pytest.fixture
def small_config():
    """Fast engine settings for unit-level runs."""
    return OptimizerConfig(
        population_size=8,
        max_generations=6,
        mc_samples=100,
        convergence_patience=6,
        seed=3,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
