"""
Spectral Discretize Test Configuration

공용 픽스처 (4-정점 예제 그래프, 합성 blobs)
"""

import numpy as np
import pytest

from spectral_discretize.dataset_io import gen_blobs
from spectral_discretize.graph import CutType, build_graph
from spectral_discretize.relaxed import solve_relaxed

# 4-정점 예제 그래프
EXAMPLE_WEIGHTS = np.array(
    [
        [0.0, 0.5, 0.1, 0.8],
        [0.5, 0.0, 0.4, 0.2],
        [0.1, 0.4, 0.0, 0.5],
        [0.8, 0.2, 0.5, 0.0],
    ]
)


def pytest_configure(config):
    """마커 등록"""
    config.addinivalue_line(
        "markers", "slow: long-running statistical or timing checks"
    )


@pytest.fixture
def example_weights():
    return EXAMPLE_WEIGHTS.copy()


@pytest.fixture
def example_graph():
    """4-정점 예제 그래프 (ratio cut)"""
    return build_graph(EXAMPLE_WEIGHTS.copy(), CutType.RATIO)


@pytest.fixture
def example_relaxed(example_graph):
    return solve_relaxed(example_graph, 2)


@pytest.fixture
def blobs():
    """잘 분리된 3개 군집 (n = 60)"""
    return gen_blobs(60, 3, 2, 1.0, seed=7)


@pytest.fixture
def blob_graph(blobs):
    return build_graph(blobs, CutType.RATIO, k=5)
