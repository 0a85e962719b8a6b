"""
Graph Construction Module

adaptive-neighbor 가중치로 유사도 그래프를 만들고,
두 가지 컷 규약에 따라 차수 벡터 D와 라플라시안 L을 구성합니다.

컷 규약:
- ratio: L = Deg - S, D = I
- normalized: L = I - Deg^(-1/2) S Deg^(-1/2), D = Deg

두 규약 모두 D^(1/2) L D^(1/2) = Deg - S 이므로
tr(GᵀLG)는 G = f(Y)에 대해 고전적인 RatioCut / NCut 값과 같습니다.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
from scipy.spatial.distance import cdist

from .dataset_io import DataMatrix
from .errors import (
    ContractViolation,
    DegenerateNeighborhoodError,
    DisconnectedVertexError,
)
from .numerics import as_dense

logger = logging.getLogger(__name__)

SYMMETRY_ATOL = 1e-12


class CutType(Enum):
    """그래프 컷 규약"""

    RATIO = "ratio"
    NORMALIZED = "normalized"

    @classmethod
    def from_string(cls, value: Union[str, "CutType"]) -> "CutType":
        """문자열에서 CutType 변환"""
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ContractViolation(f"unknown cut {value!r}; expected one of {[c.value for c in cls]}") from None


@dataclass(frozen=True)
class Graph:
    """
    불변 그래프

    Attributes:
        weights: 대칭 비음수 가중치 S (n, n), 대각 0
        degrees: 스케일링 벡터 D (ratio: 1, normalized: 차수)
        laplacian: 대칭 PSD 라플라시안 L (n, n)
        cut: 컷 규약
        raw_degrees: 실제 차수 Deg_ii = Σ_j S_ij
        neighbor_k: 특징 행렬에서 구성했을 때의 k (raw S면 None)
    """
    weights: np.ndarray
    degrees: np.ndarray
    laplacian: np.ndarray
    cut: CutType
    raw_degrees: np.ndarray
    neighbor_k: Optional[int] = None

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def cut_kernel(self) -> np.ndarray:
        """D^(1/2) L D^(1/2) = Deg - S (군집별 cut 값의 분자)"""
        return np.diag(self.raw_degrees) - self.weights


# =============================================================================
# 거리 / 가중치
# =============================================================================

def pairwise_sq_dists(data: Union[DataMatrix, np.ndarray]) -> np.ndarray:
    """
    제곱 유클리드 거리 행렬 d_ij = ‖x_i - x_j‖²

    Args:
        data: DataMatrix 또는 (n, d) 배열 (n >= 2)

    Returns:
        (n, n) 대칭 비음수 행렬, 대각 0
    """
    x = data.features if isinstance(data, DataMatrix) else as_dense(data, "features")
    if x.shape[0] < 2:
        raise ContractViolation(f"need at least 2 samples, got {x.shape[0]}")
    d = cdist(x, x, metric="sqeuclidean")
    np.fill_diagonal(d, 0.0)
    return d


def can_weights(dists: np.ndarray, k: int) -> np.ndarray:
    """
    adaptive-neighbor 가중치 W (행마다 합 1, 양수는 정확히 k개)

    S_ij = max(d_i^(k+1) - d_ij, 0) / Σ_{j<=k} (d_i^(k+1) - d_i^(j))
    자기 자신은 순위에서 제외하며, 같은 거리는 작은 인덱스가 우선합니다.

    Args:
        dists: (n, n) 제곱 거리 행렬
        k: 이웃 수 (1 <= k <= n - 2)

    Returns:
        (n, n) 방향성 가중치 행렬 (대칭화 전)

    Raises:
        DegenerateNeighborhoodError: k+1개 이웃이 같은 거리
    """
    d = as_dense(dists, "distance matrix")
    n = d.shape[0]
    if d.shape != (n, n):
        raise ContractViolation(f"distance matrix must be square, got shape {d.shape}")
    if not 1 <= k <= n - 2:
        raise ContractViolation(f"k must satisfy 1 <= k <= n - 2 (n={n}), got {k}")

    w = np.zeros((n, n))
    indices = np.arange(n)
    for i in range(n):
        others = np.delete(indices, i)
        order = others[np.argsort(d[i, others], kind="stable")]
        nearest = d[i, order[: k + 1]]
        denom = k * nearest[k] - float(np.sum(nearest[:k]))
        if not denom > 0:
            raise DegenerateNeighborhoodError(i)
        w[i, order[:k]] = (nearest[k] - nearest[:k]) / denom
    return w


# =============================================================================
# 그래프 생성
# =============================================================================

def _validate_raw_weights(s: np.ndarray) -> None:
    n = s.shape[0]
    if s.shape != (n, n) or n < 2:
        raise ContractViolation(f"weight matrix must be square with n >= 2, got shape {s.shape}")
    if np.any(s < 0):
        raise ContractViolation("weight matrix has negative entries")
    if float(np.max(np.abs(s - s.T))) > SYMMETRY_ATOL * max(1.0, float(np.max(s))):
        raise ContractViolation("weight matrix is not symmetric")
    if np.any(np.diag(s) != 0):
        raise ContractViolation("weight matrix must have a zero diagonal")


def laplacian_from_weights(weights, cut: Union[str, CutType], neighbor_k: Optional[int] = None) -> Graph:
    """
    대칭 가중치 행렬로부터 Graph 구성

    Args:
        weights: (n, n) 대칭 비음수 행렬, 대각 0
        cut: 컷 규약
        neighbor_k: 기록용 이웃 수

    Returns:
        Graph

    Raises:
        DisconnectedVertexError: normalized cut에서 차수 0 정점
    """
    cut = CutType.from_string(cut)
    s = as_dense(weights, "weight matrix")
    _validate_raw_weights(s)
    s = (s + s.T) / 2.0
    n = s.shape[0]
    deg = s.sum(axis=1)

    if cut is CutType.RATIO:
        laplacian = np.diag(deg) - s
        scaling = np.ones(n)
    else:
        isolated = np.flatnonzero(deg <= 0)
        if isolated.size:
            raise DisconnectedVertexError(int(isolated[0]))
        inv_sqrt = 1.0 / np.sqrt(deg)
        laplacian = np.eye(n) - inv_sqrt[:, None] * s * inv_sqrt[None, :]
        laplacian = (laplacian + laplacian.T) / 2.0
        scaling = deg.copy()

    for arr in (s, scaling, laplacian, deg):
        arr.setflags(write=False)
    return Graph(
        weights=s,
        degrees=scaling,
        laplacian=laplacian,
        cut=cut,
        raw_degrees=deg,
        neighbor_k=neighbor_k,
    )


def build_graph(
    source: Union[DataMatrix, np.ndarray],
    cut: Union[str, CutType],
    k: Optional[int] = None,
) -> Graph:
    """
    특징 행렬 또는 raw 가중치 행렬로부터 Graph 생성

    DataMatrix가 주어지면 adaptive-neighbor 가중치 W를 만든 뒤 S = (W + Wᵀ)/2로 대칭화합니다.
    ndarray는 이미 구성된 가중치 행렬로 취급합니다.

    Args:
        source: DataMatrix (features) 또는 (n, n) 가중치 행렬
        cut: 컷 규약
        k: 이웃 수 (특징 입력일 때, 기본: 설정값)

    Returns:
        Graph
    """
    if isinstance(source, DataMatrix):
        if k is None:
            from .config import get_config
            k = get_config().graph.k_neighbors
        w = can_weights(pairwise_sq_dists(source), k)
        logger.debug(f"Built adaptive-neighbor weights: n={source.rows}, k={k}")
        return laplacian_from_weights((w + w.T) / 2.0, cut, neighbor_k=k)
    return laplacian_from_weights(source, cut)
