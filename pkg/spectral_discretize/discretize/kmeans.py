"""
k-means Discretizers

F*의 행(또는 단위 길이로 정규화한 행)을 scikit-learn KMeans로 군집화합니다.
greedy k-means++ 초기화, km_restarts회 재시작 중 최소 inertia 선택.
"""

import logging
import warnings
from typing import Optional

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from ..errors import ContractViolation
from ..graph import Graph
from ..models import DiscretizeMethod, DiscretizerConfig
from ..relaxed import Assignment, RelaxedSolution
from .base import BaseDiscretizer, DiscretizeOutcome

logger = logging.getLogger(__name__)

ZERO_ROW_NORM = 1e-12


def normalize_rows(f: np.ndarray) -> np.ndarray:
    """각 행을 단위 길이로 (노름 < 1e-12인 행은 그대로)"""
    norms = np.linalg.norm(f, axis=1)
    scale = np.where(norms >= ZERO_ROW_NORM, norms, 1.0)
    return f / scale[:, None]


def _centroids(x: np.ndarray, labels: np.ndarray, c: int) -> np.ndarray:
    counts = np.bincount(labels, minlength=c).astype(float)
    sums = np.zeros((c, x.shape[1]))
    np.add.at(sums, labels, x)
    return sums / np.maximum(counts, 1.0)[:, None]


def repair_empty_clusters(x: np.ndarray, labels: np.ndarray, c: int) -> np.ndarray:
    """
    빈 군집마다 자기 중심에서 가장 먼 점을 옮김 (크기 1 군집의 점은 제외)

    Args:
        x: (n, d) 점
        labels: 라벨
        c: 군집 수
    """
    labels = labels.copy()
    for j in range(c):
        counts = np.bincount(labels, minlength=c)
        if counts[j] > 0:
            continue
        dist = np.sum((x - _centroids(x, labels, c)[labels]) ** 2, axis=1)
        dist[counts[labels] <= 1] = -np.inf
        i = int(np.argmax(dist))
        logger.debug(f"k-means repair: moving row {i} into empty cluster {j}")
        labels[i] = j
    return labels


def run_kmeans(x: np.ndarray, c: int, config: DiscretizerConfig) -> DiscretizeOutcome:
    """
    행렬 x의 행에 대한 best-of-restarts k-means

    Args:
        x: (n, d) 점
        c: 군집 수 (n >= c)
        config: km_restarts, km_max_iters, seed 사용

    Returns:
        DiscretizeOutcome (method_objective = inertia)
    """
    if x.shape[0] < c:
        raise ContractViolation(f"k-means needs n >= c, got n={x.shape[0]}, c={c}")
    km = KMeans(
        n_clusters=c,
        init="k-means++",
        n_init=config.km_restarts,
        max_iter=config.km_max_iters,
        random_state=config.seed % 2**32,
    )
    with warnings.catch_warnings():
        # 서로 다른 점이 c개보다 적으면 경고 후 빈 군집이 생길 수 있음 (아래에서 보정)
        warnings.simplefilter("ignore", ConvergenceWarning)
        labels = km.fit_predict(x).astype(np.int64)
    labels = repair_empty_clusters(x, labels, c)
    inertia = float(np.sum((x - _centroids(x, labels, c)[labels]) ** 2))
    n_iter = int(km.n_iter_)
    return DiscretizeOutcome(
        assignment=Assignment(labels=labels, c=c),
        objective_trace=[inertia],
        iterations=n_iter,
        converged=n_iter < config.km_max_iters,
        method_objective=inertia,
    )


class KMeansDiscretizer(BaseDiscretizer):
    """F* 행에 대한 k-means"""

    method = DiscretizeMethod.KM
    description = "k-means on the rows of F*"

    def features(self, f_star: np.ndarray) -> np.ndarray:
        return f_star

    def run(self, rs: RelaxedSolution, g: Optional[Graph] = None) -> DiscretizeOutcome:
        return run_kmeans(self.features(rs.F_star), rs.c, self.config)


class NormalizedKMeansDiscretizer(KMeansDiscretizer):
    """행 정규화 후 k-means"""

    method = DiscretizeMethod.KM_NORM
    description = "k-means on the row-normalized F*"

    def features(self, f_star: np.ndarray) -> np.ndarray:
        return normalize_rows(f_star)
