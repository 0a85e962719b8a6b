"""
Spectral Rotation Discretizers

- SR: min ‖F*R - Y‖²: 지시 행렬 Y를 목표로 R과 Y를 교대 최적화
- ISR: min ‖F*R - f(Y)‖²: 스케일 지시 행렬을 목표로 하며,
  first_order의 교대 최적화 루틴을 η = 0으로 사용
"""

import logging
from typing import List

import numpy as np

from ..graph import Graph
from ..models import DiscretizeMethod
from ..numerics import procrustes
from ..relaxed import Assignment, RelaxedSolution
from .base import BaseDiscretizer, DiscretizeOutcome, best_of_restarts, check_consistent, one_hot
from .first_order import FirstOrderDiscretizer

logger = logging.getLogger(__name__)


def _repair_by_score(labels: np.ndarray, scores: np.ndarray) -> np.ndarray:
    """빈 열 j마다, 크기 2 이상 군집의 행 중 scores[:, j]가 가장 큰 행을 옮김"""
    c = scores.shape[1]
    labels = labels.copy()
    for j in range(c):
        counts = np.bincount(labels, minlength=c)
        if counts[j] > 0:
            continue
        candidates = np.flatnonzero(counts[labels] > 1)
        labels[candidates[int(np.argmax(scores[candidates, j]))]] = j
    return labels


def run_spectral_rotation(rs: RelaxedSolution, init_labels: np.ndarray, max_sweeps: int) -> DiscretizeOutcome:
    """
    한 초기화에서 SR 교대 최적화

    (a) R = procrustes(F*ᵀY), (b) 각 행을 F*R의 최대 성분 열로 배정.
    라벨이 변하지 않으면 종료합니다.

    Returns:
        DiscretizeOutcome (trace[t] = tr(YᵀF*R))
    """
    labels = np.array(init_labels, dtype=np.int64)
    rows = np.arange(rs.n)
    trace: List[float] = []
    converged = False
    sweeps = 0

    for sweeps in range(1, max_sweeps + 1):
        r = procrustes(rs.F_star.T @ one_hot(labels, rs.c))
        scores = rs.F_star @ r
        updated = _repair_by_score(np.argmax(scores, axis=1), scores)
        trace.append(float(np.sum(scores[rows, updated])))
        if np.array_equal(updated, labels):
            converged = True
            break
        labels = updated

    if not converged:
        logger.warning(f"spectral rotation: no fixed point after {max_sweeps} sweeps")
    return DiscretizeOutcome(
        assignment=Assignment(labels=labels, c=rs.c),
        objective_trace=trace,
        iterations=sweeps,
        converged=converged,
        method_objective=trace[-1],
    )


class SRDiscretizer(BaseDiscretizer):
    """Spectral rotation (지시 행렬 목표)"""

    method = DiscretizeMethod.SR
    description = "spectral rotation towards the 0/1 indicator"

    def run(self, rs: RelaxedSolution, g: Graph) -> DiscretizeOutcome:
        check_consistent(rs, g)
        return best_of_restarts(
            self.config.restarts,
            self.config.seed,
            rs.n,
            rs.c,
            lambda init: run_spectral_rotation(rs, init, self.config.max_sweeps),
        )


class ISRDiscretizer(FirstOrderDiscretizer):
    """Improved spectral rotation (η = 0인 first-order)"""

    method = DiscretizeMethod.ISR
    description = "improved spectral rotation towards the scaled indicator"

    def _eta(self) -> float:
        return 0.0
