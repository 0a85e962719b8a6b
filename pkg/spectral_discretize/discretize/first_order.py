"""
First-Order Discretization

gradient 결합 항을 포함한 목적 함수
    max tr((RᵀF*ᵀ - ηRᵀF*ᵀL) G),  G = f(Y)
를 R-step(Procrustes)과 행 단위 greedy Y-step으로 교대 최적화합니다.

각 sweep:
1. P = F* - ηLF*, R = procrustes(PᵀG), M = PR (sweep 동안 고정)
2. i = 0..n-1 순서로 loss gain δ_ij를 계산하여 argmax 열로 이동
   (이동하면 열이 비는 경우 건너뜀)
3. sweep 동안 라벨 변화가 없으면 수렴

η = 0이면 improved spectral rotation과 같은 문제가 되며,
ISRDiscretizer는 이 모듈의 루틴을 η = 0으로 호출합니다.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from ..errors import ContractViolation
from ..graph import Graph
from ..models import DiscretizeMethod
from ..numerics import procrustes
from ..relaxed import Assignment, RelaxedSolution
from .base import BaseDiscretizer, DiscretizeOutcome, best_of_restarts, check_consistent

logger = logging.getLogger(__name__)

# 현재 열보다 이만큼 커야 이동 (동점 진동 방지)
MOVE_TOL = 1e-12


# =============================================================================
# 상태
# =============================================================================

@dataclass
class FirstOrderState:
    """
    한 sweep 동안의 Y-step 상태

    Attributes:
        R: (c, c) 회전
        M: (n, c) 행렬 M = F*R - ηLF*R
        labels: 현재 라벨 (sweep 경계에서 빈 열 없음)
        column_mass: Σ_{k∈C_j} √D_kk M_kj
        column_weight: Σ_{k∈C_j} D_kk
        counts: 열별 행 수
        degrees: 스케일링 벡터 D
    """
    R: np.ndarray
    M: np.ndarray
    labels: np.ndarray
    column_mass: np.ndarray
    column_weight: np.ndarray
    counts: np.ndarray
    degrees: np.ndarray

    @property
    def n(self) -> int:
        return self.M.shape[0]

    @property
    def c(self) -> int:
        return self.M.shape[1]

    @classmethod
    def build(cls, p: np.ndarray, labels: np.ndarray, degrees: np.ndarray) -> "FirstOrderState":
        """
        R-step 수행 후 캐시 초기화

        Args:
            p: F* - ηLF* (n, c)
            labels: 빈 열이 없는 라벨
            degrees: 스케일링 벡터 D
        """
        c = p.shape[1]
        labels = np.array(labels, dtype=np.int64)
        g_mat = _scaled(labels, c, degrees)
        r = procrustes(p.T @ g_mat)
        state = cls(
            R=r,
            M=p @ r,
            labels=labels,
            column_mass=np.zeros(c),
            column_weight=np.zeros(c),
            counts=np.zeros(c, dtype=np.int64),
            degrees=degrees,
        )
        state.column_mass, state.column_weight, state.counts = state.recompute()
        return state

    def recompute(self):
        """캐시를 처음부터 다시 계산 (mass, weight, counts)"""
        rows = np.arange(self.n)
        mass = np.bincount(
            self.labels, weights=np.sqrt(self.degrees) * self.M[rows, self.labels], minlength=self.c
        )
        weight = np.bincount(self.labels, weights=self.degrees, minlength=self.c)
        counts = np.bincount(self.labels, minlength=self.c)
        return mass, weight, counts

    def objective(self) -> float:
        """tr(MᵀG)를 처음부터 계산"""
        return float(np.sum(self.M * _scaled(self.labels, self.c, self.degrees)))

    def row_gains(self, i: int) -> np.ndarray:
        """
        행 i에 대한 모든 열의 loss gain δ_i·

        δ_ij = (행 i를 포함한 열 j의 기여) - (행 i를 제외한 열 j의 기여)
        행 i만 가진 열의 두 번째 항(0/0)은 0입니다.
        """
        a = self.labels[i]
        y = np.zeros(self.c)
        y[a] = 1.0
        s = np.sqrt(self.degrees[i])
        d = self.degrees[i]
        m = self.M[i]

        first = (self.column_mass + s * m * (1.0 - y)) / np.sqrt(self.column_weight + d * (1.0 - y))
        remaining = self.counts - y
        denom = np.where(remaining > 0, self.column_weight - d * y, 1.0)
        second = np.where(remaining > 0, (self.column_mass - s * m * y) / np.sqrt(denom), 0.0)
        return first - second

    def loss_gain(self, i: int, j: int) -> float:
        return float(self.row_gains(i)[j])

    def move(self, i: int, b: int) -> None:
        """행 i를 열 b로 이동하고 캐시 갱신"""
        a = self.labels[i]
        s = np.sqrt(self.degrees[i])
        self.column_mass[a] -= s * self.M[i, a]
        self.column_weight[a] -= self.degrees[i]
        self.counts[a] -= 1
        self.column_mass[b] += s * self.M[i, b]
        self.column_weight[b] += self.degrees[i]
        self.counts[b] += 1
        self.labels[i] = b

    def sweep(self) -> int:
        """
        i = 0..n-1 순서의 greedy 갱신 한 번

        Returns:
            라벨이 바뀐 행 수
        """
        changed = 0
        for i in range(self.n):
            gains = self.row_gains(i)
            a = self.labels[i]
            b = int(np.argmax(gains))
            if b == a or gains[b] <= gains[a] + MOVE_TOL:
                continue
            if self.counts[a] == 1:
                continue
            self.move(i, b)
            changed += 1
        return changed


def _scaled(labels: np.ndarray, c: int, degrees: np.ndarray) -> np.ndarray:
    weight = np.bincount(labels, weights=degrees, minlength=c)
    g_mat = np.zeros((labels.size, c))
    g_mat[np.arange(labels.size), labels] = np.sqrt(degrees) / np.sqrt(weight[labels])
    return g_mat


def loss_gain(state: FirstOrderState, i: int, j: int, g: Graph) -> float:
    """
    loss gain δ_ij (캐시 사용, O(1))

    Args:
        state: 현재 상태
        i: 행 인덱스
        j: 열 인덱스
        g: 상태를 만든 그래프
    """
    if g.n != state.n:
        raise ContractViolation(f"state has {state.n} rows but graph has {g.n} vertices")
    if not (0 <= i < state.n and 0 <= j < state.c):
        raise ContractViolation(f"index ({i}, {j}) out of range for state of shape {state.M.shape}")
    return state.loss_gain(i, j)


# =============================================================================
# 실행
# =============================================================================

def run_alternating(
    rs: RelaxedSolution,
    g: Graph,
    eta: float,
    init_labels: np.ndarray,
    max_sweeps: int,
) -> DiscretizeOutcome:
    """
    한 초기화에서 R-step / Y-step 교대 최적화

    Args:
        rs: 완화 해
        g: 그래프
        eta: gradient 항 계수 (0이면 ISR)
        init_labels: 빈 열이 없는 초기 라벨
        max_sweeps: sweep 상한

    Returns:
        DiscretizeOutcome (trace[t] = t번째 sweep 후 tr(MᵀG))
    """
    p = rs.F_star - eta * (g.laplacian @ rs.F_star)
    labels = np.array(init_labels, dtype=np.int64)
    trace: List[float] = []
    converged = False
    sweeps = 0

    for sweeps in range(1, max_sweeps + 1):
        state = FirstOrderState.build(p, labels, g.degrees)
        changed = state.sweep()
        labels = state.labels
        trace.append(state.objective())
        if changed == 0:
            converged = True
            break

    if not converged:
        logger.warning(f"no fixed point after {max_sweeps} sweeps (eta={eta:g})")
    logger.debug(f"alternating run: eta={eta:g} sweeps={sweeps} objective={trace[-1]:.10g}")
    return DiscretizeOutcome(
        assignment=Assignment(labels=labels, c=rs.c),
        objective_trace=trace,
        iterations=sweeps,
        converged=converged,
        method_objective=trace[-1],
    )


class FirstOrderDiscretizer(BaseDiscretizer):
    """gradient 결합 항을 포함한 1차 이산화"""

    method = DiscretizeMethod.FIRST_ORDER
    description = "first-order method with the gradient coupling term"

    def _eta(self) -> float:
        return self.config.eta

    def run(self, rs: RelaxedSolution, g: Graph) -> DiscretizeOutcome:
        check_consistent(rs, g)
        eta = self._eta()
        return best_of_restarts(
            self.config.restarts,
            self.config.seed,
            rs.n,
            rs.c,
            lambda init: run_alternating(rs, g, eta, init, self.config.max_sweeps),
        )
