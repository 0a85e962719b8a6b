"""
Base Discretizer Module

이산화 알고리즘의 추상 기본 클래스와 공통 도우미를 정의합니다.
모든 이산화 방법(km, km_norm, sr, isr, first_order)은 이 클래스를 상속받습니다.

Usage:
    from spectral_discretize.discretize.base import BaseDiscretizer

    class SRDiscretizer(BaseDiscretizer):
        method = DiscretizeMethod.SR
        description = "spectral rotation"

        def run(self, rs, g) -> DiscretizeOutcome:
            ...
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from ..errors import ContractViolation
from ..graph import Graph
from ..models import DiscretizeMethod, DiscretizerConfig
from ..numerics import make_rng
from ..relaxed import Assignment, RelaxedSolution

logger = logging.getLogger(__name__)

# 재시작 간 목적 함수 비교 허용 오차 (먼저 나온 재시작 우선)
RESTART_TOL = 1e-12


# =============================================================================
# 실행 결과
# =============================================================================

@dataclass
class DiscretizeOutcome:
    """
    단일 이산화 실행 결과

    Attributes:
        assignment: 최종 할당 (모든 군집 비어 있지 않음)
        objective_trace: 반복별 방법 고유 목적 함수 값
        iterations: 반복(sweep) 횟수
        converged: 고정점 도달 여부
        method_objective: 방법 고유 목적 함수의 최종 값
    """
    assignment: Assignment
    objective_trace: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = True
    method_objective: float = 0.0


# =============================================================================
# 공통 도우미
# =============================================================================

def random_labels(n: int, c: int, rng: np.random.Generator) -> np.ndarray:
    """
    빈 군집이 없는 균등 랜덤 라벨

    빈 군집마다 크기 2 이상인 군집에서 랜덤 행 하나를 옮깁니다.

    Args:
        n: 샘플 수 (n >= c)
        c: 군집 수
        rng: 난수 생성기

    Returns:
        길이 n 정수 배열
    """
    if n < c:
        raise ContractViolation(f"cannot split {n} rows into {c} non-empty clusters")
    labels = rng.integers(0, c, size=n)
    for j in range(c):
        counts = np.bincount(labels, minlength=c)
        if counts[j] == 0:
            donors = np.flatnonzero(counts[labels] > 1)
            labels[donors[rng.integers(donors.size)]] = j
    return labels


def best_of_restarts(
    restarts: int,
    seed: int,
    n: int,
    c: int,
    run_once: Callable[[np.ndarray], DiscretizeOutcome],
) -> DiscretizeOutcome:
    """
    랜덤 초기화를 여러 번 실행하여 방법 고유 목적 함수가 가장 큰 결과 선택

    모든 초기화는 하나의 make_rng(seed)에서 차례로 뽑습니다.

    Args:
        restarts: 재시작 횟수
        seed: 시드
        n: 샘플 수
        c: 군집 수
        run_once: 초기 라벨 → 실행 결과

    Returns:
        최고 결과 (동점이면 먼저 나온 재시작)
    """
    rng = make_rng(seed)
    best: Optional[DiscretizeOutcome] = None
    for r in range(restarts):
        outcome = run_once(random_labels(n, c, rng))
        logger.debug(f"restart {r}: objective={outcome.method_objective:.10g} sweeps={outcome.iterations}")
        if best is None or outcome.method_objective > best.method_objective + RESTART_TOL:
            best = outcome
    return best


def one_hot(labels: np.ndarray, c: int) -> np.ndarray:
    y = np.zeros((labels.size, c))
    y[np.arange(labels.size), labels] = 1.0
    return y


def check_consistent(rs: RelaxedSolution, g: Graph) -> None:
    """F*와 그래프 크기 일치 검증"""
    if rs.n != g.n:
        raise ContractViolation(f"relaxed solution has {rs.n} rows but graph has {g.n} vertices")
    if not 2 <= rs.c <= g.n - 1:
        raise ContractViolation(f"c must satisfy 2 <= c <= n - 1 (n={g.n}), got {rs.c}")


# =============================================================================
# 이산화 추상 기본 클래스
# =============================================================================

class BaseDiscretizer(ABC):
    """
    이산화 추상 기본 클래스

    Subclass Requirements:
        - method: DiscretizeMethod 클래스 변수
        - description: 방법 설명
        - run(): 완화 해와 그래프로부터 DiscretizeOutcome 반환
    """

    method: DiscretizeMethod
    description: str = "Base discretizer"

    def __init__(self, config: DiscretizerConfig):
        """
        Args:
            config: 실행 설정
        """
        self.config = config

    @abstractmethod
    def run(self, rs: RelaxedSolution, g: Graph) -> DiscretizeOutcome:
        """
        이산화 실행

        Args:
            rs: 완화 해
            g: 그래프

        Returns:
            DiscretizeOutcome
        """

    def __repr__(self) -> str:
        return f"{type(self).__name__}(method={self.method.value}, seed={self.config.seed})"
