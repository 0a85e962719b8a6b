"""
Discretization 데이터 모델 정의

이산화 방법, 실행 설정, 실행 결과 보고서를 정의합니다.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union

from .errors import ContractViolation

# CLI/벤치마크 기본 η 탐색 구간
DEFAULT_ETA_GRID: Tuple[float, ...] = (1e-3, 1e-2, 1e-1, 1.0, 10.0)


# =============================================================================
# 방법 / 설정
# =============================================================================

class DiscretizeMethod(Enum):
    """
    이산화 방법

    F*의 행을 클러스터링하는 방법(km, km_norm)과
    회전 R을 함께 최적화하는 방법(sr, isr, first_order)으로 나뉩니다.
    """
    KM = "km"                    # F* 행에 대한 k-means
    KM_NORM = "km_norm"          # 행 정규화 후 k-means
    SR = "sr"                    # spectral rotation (지시 행렬 목표)
    ISR = "isr"                  # improved spectral rotation (스케일 지시 행렬 목표)
    FIRST_ORDER = "first_order"  # gradient 결합 항을 추가한 1차 방법

    @classmethod
    def from_string(cls, value: Union[str, "DiscretizeMethod"]) -> "DiscretizeMethod":
        """문자열에서 DiscretizeMethod 변환"""
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ContractViolation(
                f"unknown method {value!r}; expected one of {[m.value for m in cls]}"
            ) from None

    @property
    def uses_rotation(self) -> bool:
        return self in (DiscretizeMethod.SR, DiscretizeMethod.ISR, DiscretizeMethod.FIRST_ORDER)


@dataclass(frozen=True)
class DiscretizerConfig:
    """
    이산화 실행 설정

    Attributes:
        method: 이산화 방법
        eta: gradient 항 계수 (first_order 전용, 0이면 isr과 동일)
        seed: 64비트 정수 시드
        max_sweeps: 전체 sweep 상한
        restarts: 회전 계열 방법의 랜덤 초기화 횟수
        km_restarts: k-means 재시작 횟수
        km_max_iters: Lloyd 반복 상한
    """
    method: DiscretizeMethod
    eta: float = 1e-3
    seed: int = 0
    max_sweeps: int = 100
    restarts: int = 5
    km_restarts: int = 10
    km_max_iters: int = 100

    def __post_init__(self):
        """검증"""
        object.__setattr__(self, "method", DiscretizeMethod.from_string(self.method))
        if not self.eta >= 0:
            raise ContractViolation(f"eta must be >= 0, got {self.eta}")
        for name in ("max_sweeps", "restarts", "km_restarts", "km_max_iters"):
            if getattr(self, name) < 1:
                raise ContractViolation(f"{name} must be >= 1, got {getattr(self, name)}")

    @classmethod
    def from_config(
        cls,
        method: Union[str, DiscretizeMethod],
        seed: int = 0,
        eta: Optional[float] = None,
        restarts: Optional[int] = None,
    ) -> "DiscretizerConfig":
        """
        환경 설정(get_config)의 기본값으로 생성

        Args:
            method: 이산화 방법
            seed: 시드
            eta: None이면 SPECDISC_ETA
            restarts: None이면 SPECDISC_RESTARTS
        """
        from .config import get_config

        defaults = get_config().discretize
        return cls(
            method=DiscretizeMethod.from_string(method),
            eta=defaults.eta if eta is None else eta,
            seed=seed,
            max_sweeps=defaults.max_sweeps,
            restarts=defaults.restarts if restarts is None else restarts,
            km_restarts=defaults.km_restarts,
            km_max_iters=defaults.km_max_iters,
        )


# =============================================================================
# 실행 결과
# =============================================================================

@dataclass
class DiscretizeReport:
    """
    이산화 실행 보고서

    Attributes:
        method: 사용한 방법
        iterations: 선택된 재시작의 반복(sweep) 횟수
        final_objective: 최종 할당의 그래프 컷 목적 함수 값
        objective_trace: 반복별 방법 고유 목적 함수 값
        method_objective: 방법 고유 목적 함수의 최종 값
        converged: 고정점 도달 여부
        eta: first_order에서 사용한 η (그 외 None)
        wall_ms: 이산화에 걸린 시간 (그래프/고유분해 제외)
    """
    method: DiscretizeMethod
    iterations: int
    final_objective: float
    objective_trace: Tuple[float, ...] = field(default_factory=tuple)
    method_objective: float = 0.0
    converged: bool = True
    eta: Optional[float] = None
    wall_ms: float = 0.0
