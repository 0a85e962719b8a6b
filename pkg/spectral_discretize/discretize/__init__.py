"""
Discretization Module

연속 완화 해 F*를 하드 할당 Y로 바꾸는 다섯 가지 방법을 하나의 인터페이스로 제공합니다.

Components:
- base.py: BaseDiscretizer 추상 클래스, DiscretizeOutcome, 랜덤 초기화/재시작
- registry.py: 방법별 클래스 레지스트리
- kmeans.py: km, km_norm
- rotation.py: sr, isr
- first_order.py: first_order (FirstOrderState, loss_gain)
- service.py: discretize 디스패치, η 탐색, 단축 함수
"""

from .base import BaseDiscretizer, DiscretizeOutcome, random_labels
from .first_order import FirstOrderDiscretizer, FirstOrderState, loss_gain, run_alternating
from .kmeans import KMeansDiscretizer, NormalizedKMeansDiscretizer, normalize_rows
from .registry import DiscretizerRegistry, get_registry
from .rotation import ISRDiscretizer, SRDiscretizer, run_spectral_rotation
from .service import (
    best_eta,
    discretize,
    eta_sensitivity,
    first_order_discretize,
    isr_discretize,
    km_discretize,
    km_norm_discretize,
    select_eta,
    sr_discretize,
)

__all__ = [
    "BaseDiscretizer",
    "DiscretizeOutcome",
    "random_labels",
    "FirstOrderDiscretizer",
    "FirstOrderState",
    "loss_gain",
    "run_alternating",
    "KMeansDiscretizer",
    "NormalizedKMeansDiscretizer",
    "normalize_rows",
    "DiscretizerRegistry",
    "get_registry",
    "ISRDiscretizer",
    "SRDiscretizer",
    "run_spectral_rotation",
    "best_eta",
    "discretize",
    "eta_sensitivity",
    "first_order_discretize",
    "isr_discretize",
    "km_discretize",
    "km_norm_discretize",
    "select_eta",
    "sr_discretize",
]
