"""
Spectral Discretize

스펙트럴 클러스터링의 연속 완화 해를 이산 군집 할당으로 바꾸는 라이브러리와 CLI입니다.

파이프라인:
    features/graph CSV → build_graph → solve_relaxed → discretize → RunReport

Modules:
- graph.py: adaptive-neighbor 그래프, ratio/normalized Laplacian
- relaxed.py: Assignment, RelaxedSolution, 컷 목적 함수
- discretize/: km, km_norm, sr, isr, first_order
- oracle.py: 작은 그래프 전수 탐색
- theory.py: 이론 부등식 검증
- metrics.py: ACC, NMI
- bench.py: 벤치마크 그리드
- cli.py: 명령행 인터페이스
"""

from .discretize import discretize, eta_sensitivity, select_eta
from .errors import ContractViolation, DiscretizationError, NumericalFailure
from .graph import CutType, Graph, build_graph
from .models import DiscretizeMethod, DiscretizeReport, DiscretizerConfig
from .relaxed import Assignment, RelaxedSolution, cut_objective, solve_relaxed

__all__ = [
    "discretize",
    "eta_sensitivity",
    "select_eta",
    "ContractViolation",
    "DiscretizationError",
    "NumericalFailure",
    "CutType",
    "Graph",
    "build_graph",
    "DiscretizeMethod",
    "DiscretizeReport",
    "DiscretizerConfig",
    "Assignment",
    "RelaxedSolution",
    "cut_objective",
    "solve_relaxed",
]
