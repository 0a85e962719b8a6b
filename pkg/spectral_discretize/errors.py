"""
Error Hierarchy

패키지 전반에서 사용하는 예외 클래스를 정의합니다.

구조:
- DiscretizationError: 최상위 예외
  - ContractViolation (ValueError): 사전 조건 위반 (CLI exit code 2)
    - InputFormatError, ConfigError, SizeGuardError, EmptyReportError
    - DegenerateNeighborhoodError, DisconnectedVertexError
    - DegeneratePartitionError, DegenerateGraphError
  - NumericalFailure (RuntimeError): 고유값/SVD 수렴 실패 (CLI exit code 3)
"""

from typing import Optional


class DiscretizationError(Exception):
    """패키지 최상위 예외"""


class ContractViolation(DiscretizationError, ValueError):
    """입력이 연산의 사전 조건을 만족하지 않음"""


class NumericalFailure(DiscretizationError, RuntimeError):
    """LAPACK 계열 분해가 수렴하지 않음"""


class InputFormatError(ContractViolation):
    """
    CSV 등 입력 파일 형식 오류

    Attributes:
        line: 1부터 시작하는 파일 라인 번호 (알 수 없으면 None)
        column: 1부터 시작하는 컬럼 번호 (알 수 없으면 None)
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class ConfigError(ContractViolation):
    """환경변수 또는 벤치마크 설정 오류"""


class SizeGuardError(ContractViolation):
    """전수 탐색 크기 제한 초과"""


class EmptyReportError(ContractViolation):
    """시행 횟수 0 등으로 보고서가 비어 있음"""


class DegenerateNeighborhoodError(ContractViolation):
    """k+1개의 이웃이 모두 같은 거리여서 가중치 분모가 0"""

    def __init__(self, row: int):
        self.row = row
        super().__init__(
            f"degenerate neighborhood at row {row}: the (k+1)-th distance does not exceed the k nearest"
        )


class DisconnectedVertexError(ContractViolation):
    """Normalized Cut에서 차수가 0인 정점"""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has zero degree; normalized cut is undefined")


class DegeneratePartitionError(ContractViolation):
    """요구된 c개보다 적은 군집을 가진 분할"""


class DegenerateGraphError(ContractViolation):
    """라플라시안의 모든 고유값이 0"""
