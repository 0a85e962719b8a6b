"""
Log Event Schemas

JSON lines 로그로 출력할 이벤트 스키마 정의입니다.

스키마 구조:
- LogEvent: 최상위 로그 이벤트
  - RunInfo: 이산화 실행 정보 (선택)
"""

from datetime import datetime
from typing import Optional

from pydantic import BaseModel


class RunInfo(BaseModel):
    """
    이산화 실행 정보

    Attributes:
        dataset: 데이터셋 ID
        cut: 그래프 컷 종류 (ratio, normalized)
        method: 이산화 방법
        seed: 셀 시드
        eta: first_order의 η (해당 시)
        objective: 최종 컷 목적 함수 값
        iterations: sweep 횟수
    """
    dataset: str
    cut: str
    method: str
    seed: int
    eta: Optional[float] = None
    objective: float
    iterations: int = 0


class LogEvent(BaseModel):
    """
    최상위 로그 이벤트

    Attributes:
        timestamp: 이벤트 발생 시간 (UTC)
        level: 로그 레벨 이름
        logger: 로거 이름
        message: 로그 메시지
        run: 실행 정보 (선택)
        error: 예외 메시지 (선택)
    """
    timestamp: datetime
    level: str
    logger: str
    message: str
    run: Optional[RunInfo] = None
    error: Optional[str] = None
