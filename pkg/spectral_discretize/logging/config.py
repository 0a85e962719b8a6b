"""
Logging Configuration

stderr 핸들러 하나를 설치합니다.
SPECDISC_LOG_JSON=true이면 LogEvent 스키마로 직렬화한 JSON lines를 출력합니다.

환경변수:
- SPECDISC_LOG_LEVEL: 로그 레벨 (기본값: WARNING)
- SPECDISC_LOG_JSON: JSON 포맷 사용 여부 (기본값: false)
"""

import logging
import sys
from datetime import datetime, timezone
from typing import Optional

from .schemas import LogEvent, RunInfo

_HANDLER_NAME = "spectral_discretize"

logger = logging.getLogger(__name__)


class JsonLogFormatter(logging.Formatter):
    """LogRecord를 LogEvent JSON 한 줄로 변환"""

    def format(self, record: logging.LogRecord) -> str:
        run = getattr(record, "run", None)
        event = LogEvent(
            timestamp=datetime.fromtimestamp(record.created, tz=timezone.utc),
            level=record.levelname,
            logger=record.name,
            message=record.getMessage(),
            run=run if isinstance(run, RunInfo) else None,
            error=self.formatException(record.exc_info) if record.exc_info else None,
        )
        return event.model_dump_json(exclude_none=True)


def configure_logging(level: str = "WARNING", json_format: bool = False) -> logging.Handler:
    """
    패키지 루트 로거에 stderr 핸들러 설치

    여러 번 호출해도 핸들러는 하나만 유지됩니다.

    Args:
        level: 로그 레벨 이름
        json_format: True면 JSON lines 포맷

    Returns:
        설치된 핸들러
    """
    root = logging.getLogger("spectral_discretize")
    for handler in list(root.handlers):
        if handler.get_name() == _HANDLER_NAME:
            root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    if json_format:
        handler.setFormatter(JsonLogFormatter())
    else:
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))

    root.addHandler(handler)
    root.setLevel(level.upper())
    return handler


def log_run_event(run: RunInfo, message: Optional[str] = None) -> None:
    """
    이산화 실행 완료 이벤트 기록 (INFO)

    Args:
        run: 실행 정보
        message: 사람이 읽을 메시지 (기본: 자동 생성)
    """
    text = message or (
        f"{run.dataset}/{run.cut}/{run.method} seed={run.seed} "
        f"objective={run.objective:.6g} iterations={run.iterations}"
    )
    logger.info(text, extra={"run": run})
