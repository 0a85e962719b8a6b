"""
Structured Logging Module

Components:
- config.py: 핸들러 설치 및 JSON 포맷터
- schemas.py: 로그 이벤트 스키마
"""

from .config import JsonLogFormatter, configure_logging, log_run_event
from .schemas import LogEvent, RunInfo

__all__ = [
    "JsonLogFormatter",
    "configure_logging",
    "log_run_event",
    "LogEvent",
    "RunInfo",
]
