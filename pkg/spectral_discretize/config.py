"""
Central Configuration Module

모든 실행 기본값을 중앙에서 관리합니다.
환경변수에서 읽어오며, 기본값을 제공합니다. (.env 파일은 CLI에서 load_dotenv로 로드)

Usage:
    from .config import get_config

    config = get_config()
    print(config.discretize.eta)
    print(config.graph.k_neighbors)
    print(config.bench.workers)
"""

import os
from dataclasses import dataclass, field
from typing import Callable, Optional, TypeVar

from .errors import ConfigError

T = TypeVar("T")


def _env(name: str, default: str, cast: Callable[[str], T]) -> T:
    """환경변수를 읽어 변환 (변환 실패 시 ConfigError)"""
    raw = os.getenv(name, default)
    try:
        return cast(raw)
    except ValueError as e:
        raise ConfigError(f"invalid value for {name}: {raw!r}") from e


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


@dataclass(frozen=True)
class GraphConfig:
    """그래프 구성 설정"""

    # adaptive-neighbor 가중치의 이웃 수 k
    k_neighbors: int = field(default_factory=lambda: _env("SPECDISC_K_NEIGHBORS", "10", int))


@dataclass(frozen=True)
class DiscretizeConfig:
    """이산화 알고리즘 기본값"""

    # gradient 항 계수 (1e-3이 대체로 무난함)
    eta: float = field(default_factory=lambda: _env("SPECDISC_ETA", "1e-3", float))

    # 전체 sweep 최대 횟수 (고정점 미도달 시 안전 장치)
    max_sweeps: int = field(default_factory=lambda: _env("SPECDISC_MAX_SWEEPS", "100", int))

    # rotation 계열(sr, isr, first_order) 랜덤 초기화 횟수
    restarts: int = field(default_factory=lambda: _env("SPECDISC_RESTARTS", "5", int))

    # k-means 재시작 횟수 / Lloyd 반복 상한
    km_restarts: int = field(default_factory=lambda: _env("SPECDISC_KM_RESTARTS", "10", int))
    km_max_iters: int = field(default_factory=lambda: _env("SPECDISC_KM_MAX_ITERS", "100", int))

    def __post_init__(self):
        """검증"""
        if self.eta < 0:
            raise ConfigError(f"SPECDISC_ETA must be >= 0, got {self.eta}")
        for name in ("max_sweeps", "restarts", "km_restarts", "km_max_iters"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")


@dataclass(frozen=True)
class OracleConfig:
    """전수 탐색 오라클 설정"""

    # 최대 정점 수 (16 초과는 허용하지 않음)
    max_n: int = field(default_factory=lambda: _env("SPECDISC_ORACLE_MAX_N", "16", int))

    def __post_init__(self):
        if not 1 <= self.max_n <= 16:
            raise ConfigError(f"SPECDISC_ORACLE_MAX_N must be within [1, 16], got {self.max_n}")


@dataclass(frozen=True)
class BenchRuntimeConfig:
    """벤치마크 실행 설정"""

    # 워커 풀 크기
    workers: int = field(
        default_factory=lambda: _env("SPECDISC_WORKERS", str(min(4, os.cpu_count() or 1)), int)
    )

    # tqdm 진행률 표시 (stderr)
    progress: bool = field(default_factory=lambda: _flag("SPECDISC_PROGRESS", "true"))

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError(f"SPECDISC_WORKERS must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class LoggingConfig:
    """로깅 설정"""

    level: str = field(default_factory=lambda: os.getenv("SPECDISC_LOG_LEVEL", "WARNING").upper())

    # JSON lines 포맷 사용 여부
    json_format: bool = field(default_factory=lambda: _flag("SPECDISC_LOG_JSON", "false"))


@dataclass(frozen=True)
class AppConfig:
    """전체 애플리케이션 설정"""

    graph: GraphConfig = field(default_factory=GraphConfig)
    discretize: DiscretizeConfig = field(default_factory=DiscretizeConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    bench: BenchRuntimeConfig = field(default_factory=BenchRuntimeConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


# =============================================================================
# 싱글톤 인스턴스
# =============================================================================

_config_instance: Optional[AppConfig] = None


def get_config() -> AppConfig:
    """
    AppConfig 싱글톤 인스턴스 반환

    Returns:
        AppConfig 인스턴스
    """
    global _config_instance
    if _config_instance is None:
        _config_instance = AppConfig()
    return _config_instance


def reset_config() -> None:
    """
    설정 인스턴스 리셋 (테스트용)
    """
    global _config_instance
    _config_instance = None
