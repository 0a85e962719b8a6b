"""
Discretizer Registry Module

이산화 방법별 구현 클래스를 등록하고 설정으로부터 인스턴스를 생성합니다.

Usage:
    from spectral_discretize.discretize.registry import get_registry

    registry = get_registry()
    discretizer = registry.create(DiscretizerConfig(method=DiscretizeMethod.ISR, seed=7))
    outcome = discretizer.run(rs, g)
"""

import logging
from typing import Dict, List, Optional, Type

from ..errors import ContractViolation
from ..models import DiscretizeMethod, DiscretizerConfig
from .base import BaseDiscretizer

logger = logging.getLogger(__name__)


class DiscretizerRegistry:
    """이산화 클래스 레지스트리"""

    def __init__(self):
        self._classes: Dict[DiscretizeMethod, Type[BaseDiscretizer]] = {}

    def register(self, cls: Type[BaseDiscretizer]) -> None:
        """
        이산화 클래스 등록

        Args:
            cls: BaseDiscretizer 서브클래스

        Raises:
            ContractViolation: BaseDiscretizer 서브클래스가 아님
        """
        if not (isinstance(cls, type) and issubclass(cls, BaseDiscretizer)):
            raise ContractViolation(f"Expected BaseDiscretizer subclass, got {cls!r}")
        if cls.method in self._classes:
            logger.warning(f"Replacing existing discretizer for method {cls.method.value}")
        self._classes[cls.method] = cls

    def get(self, method: DiscretizeMethod) -> Optional[Type[BaseDiscretizer]]:
        return self._classes.get(method)

    def create(self, config: DiscretizerConfig) -> BaseDiscretizer:
        """
        설정의 method에 해당하는 인스턴스 생성

        Raises:
            ContractViolation: 등록되지 않은 방법
        """
        cls = self.get(config.method)
        if cls is None:
            raise ContractViolation(f"no discretizer registered for {config.method.value}")
        return cls(config)

    def list_methods(self) -> List[DiscretizeMethod]:
        return list(self._classes.keys())

    def __len__(self) -> int:
        return len(self._classes)

    def __contains__(self, method: DiscretizeMethod) -> bool:
        return method in self._classes


# =============================================================================
# 싱글톤 인스턴스
# =============================================================================

_registry: Optional[DiscretizerRegistry] = None


def get_registry() -> DiscretizerRegistry:
    """
    기본 이산화 방법 5종이 등록된 레지스트리 반환
    """
    global _registry
    if _registry is None:
        from .first_order import FirstOrderDiscretizer
        from .kmeans import KMeansDiscretizer, NormalizedKMeansDiscretizer
        from .rotation import ISRDiscretizer, SRDiscretizer

        registry = DiscretizerRegistry()
        for cls in (
            KMeansDiscretizer,
            NormalizedKMeansDiscretizer,
            SRDiscretizer,
            ISRDiscretizer,
            FirstOrderDiscretizer,
        ):
            registry.register(cls)
        _registry = registry
    return _registry
