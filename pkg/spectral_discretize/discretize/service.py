"""
Discretize Service

방법 디스패치, η 탐색, 방법별 단축 함수를 제공합니다.

Usage:
    from spectral_discretize.discretize import discretize

    y, report = discretize(rs, g, DiscretizerConfig(method="first_order", eta=1e-3, seed=0))
"""

import logging
import time
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..graph import Graph
from ..models import DEFAULT_ETA_GRID, DiscretizeMethod, DiscretizeReport, DiscretizerConfig
from ..relaxed import Assignment, RelaxedSolution, cut_objective
from .base import check_consistent
from .registry import get_registry

logger = logging.getLogger(__name__)


def discretize(rs: RelaxedSolution, g: Graph, cfg: DiscretizerConfig) -> Tuple[Assignment, DiscretizeReport]:
    """
    설정된 방법으로 F*를 하드 할당으로 변환

    Args:
        rs: 완화 해
        g: 그래프
        cfg: 실행 설정

    Returns:
        (Assignment, DiscretizeReport), final_objective = cut_objective(y, g)
    """
    check_consistent(rs, g)
    discretizer = get_registry().create(cfg)

    started = time.perf_counter()
    outcome = discretizer.run(rs, g)
    wall_ms = (time.perf_counter() - started) * 1000.0

    report = DiscretizeReport(
        method=cfg.method,
        iterations=outcome.iterations,
        final_objective=cut_objective(outcome.assignment, g),
        objective_trace=tuple(outcome.objective_trace),
        method_objective=outcome.method_objective,
        converged=outcome.converged,
        eta=cfg.eta if cfg.method is DiscretizeMethod.FIRST_ORDER else None,
        wall_ms=wall_ms,
    )
    logger.debug(
        f"{cfg.method.value}: objective={report.final_objective:.10g} "
        f"iterations={report.iterations} converged={report.converged}"
    )
    return outcome.assignment, report


def eta_sensitivity(
    rs: RelaxedSolution,
    g: Graph,
    base_cfg: DiscretizerConfig,
    eta_grid: Sequence[float] = DEFAULT_ETA_GRID,
) -> List[Tuple[float, Assignment, DiscretizeReport]]:
    """
    η 구간의 각 값으로 first_order 실행

    Args:
        rs: 완화 해
        g: 그래프
        base_cfg: seed/restarts 등 공통 설정 (method는 first_order로 대체)
        eta_grid: η 목록

    Returns:
        (eta, Assignment, DiscretizeReport) 목록 (입력 순서)
    """
    results = []
    for eta in eta_grid:
        cfg = DiscretizerConfig(
            method=DiscretizeMethod.FIRST_ORDER,
            eta=float(eta),
            seed=base_cfg.seed,
            max_sweeps=base_cfg.max_sweeps,
            restarts=base_cfg.restarts,
            km_restarts=base_cfg.km_restarts,
            km_max_iters=base_cfg.km_max_iters,
        )
        y, report = discretize(rs, g, cfg)
        results.append((float(eta), y, report))
    return results


def select_eta(
    rs: RelaxedSolution,
    g: Graph,
    base_cfg: DiscretizerConfig,
    eta_grid: Sequence[float] = DEFAULT_ETA_GRID,
) -> Tuple[float, Assignment, DiscretizeReport]:
    """
    컷 목적 함수가 가장 작은 η 선택 (동점이면 작은 η)

    Returns:
        (best_eta, Assignment, DiscretizeReport)
    """
    return best_eta(eta_sensitivity(rs, g, base_cfg, eta_grid))


def best_eta(
    results: Sequence[Tuple[float, Assignment, DiscretizeReport]],
) -> Tuple[float, Assignment, DiscretizeReport]:
    """eta_sensitivity 결과에서 컷 목적 함수 최소 항목 선택 (wall_ms는 전체 합)"""
    results = sorted(results, key=lambda item: item[0])
    best = results[0]
    for item in results[1:]:
        if item[2].final_objective < best[2].final_objective - 1e-12:
            best = item
    wall = float(sum(item[2].wall_ms for item in results))
    return best[0], best[1], replace(best[2], wall_ms=wall)


# =============================================================================
# 방법별 단축 함수
# =============================================================================

def _config(method: DiscretizeMethod, seed: int, config: Optional[DiscretizerConfig], eta: Optional[float] = None):
    if config is None:
        return DiscretizerConfig.from_config(method, seed=seed, eta=eta)
    return DiscretizerConfig(
        method=method,
        eta=config.eta if eta is None else eta,
        seed=seed,
        max_sweeps=config.max_sweeps,
        restarts=config.restarts,
        km_restarts=config.km_restarts,
        km_max_iters=config.km_max_iters,
    )


def km_discretize(f_star: np.ndarray, c: int, seed: int, config: Optional[DiscretizerConfig] = None) -> Assignment:
    """F* 행에 대한 k-means"""
    from .kmeans import run_kmeans

    return run_kmeans(np.asarray(f_star, dtype=float), c, _config(DiscretizeMethod.KM, seed, config)).assignment


def km_norm_discretize(f_star: np.ndarray, c: int, seed: int, config: Optional[DiscretizerConfig] = None) -> Assignment:
    """행 정규화 후 k-means"""
    from .kmeans import normalize_rows, run_kmeans

    x = normalize_rows(np.asarray(f_star, dtype=float))
    return run_kmeans(x, c, _config(DiscretizeMethod.KM_NORM, seed, config)).assignment


def sr_discretize(rs: RelaxedSolution, g: Graph, seed: int, config: Optional[DiscretizerConfig] = None) -> Assignment:
    return discretize(rs, g, _config(DiscretizeMethod.SR, seed, config))[0]


def isr_discretize(rs: RelaxedSolution, g: Graph, seed: int, config: Optional[DiscretizerConfig] = None) -> Assignment:
    return discretize(rs, g, _config(DiscretizeMethod.ISR, seed, config))[0]


def first_order_discretize(
    rs: RelaxedSolution,
    g: Graph,
    eta: float,
    seed: int,
    config: Optional[DiscretizerConfig] = None,
) -> Assignment:
    return discretize(rs, g, _config(DiscretizeMethod.FIRST_ORDER, seed, config, eta=eta))[0]
