"""
Brute-Force Oracle

작은 인스턴스(n <= 16)에서 모든 할당을 나열하여
- 그래프 컷 목적 함수의 이산 최적해 G*
- F*R에 유클리드 거리로 가장 가까운 이산 해 G†
를 구하고, 두 해가 얼마나 자주 다른지 랜덤 그래프로 시뮬레이션합니다.

할당은 restricted growth string(첫 등장 순서 라벨)으로 사전순 나열되므로
각 집합 분할이 정확히 한 번 나타나며, 개수는 제2종 스털링 수 S(n, c)입니다.
"""

import logging
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import stirling2
from tqdm import tqdm

from .config import get_config
from .dataset_io import RandomGraphSpec, gen_random_graph
from .errors import ContractViolation, EmptyReportError, NumericalFailure, SizeGuardError
from .graph import CutType, Graph, laplacian_from_weights
from .relaxed import Assignment, RelaxedSolution, cut_objective, solve_relaxed

logger = logging.getLogger(__name__)

# 한 번에 평가하는 할당 수
BATCH_SIZE = 4096

# 동점 판정 허용 오차 (사전순으로 앞선 할당 우선)
TIE_TOL = 1e-12


@dataclass(frozen=True)
class OracleResult:
    """
    전수 탐색 결과

    Attributes:
        feasible_count: 빈 군집 없는 할당 수 (S(n, c))
        best_labels / best_value: 컷 목적 함수 최소 할당 G*와 그 값
        closest_labels / closest_value: F*R에 가장 가까운 할당 G†와 그 컷 값
        closest_distance: min_R ‖F*R - f(G†)‖²
    """
    feasible_count: int
    best_labels: Optional[Assignment] = None
    best_value: Optional[float] = None
    closest_labels: Optional[Assignment] = None
    closest_value: Optional[float] = None
    closest_distance: Optional[float] = None


@dataclass(frozen=True)
class MismatchRow:
    """G† ≠ G* 비율 시뮬레이션 결과 한 행"""
    n: int
    trials: int
    mismatch_proportion: float


# =============================================================================
# 나열
# =============================================================================

def _guard(n: int, c: int) -> None:
    max_n = get_config().oracle.max_n
    if n > max_n:
        raise SizeGuardError(f"exhaustive search is limited to n <= {max_n}, got n={n}")
    if not 1 <= c <= n:
        raise ContractViolation(f"c must satisfy 1 <= c <= n (n={n}), got {c}")


def feasible_count(n: int, c: int) -> int:
    """S(n, c)"""
    return int(stirling2(n, c, exact=True))


def _growth_strings(n: int, c: int) -> Iterator[Tuple[int, ...]]:
    labels = [0] * n

    def extend(i: int, used: int):
        if n - i < c - used:
            return
        if i == n:
            yield tuple(labels)
            return
        for v in range(min(used + 1, c)):
            labels[i] = v
            yield from extend(i + 1, max(used, v + 1))

    yield from extend(1, 1)


def enumerate_assignments(n: int, c: int) -> Iterator[Assignment]:
    """
    n개 샘플을 정확히 c개의 비어 있지 않은 군집으로 나누는 모든 할당

    Args:
        n: 샘플 수 (<= 16)
        c: 군집 수 (<= n)

    Yields:
        첫 등장 순서로 정규화된 Assignment (사전순)

    Raises:
        SizeGuardError: n이 상한 초과
    """
    _guard(n, c)
    for labels in _growth_strings(n, c):
        yield Assignment(labels=np.array(labels, dtype=np.int64), c=c)


def _label_batches(n: int, c: int) -> Iterator[np.ndarray]:
    strings = _growth_strings(n, c)
    while True:
        chunk = list(islice(strings, BATCH_SIZE))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def _one_hot_batch(labels: np.ndarray, c: int) -> np.ndarray:
    m, n = labels.shape
    y = np.zeros((m, n, c))
    y[np.arange(m)[:, None], np.arange(n)[None, :], labels] = 1.0
    return y


def _first_min(values: np.ndarray) -> int:
    return int(np.flatnonzero(values <= values.min() + TIE_TOL)[0])


# =============================================================================
# G* / G†
# =============================================================================

def _cut_values(y: np.ndarray, g: Graph) -> np.ndarray:
    numer = np.einsum("mic,ij,mjc->mc", y, g.cut_kernel, y)
    denom = np.einsum("mic,i->mc", y, g.degrees)
    return np.sum(numer / denom, axis=1)


def _closest_distances(y: np.ndarray, g: Graph, f_star: np.ndarray) -> np.ndarray:
    weight = np.einsum("mic,i->mc", y, g.degrees)
    g_batch = y * np.sqrt(g.degrees)[None, :, None] / np.sqrt(weight)[:, None, :]
    cross = np.einsum("nk,mnc->mkc", f_star, g_batch)
    try:
        sigma = np.linalg.svd(cross, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NumericalFailure(f"batched SVD did not converge: {e}") from e
    return float(np.sum(f_star**2)) + y.shape[2] - 2.0 * np.sum(sigma, axis=1)


def _scan(g: Graph, c: int, rs: Optional[RelaxedSolution]) -> OracleResult:
    _guard(g.n, c)
    if rs is not None and (rs.n != g.n or rs.c != c):
        raise ContractViolation(f"relaxed solution shape {rs.F_star.shape} does not match n={g.n}, c={c}")

    best: Optional[Tuple[float, np.ndarray]] = None
    closest: Optional[Tuple[float, np.ndarray]] = None
    for labels in _label_batches(g.n, c):
        y = _one_hot_batch(labels, c)
        values = _cut_values(y, g)
        k = _first_min(values)
        if best is None or values[k] < best[0] - TIE_TOL:
            best = (float(values[k]), labels[k])
        if rs is not None:
            dists = _closest_distances(y, g, rs.F_star)
            k = _first_min(dists)
            if closest is None or dists[k] < closest[0] - TIE_TOL:
                closest = (float(dists[k]), labels[k])

    best_labels = Assignment(labels=best[1], c=c)
    result = OracleResult(
        feasible_count=feasible_count(g.n, c),
        best_labels=best_labels,
        best_value=cut_objective(best_labels, g),
    )
    if closest is None:
        return result
    closest_labels = Assignment(labels=closest[1], c=c)
    return OracleResult(
        feasible_count=result.feasible_count,
        best_labels=result.best_labels,
        best_value=result.best_value,
        closest_labels=closest_labels,
        closest_value=cut_objective(closest_labels, g),
        closest_distance=max(closest[0], 0.0),
    )


def brute_force_optimum(g: Graph, c: int) -> OracleResult:
    """
    컷 목적 함수를 최소화하는 이산 최적해 G*

    Args:
        g: 그래프 (n <= 16)
        c: 군집 수

    Returns:
        best_* 필드가 채워진 OracleResult (동점이면 사전순 최소 라벨)
    """
    result = _scan(g, c, None)
    logger.debug(f"oracle optimum: n={g.n}, c={c}, value={result.best_value:.10g}")
    return result


def closest_discrete(rs: RelaxedSolution, g: Graph, c: int) -> OracleResult:
    """
    min_R ‖f(Y) - F*R‖²을 최소화하는 이산 해 G†

    내부 최소화는 Procrustes 해로 정확히 풀립니다: ‖F*‖² + c - 2‖F*ᵀf(Y)‖_*.

    Args:
        rs: 완화 해
        g: 그래프 (n <= 16)
        c: 군집 수 (= rs.c)

    Returns:
        best_*와 closest_* 필드가 모두 채워진 OracleResult
    """
    return _scan(g, c, rs)


# =============================================================================
# G† ≠ G* 시뮬레이션
# =============================================================================

def mismatch_trial(n: int, c: int, seed: int) -> bool:
    """랜덤 그래프 하나에서 G†와 G*의 집합 분할이 다른지 여부 (ratio cut)"""
    g = laplacian_from_weights(gen_random_graph(RandomGraphSpec(n=n, seed=seed)), CutType.RATIO)
    result = closest_discrete(solve_relaxed(g, c), g, c)
    return not result.best_labels.same_partition(result.closest_labels)


def mismatch_study(n_values: Sequence[int], trials: int, c: int = 2, seed: int = 0) -> List[MismatchRow]:
    """
    n별로 G† ≠ G*인 랜덤 그래프의 비율

    시행 t의 그래프 시드는 seed + t 입니다.

    Args:
        n_values: 정점 수 목록 (각각 <= 16)
        trials: n당 시행 횟수
        c: 군집 수
        seed: 마스터 시드

    Returns:
        MismatchRow 목록 (입력 순서)

    Raises:
        EmptyReportError: trials == 0 또는 n_values가 비어 있음
        SizeGuardError: n 상한 초과
    """
    if trials <= 0 or not n_values:
        raise EmptyReportError(f"simulation needs trials >= 1 and at least one n (trials={trials})")
    for n in n_values:
        _guard(n, c)
        if not 2 <= c <= n - 1:
            raise ContractViolation(f"c must satisfy 2 <= c <= n - 1 (n={n}), got {c}")

    progress = get_config().bench.progress
    rows = []
    for n in n_values:
        mismatches = sum(
            mismatch_trial(n, c, seed + t)
            for t in tqdm(range(trials), desc=f"n={n}", disable=not progress, leave=False)
        )
        rows.append(MismatchRow(n=n, trials=trials, mismatch_proportion=mismatches / trials))
        logger.info(f"simulate: n={n} mismatch={mismatches}/{trials}")
    return rows
