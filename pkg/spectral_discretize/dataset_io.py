"""
Dataset I/O

특징 행렬 CSV 로드/저장과 시드 기반 합성 데이터 생성을 담당합니다.

CSV 규약:
- 쉼표 구분, UTF-8, 기본적으로 헤더 없음 (has_header=True이면 1행 건너뜀)
- 행 = 샘플, 라벨은 마지막 정수 컬럼 (has_label_column=True)
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from .errors import ContractViolation, InputFormatError
from .numerics import make_rng

logger = logging.getLogger(__name__)

# 중심 간 최소 거리 = BLOB_SEPARATION * spread 이상
BLOB_SEPARATION = 10.0


@dataclass(frozen=True)
class DataMatrix:
    """
    샘플 특징 행렬

    Attributes:
        features: (n, d) 유한 실수 행렬
        labels: 길이 n의 정수 라벨 (없으면 None)
    """
    features: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        """검증"""
        if self.features.ndim != 2 or self.features.shape[0] < 1 or self.features.shape[1] < 1:
            raise ContractViolation(f"features must be a non-empty 2-D matrix, got shape {self.features.shape}")
        if not np.all(np.isfinite(self.features)):
            raise ContractViolation("features contain non-finite values")
        if self.labels is not None and self.labels.shape != (self.features.shape[0],):
            raise ContractViolation(
                f"label count {self.labels.shape[0]} does not match row count {self.features.shape[0]}"
            )

    @property
    def rows(self) -> int:
        return self.features.shape[0]

    @property
    def cols(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class RandomGraphSpec:
    """
    랜덤 그래프 생성 명세

    Attributes:
        n: 정점 수 (3 이상)
        seed: 64비트 정수 시드
    """
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 3:
            raise ContractViolation(f"random graphs need n >= 3, got {self.n}")


# =============================================================================
# CSV 로드 / 저장
# =============================================================================

def _parse_float(cell: str, line: int, column: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise InputFormatError(f"non-numeric cell {cell!r}", line=line, column=column) from None
    if not np.isfinite(value):
        raise InputFormatError(f"non-finite cell {cell!r}", line=line, column=column)
    return value


def _parse_label(cell: str, line: int, column: int) -> int:
    try:
        return int(cell.strip())
    except ValueError:
        raise InputFormatError(f"label {cell!r} is not an integer", line=line, column=column) from None


def load_csv_matrix(
    path: Union[str, Path],
    has_label_column: bool = False,
    has_header: bool = False,
) -> DataMatrix:
    """
    CSV 파일에서 DataMatrix 로드

    Args:
        path: CSV 파일 경로
        has_label_column: 마지막 컬럼을 정수 라벨로 해석
        has_header: 첫 줄을 헤더로 건너뜀

    Returns:
        DataMatrix

    Raises:
        InputFormatError: 파일 없음, 들쭉날쭉한 행, 숫자가 아닌 셀 (라인/컬럼 포함)
    """
    path = Path(path)
    if not path.is_file():
        raise InputFormatError(f"file not found: {path}")

    rows: List[List[float]] = []
    labels: List[int] = []
    width: Optional[int] = None

    with open(path, "r", encoding="utf-8", newline="") as f:
        for line_no, cells in enumerate(csv.reader(f), start=1):
            if has_header and line_no == 1:
                continue
            if not cells or all(not cell.strip() for cell in cells):
                continue
            if width is None:
                width = len(cells)
                if has_label_column and width < 2:
                    raise InputFormatError("a labelled row needs at least one feature column", line=line_no)
            elif len(cells) != width:
                raise InputFormatError(
                    f"ragged row: expected {width} cells, found {len(cells)}", line=line_no
                )

            feature_cells = cells[:-1] if has_label_column else cells
            rows.append([_parse_float(cell, line_no, col) for col, cell in enumerate(feature_cells, start=1)])
            if has_label_column:
                labels.append(_parse_label(cells[-1], line_no, width))

    if not rows:
        raise InputFormatError(f"no data rows in {path}")

    logger.debug(f"Loaded {len(rows)}x{len(rows[0])} matrix from {path}")
    return DataMatrix(
        features=np.array(rows, dtype=np.float64),
        labels=np.array(labels, dtype=np.int64) if has_label_column else None,
    )


def write_csv_matrix(data: DataMatrix, path: Union[str, Path]) -> None:
    """
    DataMatrix를 CSV로 저장 (17 유효숫자, 재로드 시 비트 단위 동일)

    Args:
        data: 저장할 행렬
        path: 출력 경로
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        for i, row in enumerate(data.features):
            cells = [f"{value:.17g}" for value in row]
            if data.labels is not None:
                cells.append(str(int(data.labels[i])))
            writer.writerow(cells)


# =============================================================================
# 합성 데이터 생성
# =============================================================================

def gen_blobs(n: int, c: int, dim: int, spread: float, seed: int) -> DataMatrix:
    """
    등방성 가우시안 군집 c개 생성

    중심은 첫 번째 축을 따라 BLOB_SEPARATION * spread 간격으로 놓이고
    (임의 방향으로 회전), 군집 크기 차이는 최대 1입니다. 행 순서는 시드로 섞이므로
    라벨 순서(예: n=4, c=2에서 0,0,1,1)는 행 치환을 무시할 때만 일치합니다.

    Args:
        n: 샘플 수
        c: 군집 수
        dim: 차원
        spread: 군집 표준편차
        seed: 시드

    Returns:
        라벨이 포함된 DataMatrix
    """
    if not (n >= c >= 2) or dim < 1 or not spread > 0:
        raise ContractViolation(f"gen_blobs requires n >= c >= 2, dim >= 1, spread > 0 (got n={n}, c={c}, dim={dim}, spread={spread})")

    rng = make_rng(seed)
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    centers = np.outer(np.arange(c) * BLOB_SEPARATION * spread, direction)

    sizes = np.full(c, n // c)
    sizes[: n % c] += 1
    labels = np.repeat(np.arange(c), sizes)
    features = centers[labels] + spread * rng.standard_normal((n, dim))

    order = rng.permutation(n)
    return DataMatrix(features=features[order], labels=labels[order])


def gen_random_graph(spec: RandomGraphSpec) -> np.ndarray:
    """
    랜덤 대칭 가중치 행렬 S = (A + Aᵀ)/2 생성

    A의 비대각 성분은 i.i.d. uniform[0, 1), 대각은 0입니다.

    Args:
        spec: 그래프 명세

    Returns:
        (n, n) 대칭 가중치 행렬
    """
    rng = make_rng(spec.seed)
    a = rng.random((spec.n, spec.n))
    s = (a + a.T) / 2.0
    np.fill_diagonal(s, 0.0)
    return s
