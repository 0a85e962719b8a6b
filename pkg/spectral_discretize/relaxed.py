"""
Relaxed Solution Module

연속 완화 해 F*(L의 가장 작은 c개 고유벡터)를 계산하고,
하드 할당 Y를 스케일된 지시 행렬 f(Y) = D^(1/2) Y (YᵀDY)^(-1/2)로 변환하며,
그래프 컷 목적 함수 tr(GᵀLG)를 평가합니다.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Union

import numpy as np

from .errors import ContractViolation
from .graph import CutType, Graph
from .numerics import as_dense, sym_eig

logger = logging.getLogger(__name__)


# =============================================================================
# Assignment
# =============================================================================

@dataclass(frozen=True)
class Assignment:
    """
    n개 샘플의 하드 군집 할당 (Y ∈ B_{n×c})

    모든 군집은 비어 있지 않아야 합니다.

    Attributes:
        labels: 길이 n, 값은 [0, c)
        c: 군집 수
    """
    labels: np.ndarray
    c: int

    def __post_init__(self):
        """검증"""
        labels = np.asarray(self.labels)
        if labels.ndim != 1 or labels.size == 0:
            raise ContractViolation("labels must be a non-empty 1-D sequence")
        if not np.issubdtype(labels.dtype, np.integer):
            if not np.all(np.equal(np.mod(labels, 1), 0)):
                raise ContractViolation("labels must be integers")
        labels = labels.astype(np.int64)
        if self.c < 1 or labels.min() < 0 or labels.max() >= self.c:
            raise ContractViolation(f"labels must lie in [0, {self.c})")
        empty = np.flatnonzero(np.bincount(labels, minlength=self.c) == 0)
        if empty.size:
            raise ContractViolation(f"cluster {int(empty[0])} is empty")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, labels: Sequence[int], c: Optional[int] = None) -> "Assignment":
        """라벨 시퀀스로 생성 (c 생략 시 max + 1)"""
        arr = np.asarray(labels, dtype=np.int64)
        return cls(labels=arr, c=int(arr.max()) + 1 if c is None else c)

    @property
    def n(self) -> int:
        return int(self.labels.size)

    def counts(self) -> np.ndarray:
        """군집별 크기"""
        return np.bincount(self.labels, minlength=self.c)

    def indicator(self) -> np.ndarray:
        """선택 행렬 Y (n, c)"""
        y = np.zeros((self.n, self.c))
        y[np.arange(self.n), self.labels] = 1.0
        return y

    def canonical(self) -> "Assignment":
        """첫 등장 순서로 라벨을 다시 매긴 할당"""
        mapping = {}
        for label in self.labels.tolist():
            mapping.setdefault(label, len(mapping))
        return Assignment(labels=np.array([mapping[v] for v in self.labels.tolist()]), c=self.c)

    def partition(self) -> FrozenSet[FrozenSet[int]]:
        """라벨과 무관한 집합 분할 표현"""
        blocks = {}
        for i, label in enumerate(self.labels.tolist()):
            blocks.setdefault(label, set()).add(i)
        return frozenset(frozenset(b) for b in blocks.values())

    def same_partition(self, other: "Assignment") -> bool:
        return self.partition() == other.partition()

    def to_list(self):
        return [int(v) for v in self.labels]


# =============================================================================
# 완화 해
# =============================================================================

@dataclass(frozen=True)
class RelaxedSolution:
    """
    연속 완화 문제의 최적해

    Attributes:
        F_star: (n, c) 정규직교 열 행렬
        eigenvalues: L의 전체 고유값 (오름차순)
        cut: 컷 규약
    """
    F_star: np.ndarray
    eigenvalues: np.ndarray
    cut: CutType

    @property
    def c(self) -> int:
        return self.F_star.shape[1]

    @property
    def n(self) -> int:
        return self.F_star.shape[0]

    @property
    def lower_bound(self) -> float:
        """tr(F*ᵀLF*) = 가장 작은 c개 고유값의 합"""
        return float(np.sum(self.eigenvalues[: self.c]))

    def rotated(self, q: np.ndarray) -> "RelaxedSolution":
        """F*Q로 교체한 동등한 최적해"""
        return RelaxedSolution(F_star=self.F_star @ q, eigenvalues=self.eigenvalues, cut=self.cut)


def solve_relaxed(g: Graph, c: int) -> RelaxedSolution:
    """
    min tr(FᵀLF) s.t. FᵀF = I 의 해

    Args:
        g: 그래프
        c: 군집 수 (2 <= c <= n - 1)

    Returns:
        RelaxedSolution (부호 규약은 numerics.sym_eig를 따름)
    """
    if not 2 <= c <= g.n - 1:
        raise ContractViolation(f"c must satisfy 2 <= c <= n - 1 (n={g.n}), got {c}")
    eig = sym_eig(g.laplacian)
    f_star = eig.eigenvectors[:, :c].copy()
    logger.debug(f"Relaxed solution: n={g.n}, c={c}, bound={float(np.sum(eig.eigenvalues[:c])):.6g}")
    return RelaxedSolution(F_star=f_star, eigenvalues=eig.eigenvalues, cut=g.cut)


# =============================================================================
# 스케일 지시 행렬 / 목적 함수
# =============================================================================

def _check_length(y: Assignment, g: Graph) -> None:
    if y.n != g.n:
        raise ContractViolation(f"assignment has {y.n} labels but graph has {g.n} vertices")


def scaled_indicator(y: Assignment, g: Graph) -> np.ndarray:
    """
    G = f(Y) = D^(1/2) Y (YᵀDY)^(-1/2)

    ratio cut에서는 G_ij = 1/√|C_j| 입니다.

    Args:
        y: 모든 군집이 비어 있지 않은 할당
        g: 그래프 (D 제공)

    Returns:
        (n, c) 행렬, GᵀG = I
    """
    _check_length(y, g)
    d = g.degrees
    weight = np.bincount(y.labels, weights=d, minlength=y.c)
    g_mat = np.zeros((y.n, y.c))
    g_mat[np.arange(y.n), y.labels] = np.sqrt(d) / np.sqrt(weight[y.labels])
    return g_mat


def cut_objective(target: Union[Assignment, np.ndarray], g: Graph) -> float:
    """
    그래프 컷 목적 함수 tr(GᵀLG)

    Args:
        target: 할당 Y (f(Y)로 변환) 또는 (n, c) 행렬 G
        g: 그래프

    Returns:
        목적 함수 값
    """
    if isinstance(target, Assignment):
        _check_length(target, g)
        y = target.indicator()
        numer = np.einsum("ij,ij->j", y, g.cut_kernel @ y)
        denom = y.T @ g.degrees
        return float(np.sum(numer / denom))
    g_mat = as_dense(target, "G")
    if g_mat.shape[0] != g.n:
        raise ContractViolation(f"G has {g_mat.shape[0]} rows but graph has {g.n} vertices")
    return float(np.sum(g_mat * (g.laplacian @ g_mat)))
