"""
Clustering Metrics

정답 라벨 대비 군집 결과를 평가합니다.

- accuracy: contingency table 위의 최적 일대일 매칭(헝가리안) 정확도
- nmi: 기하 평균 정규화 상호정보량 I(U;V) / √(H(U)H(V))
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.metrics import normalized_mutual_info_score
from sklearn.metrics.cluster import contingency_matrix

from .errors import ContractViolation, DegeneratePartitionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvalResult:
    """
    평가 결과

    Attributes:
        acc: [0, 1] 정확도
        nmi: [0, 1] NMI
        contingency: (정답 클래스 수, 예측 군집 수) 개수 표
    """
    acc: float
    nmi: float
    contingency: np.ndarray


def _as_labels(true_labels: Sequence[int], pred_labels: Sequence[int]):
    t = np.asarray(true_labels).ravel()
    p = np.asarray(pred_labels).ravel()
    if t.size != p.size:
        raise ContractViolation(f"label length mismatch: {t.size} true vs {p.size} predicted")
    if t.size == 0:
        raise ContractViolation("labels must be non-empty")
    return t, p


def accuracy(
    true_labels: Sequence[int],
    pred_labels: Sequence[int],
    n_clusters: Optional[int] = None,
) -> float:
    """
    최적 군집→클래스 일대일 매칭의 정확도

    Args:
        true_labels: 정답 라벨
        pred_labels: 예측 라벨
        n_clusters: 요구된 군집 수 (예측 군집이 이보다 적으면 오류)

    Returns:
        매칭된 샘플 비율

    Raises:
        ContractViolation: 길이 불일치, 예측 군집 수 > 2 * 정답 클래스 수
        DegeneratePartitionError: 예측 군집 수 < n_clusters
    """
    t, p = _as_labels(true_labels, pred_labels)
    table = contingency_matrix(t, p)
    n_true, n_pred = table.shape
    if n_pred > 2 * n_true:
        raise ContractViolation(f"{n_pred} predicted clusters exceed twice the {n_true} true classes")
    if n_clusters is not None and n_pred < n_clusters:
        raise DegeneratePartitionError(
            f"partition has {n_pred} clusters but {n_clusters} were requested; accuracy is undefined"
        )

    size = max(n_true, n_pred)
    square = np.zeros((size, size), dtype=np.int64)
    square[:n_true, :n_pred] = table
    rows, cols = linear_sum_assignment(square, maximize=True)
    return float(square[rows, cols].sum()) / t.size


def nmi(true_labels: Sequence[int], pred_labels: Sequence[int]) -> float:
    """
    기하 평균 NMI (자연로그)

    한쪽 엔트로피가 0이면 두 분할이 같을 때 1, 아니면 0입니다.
    """
    t, p = _as_labels(true_labels, pred_labels)
    return float(normalized_mutual_info_score(t, p, average_method="geometric"))


def evaluate(
    true_labels: Sequence[int],
    pred_labels: Sequence[int],
    n_clusters: Optional[int] = None,
) -> EvalResult:
    """accuracy, nmi, contingency를 한 번에 계산"""
    t, p = _as_labels(true_labels, pred_labels)
    return EvalResult(
        acc=accuracy(t, p, n_clusters=n_clusters),
        nmi=nmi(t, p),
        contingency=contingency_matrix(t, p),
    )
