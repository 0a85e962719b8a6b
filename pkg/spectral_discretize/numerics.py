"""
Dense Linear Algebra

대칭 고유분해, thin SVD, orthogonal Procrustes 해를 제공합니다.
모든 함수는 입력에 대한 순수 함수이며 공유 상태가 없습니다.

LAPACK 오류(LinAlgError)는 NumericalFailure로 변환됩니다.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import ContractViolation, NumericalFailure

logger = logging.getLogger(__name__)

SYMMETRY_RTOL = 1e-10
SIGN_EPS = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """
    대칭 행렬의 고유분해 결과

    Attributes:
        eigenvalues: 오름차순 고유값 (n,)
        eigenvectors: j번째 열이 j번째 고유값에 대응하는 정규직교 행렬 (n, n)
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_dense(a, name: str = "matrix") -> np.ndarray:
    """2차원 유한 float64 배열로 변환 (위반 시 ContractViolation)"""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ContractViolation(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractViolation(f"{name} contains non-finite entries")
    return arr


def check_symmetric(a: np.ndarray, rtol: float = SYMMETRY_RTOL, name: str = "matrix") -> None:
    """정사각/대칭 여부 검증"""
    if a.shape[0] != a.shape[1]:
        raise ContractViolation(f"{name} must be square, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.T))) > rtol * scale:
        raise ContractViolation(f"{name} is not symmetric within relative tolerance {rtol:g}")


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """각 열의 첫 유의미 성분(|v| > 1e-12)이 양수가 되도록 부호 고정"""
    out = vectors.copy()
    for j in range(out.shape[1]):
        significant = np.flatnonzero(np.abs(out[:, j]) > SIGN_EPS)
        if significant.size and out[significant[0], j] < 0:
            out[:, j] = -out[:, j]
    return out


def sym_eig(a) -> EigenDecomposition:
    """
    대칭 행렬 고유분해 (오름차순, 결정적 부호 규약)

    Args:
        a: 대칭 행렬

    Returns:
        EigenDecomposition

    Raises:
        ContractViolation: 정사각/대칭이 아님
        NumericalFailure: LAPACK 수렴 실패
    """
    arr = as_dense(a)
    check_symmetric(arr)
    sym = (arr + arr.T) / 2.0
    try:
        values, vectors = linalg.eigh(sym, check_finite=False)
    except linalg.LinAlgError as e:
        raise NumericalFailure(f"symmetric eigensolver did not converge: {e}") from e
    return EigenDecomposition(eigenvalues=values, eigenvectors=fix_signs(vectors))


def thin_svd(m):
    """
    thin SVD: M = U diag(σ) Vᵀ

    gesdd 실패 시 gesvd 드라이버로 한 번 더 시도합니다.

    Args:
        m: (p, q) 행렬

    Returns:
        (U, singular_values, V), σ는 내림차순, V는 전치되지 않은 형태
    """
    arr = as_dense(m)
    for driver in ("gesdd", "gesvd"):
        try:
            u, s, vt = linalg.svd(arr, full_matrices=False, check_finite=False, lapack_driver=driver)
            return u, s, vt.T
        except linalg.LinAlgError as e:
            logger.warning(f"SVD driver {driver} failed: {e}")
    raise NumericalFailure(f"SVD did not converge for matrix of shape {arr.shape}")


def procrustes(m) -> np.ndarray:
    """
    tr(RᵀM)을 최대화하는 직교 행렬 R = U Vᵀ

    Args:
        m: (c, c) 행렬

    Returns:
        직교 행렬 R (c, c)
    """
    arr = as_dense(m)
    if arr.shape[0] != arr.shape[1]:
        raise ContractViolation(f"procrustes expects a square matrix, got shape {arr.shape}")
    u, _, v = thin_svd(arr)
    return u @ v.T


def nuclear_norm(m) -> float:
    """특이값의 합 (= max_R tr(RᵀM))"""
    _, s, _ = thin_svd(m)
    return float(np.sum(s))


def random_orthonormal(n: int, c: int, rng: np.random.Generator) -> np.ndarray:
    """정규직교 열을 가진 (n, c) 랜덤 행렬 (QR 기반)"""
    q, r = np.linalg.qr(rng.standard_normal((n, c)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def make_rng(seed: int) -> np.random.Generator:
    """64비트 정수 시드(음수 허용)로 PCG64 생성기 생성"""
    return np.random.default_rng(int(seed) % 2**64)
