"""
Numerics Tests

고유값 분해, thin SVD, Procrustes 회전을 테스트합니다.

실행 방법:
    pytest spectral_discretize/tests/test_numerics.py -v
"""

import numpy as np
import pytest
from scipy.stats import ortho_group

from spectral_discretize.errors import ContractViolation
from spectral_discretize.numerics import (
    fix_signs,
    make_rng,
    nuclear_norm,
    procrustes,
    random_orthonormal,
    sym_eig,
    thin_svd,
)


class TestSymEig:
    """대칭 고유값 분해 테스트"""

    def test_diagonal(self):
        """diag(2, 1) → (1, 2), e₂, e₁"""
        eig = sym_eig(np.diag([2.0, 1.0]))
        assert np.allclose(eig.eigenvalues, [1.0, 2.0])
        assert np.allclose(eig.eigenvectors[:, 0], [0.0, 1.0])
        assert np.allclose(eig.eigenvectors[:, 1], [1.0, 0.0])

    def test_identity_residual(self):
        a = np.eye(3)
        eig = sym_eig(a)
        assert np.allclose(eig.eigenvalues, 1.0)
        residual = a @ eig.eigenvectors - eig.eigenvectors * eig.eigenvalues
        assert np.max(np.abs(residual)) < 1e-10

    def test_example_laplacian(self, example_graph):
        """예제 Laplacian: 최소 고유값 0, 상수 고유벡터, 두 번째 고유벡터 일치"""
        eig = sym_eig(example_graph.laplacian)
        assert abs(eig.eigenvalues[0]) < 1e-10
        assert np.allclose(eig.eigenvectors[:, 0], 0.5, atol=1e-8)
        second = eig.eigenvectors[:, 1]
        expected = np.array([0.5556, 0.0629, -0.8073, 0.1888])
        assert min(np.max(np.abs(second - expected)), np.max(np.abs(second + expected))) < 1e-3

    def test_sign_convention(self):
        rng = make_rng(3)
        a = rng.standard_normal((6, 6))
        eig = sym_eig(a + a.T)
        for col in eig.eigenvectors.T:
            first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
            assert first > 0

    def test_rejects_asymmetric(self):
        with pytest.raises(ContractViolation):
            sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ContractViolation):
            sym_eig(np.ones((2, 3)))

    def test_fix_signs_flips_negative_leading(self):
        v = np.array([[0.0, -1.0], [-1.0, 0.0]])
        assert np.array_equal(fix_signs(v), np.array([[0.0, 1.0], [1.0, 0.0]]))


class TestThinSvd:
    """thin SVD 테스트"""

    def test_diagonal(self):
        _, s, _ = thin_svd(np.diag([3.0, 2.0]))
        assert np.allclose(s, [3.0, 2.0])

    def test_rank_one(self):
        u = np.array([1.0, 0.0, 0.0])
        v = np.array([0.0, 1.0])
        _, s, _ = thin_svd(np.outer(u, v))
        assert np.allclose(s, [1.0, 0.0])

    def test_reconstruction(self):
        m = make_rng(0).standard_normal((5, 3))
        u, s, v = thin_svd(m)
        assert np.linalg.norm(u @ np.diag(s) @ v.T - m) <= 1e-8 * np.linalg.norm(m)
        assert np.allclose(u.T @ u, np.eye(3))
        assert np.allclose(v.T @ v, np.eye(3))


class TestProcrustes:
    """직교 Procrustes 테스트"""

    def test_identity(self):
        assert np.allclose(procrustes(np.eye(3)), np.eye(3))

    def test_recovers_rotation(self):
        theta = 0.7
        q = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        assert np.allclose(procrustes(q), q)

    def test_maximizes_trace(self):
        """tr(RᵀM) >= tr(QᵀM), 랜덤 직교 Q 100개"""
        m = make_rng(1).standard_normal((3, 3))
        r = procrustes(m)
        assert np.allclose(r.T @ r, np.eye(3), atol=1e-10)
        best = np.trace(r.T @ m)
        assert abs(best - nuclear_norm(m)) < 1e-10
        for q in ortho_group.rvs(3, size=100, random_state=2):
            assert np.trace(q.T @ m) <= best + 1e-12

    def test_rejects_non_square(self):
        with pytest.raises(ContractViolation):
            procrustes(np.ones((3, 2)))


class TestRandomOrthonormal:
    def test_columns_orthonormal(self):
        q = random_orthonormal(10, 3, make_rng(5))
        assert q.shape == (10, 3)
        assert np.allclose(q.T @ q, np.eye(3))

    def test_cross_singular_values_at_most_one(self):
        """정규직교 A, B 200쌍: AᵀB의 특이값 <= 1 (n ∈ [5, 50], c ∈ [2, 5])"""
        rng = make_rng(11)
        for _ in range(200):
            n = int(rng.integers(5, 51))
            c = int(rng.integers(2, 6))
            a = random_orthonormal(n, c, rng)
            b = random_orthonormal(n, c, rng)
            _, s, _ = thin_svd(a.T @ b)
            assert np.max(s) <= 1.0 + 1e-10

    def test_negative_seed_is_deterministic(self):
        assert np.array_equal(make_rng(-1).random(4), make_rng(-1).random(4))
