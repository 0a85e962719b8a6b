"""
Metrics Tests

헝가리안 매칭 정확도와 NMI를 테스트합니다.
"""

from itertools import permutations

import numpy as np
import pytest

from spectral_discretize.errors import ContractViolation, DegeneratePartitionError
from spectral_discretize.metrics import accuracy, evaluate, nmi
from spectral_discretize.numerics import make_rng


def _exhaustive_accuracy(true_labels, pred_labels, c):
    best = 0
    for perm in permutations(range(c)):
        mapped = np.array([perm[p] for p in pred_labels])
        best = max(best, int(np.sum(mapped == true_labels)))
    return best / len(true_labels)


class TestAccuracy:
    """정확도 테스트"""

    def test_identical(self):
        assert accuracy([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0

    def test_permuted_labels(self):
        assert accuracy([0, 0, 1, 1, 2], [2, 2, 0, 0, 1]) == 1.0

    def test_hand_example(self):
        assert accuracy([0, 0, 1, 1], [0, 1, 0, 1]) == 0.5

    def test_matches_exhaustive_matching(self):
        rng = make_rng(0)
        for trial in range(100):
            c = int(rng.integers(2, 6))
            t = rng.integers(0, c, size=30)
            p = rng.integers(0, c, size=30)
            t[:c] = np.arange(c)
            p[:c] = np.arange(c)
            assert accuracy(t, p) == pytest.approx(_exhaustive_accuracy(t, p, c))

    def test_length_mismatch(self):
        with pytest.raises(ContractViolation):
            accuracy([0, 1], [0, 1, 1])

    def test_too_many_clusters(self):
        with pytest.raises(ContractViolation):
            accuracy([0, 0, 0, 1, 1, 1], [0, 1, 2, 3, 4, 5])

    def test_degenerate_partition(self):
        with pytest.raises(DegeneratePartitionError):
            accuracy([0, 0, 1, 1], [0, 0, 0, 0], n_clusters=2)


class TestNmi:
    """NMI 테스트"""

    def test_identical(self):
        assert nmi([0, 0, 1, 1], [1, 1, 0, 0]) == pytest.approx(1.0)

    def test_independent(self):
        assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-12)

    def test_symmetric(self):
        t = [0, 0, 1, 1, 2, 2, 2]
        p = [0, 1, 1, 1, 2, 2, 0]
        assert nmi(t, p) == pytest.approx(nmi(p, t))
        assert 0.0 <= nmi(t, p) <= 1.0


class TestEvaluate:
    def test_contingency(self):
        result = evaluate([0, 0, 1, 1], [0, 1, 1, 1])
        assert result.acc == 0.75
        assert np.array_equal(result.contingency, [[1, 1], [0, 2]])
