"""
Dataset I/O Tests

CSV 로드/저장과 합성 데이터 생성을 테스트합니다.
"""

import numpy as np
import pytest

from spectral_discretize.dataset_io import (
    DataMatrix,
    RandomGraphSpec,
    gen_blobs,
    gen_random_graph,
    load_csv_matrix,
    write_csv_matrix,
)
from spectral_discretize.errors import ContractViolation, InputFormatError


class TestLoadCsv:
    """CSV 로드 테스트"""

    def test_features_only(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1,2\n3,4\n5,6\n")
        data = load_csv_matrix(path)
        assert data.features.shape == (3, 2)
        assert data.labels is None

    def test_label_column(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1.5,2,0\n3,4,1\n")
        data = load_csv_matrix(path, has_label_column=True)
        assert np.array_equal(data.features, [[1.5, 2.0], [3.0, 4.0]])
        assert np.array_equal(data.labels, [0, 1])

    def test_header_skipped(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("a,b\n1,2\n")
        assert load_csv_matrix(path, has_header=True).rows == 1

    def test_ragged_row_reports_line(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1,2\n3\n")
        with pytest.raises(InputFormatError) as exc:
            load_csv_matrix(path)
        assert exc.value.line == 2

    def test_non_numeric_cell_reports_position(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("1,2\n3,abc\n")
        with pytest.raises(InputFormatError) as exc:
            load_csv_matrix(path)
        assert (exc.value.line, exc.value.column) == (2, 2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFormatError):
            load_csv_matrix(tmp_path / "missing.csv")

    def test_write_then_load_is_bit_identical(self, tmp_path):
        data = gen_blobs(12, 3, 4, 0.5, seed=11)
        path = tmp_path / "blobs.csv"
        write_csv_matrix(data, path)
        loaded = load_csv_matrix(path, has_label_column=True)
        assert np.array_equal(loaded.features, data.features)
        assert np.array_equal(loaded.labels, data.labels)


class TestGenerators:
    """합성 데이터 생성 테스트"""

    def test_blobs_shape_and_sizes(self):
        data = gen_blobs(10, 3, 2, 1.0, seed=0)
        assert data.features.shape == (10, 2)
        assert sorted(np.bincount(data.labels)) == [3, 3, 4]

    def test_blobs_deterministic(self):
        a = gen_blobs(20, 2, 3, 1.0, seed=4)
        b = gen_blobs(20, 2, 3, 1.0, seed=4)
        assert np.array_equal(a.features, b.features)
        assert np.array_equal(a.labels, b.labels)

    def test_blobs_rejects_bad_arguments(self):
        with pytest.raises(ContractViolation):
            gen_blobs(2, 3, 2, 1.0, seed=0)
        with pytest.raises(ContractViolation):
            gen_blobs(10, 2, 2, 0.0, seed=0)

    def test_random_graph(self):
        s = gen_random_graph(RandomGraphSpec(n=6, seed=1))
        assert s.shape == (6, 6)
        assert np.array_equal(s, s.T)
        assert np.all(np.diag(s) == 0)
        assert np.all(s >= 0)

    def test_random_graph_spec_guard(self):
        with pytest.raises(ContractViolation):
            RandomGraphSpec(n=2)

    def test_data_matrix_label_length(self):
        with pytest.raises(ContractViolation):
            DataMatrix(features=np.zeros((3, 2)), labels=np.array([0, 1]))
