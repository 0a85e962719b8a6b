"""
Discretization Tests

km, km_norm, sr, isr, first_order 이산화와 레지스트리를 테스트합니다.

실행 방법:
    pytest spectral_discretize/tests/test_discretize.py -v
"""

import numpy as np
import pytest

from spectral_discretize.discretize import (
    FirstOrderState,
    best_eta,
    discretize,
    eta_sensitivity,
    first_order_discretize,
    get_registry,
    isr_discretize,
    km_discretize,
    km_norm_discretize,
    loss_gain,
    normalize_rows,
    random_labels,
    select_eta,
    sr_discretize,
)
from spectral_discretize.dataset_io import RandomGraphSpec, gen_blobs, gen_random_graph
from spectral_discretize.discretize.kmeans import repair_empty_clusters
from spectral_discretize.errors import ContractViolation
from spectral_discretize.graph import CutType, build_graph
from spectral_discretize.models import (
    DEFAULT_ETA_GRID,
    DiscretizeMethod,
    DiscretizeReport,
    DiscretizerConfig,
)
from spectral_discretize.numerics import make_rng
from spectral_discretize.oracle import brute_force_optimum
from spectral_discretize.relaxed import Assignment, RelaxedSolution, cut_objective, scaled_indicator, solve_relaxed
from spectral_discretize.theory import j_isr, j_kmeans, sandwich_check


def _config(method, seed=0, **kwargs):
    return DiscretizerConfig(method=method, seed=seed, **kwargs)


class TestConfigAndRegistry:
    """설정 검증과 레지스트리 테스트"""

    def test_registry_has_all_methods(self):
        registry = get_registry()
        assert len(registry) == 5
        for method in DiscretizeMethod:
            assert method in registry
            assert registry.create(_config(method)).method is method

    def test_method_from_string(self):
        assert DiscretizerConfig(method="first_order").method is DiscretizeMethod.FIRST_ORDER
        assert DiscretizeMethod.from_string("KM_NORM") is DiscretizeMethod.KM_NORM
        with pytest.raises(ContractViolation):
            DiscretizeMethod.from_string("spectral")

    def test_negative_eta_rejected(self):
        with pytest.raises(ContractViolation):
            DiscretizerConfig(method="first_order", eta=-1e-3)

    def test_zero_restarts_rejected(self):
        with pytest.raises(ContractViolation):
            DiscretizerConfig(method="isr", restarts=0)

    def test_mismatched_graph(self, example_relaxed, blob_graph):
        with pytest.raises(ContractViolation):
            discretize(example_relaxed, blob_graph, _config("isr"))


class TestRandomLabels:
    def test_no_empty_cluster(self):
        rng = make_rng(0)
        for _ in range(50):
            labels = random_labels(5, 4, rng)
            assert np.all(np.bincount(labels, minlength=4) > 0)

    def test_too_few_rows(self):
        with pytest.raises(ContractViolation):
            random_labels(2, 3, make_rng(0))


class TestLossGain:
    """loss gain δ_ij 테스트"""

    def test_hand_example(self):
        """D = I, M = I, Y = I: δ₀₀ = 1, δ₀₁ = 1/√2 - 1"""
        state = FirstOrderState.build(np.eye(2), np.array([0, 1]), np.ones(2))
        assert np.allclose(state.M, np.eye(2))
        assert state.loss_gain(0, 0) == pytest.approx(1.0, abs=1e-12)
        assert state.loss_gain(0, 1) == pytest.approx(1.0 / np.sqrt(2.0) - 1.0, abs=1e-12)
        assert int(np.argmax(state.row_gains(0))) == 0

    def test_gain_difference_matches_objective_change(self):
        rng = make_rng(4)
        p = rng.standard_normal((9, 3))
        degrees = rng.uniform(0.5, 2.0, size=9)
        labels = np.array([0, 1, 2, 0, 1, 2, 0, 1, 2])
        state = FirstOrderState.build(p, labels, degrees)
        for i in range(9):
            for b in range(3):
                a = int(state.labels[i])
                if b == a or state.counts[a] == 1:
                    continue
                gains = state.row_gains(i)
                before = state.objective()
                state.move(i, b)
                assert state.objective() - before == pytest.approx(gains[b] - gains[a], abs=1e-9)
                state.move(i, a)
                assert state.objective() == pytest.approx(before, abs=1e-9)

    def test_cache_matches_recompute(self):
        state = FirstOrderState.build(make_rng(1).standard_normal((6, 2)), np.array([0, 0, 1, 1, 0, 1]), np.ones(6))
        state.move(0, 1)
        mass, weight, counts = state.recompute()
        assert np.allclose(state.column_mass, mass)
        assert np.allclose(state.column_weight, weight)
        assert np.array_equal(state.counts, counts)

    def test_equal_columns_tie(self):
        """M 성분이 모두 같고 열 크기가 같으면 δ가 같아 가장 작은 열이 선택됨"""
        state = FirstOrderState.build(np.ones((6, 3)), np.array([0, 0, 1, 1, 2, 2]), np.ones(6))
        state.M = np.ones((6, 3))
        state.column_mass, state.column_weight, state.counts = state.recompute()
        gains = state.row_gains(0)
        assert gains[1] == pytest.approx(gains[2], abs=1e-15)
        assert int(np.argmax(gains[1:])) == 0
        # 현재 열에 남는 쪽이 더 큼 (2/√2 - 1 > 3/√3 - 2/√2)
        assert int(np.argmax(gains)) == 0

    def test_module_function_checks_graph(self, example_graph):
        state = FirstOrderState.build(np.eye(2), np.array([0, 1]), np.ones(2))
        with pytest.raises(ContractViolation):
            loss_gain(state, 0, 0, example_graph)


class TestExampleGraph:
    """4-정점 예제에서의 이산화"""

    def test_isr_objective_at_least_optimum(self, example_graph, example_relaxed):
        y = isr_discretize(example_relaxed, example_graph, seed=0)
        assert cut_objective(y, example_graph) >= 1.3 - 1e-12

    def test_sr_objective_at_least_optimum(self, example_graph, example_relaxed):
        y = sr_discretize(example_relaxed, example_graph, seed=0)
        assert cut_objective(y, example_graph) >= 1.3 - 1e-12

    def test_first_order_not_worse_than_isr(self, example_graph, example_relaxed):
        y_isr, isr_report = discretize(example_relaxed, example_graph, _config("isr"))
        eta, _, report = select_eta(example_relaxed, example_graph, _config("first_order"), DEFAULT_ETA_GRID)
        assert eta in DEFAULT_ETA_GRID
        assert report.final_objective <= isr_report.final_objective + 1e-9
        assert report.final_objective >= 1.3 - 1e-12

    def test_report_fields(self, example_graph, example_relaxed):
        y, report = discretize(example_relaxed, example_graph, _config("first_order", eta=1e-2))
        assert report.method is DiscretizeMethod.FIRST_ORDER
        assert report.eta == 1e-2
        assert report.final_objective == cut_objective(y, example_graph)
        assert report.iterations == len(report.objective_trace)
        assert report.wall_ms >= 0


class TestFirstOrder:
    """first_order 교대 최적화 테스트"""

    def test_eta_zero_equals_isr(self, blob_graph):
        rs = solve_relaxed(blob_graph, 3)
        y_isr, r_isr = discretize(rs, blob_graph, _config("isr", seed=5))
        y_fo, r_fo = discretize(rs, blob_graph, _config("first_order", seed=5, eta=0.0))
        assert np.array_equal(y_isr.labels, y_fo.labels)
        assert r_isr.objective_trace == r_fo.objective_trace

    def test_trace_is_non_decreasing(self, blob_graph):
        rs = solve_relaxed(blob_graph, 3)
        for eta in (0.0, 1e-3, 1e-1):
            _, report = discretize(rs, blob_graph, _config("first_order", seed=1, eta=eta))
            trace = np.array(report.objective_trace)
            assert np.all(np.diff(trace) >= -1e-10)

    def test_blobs_converge(self, blobs, blob_graph):
        rs = solve_relaxed(blob_graph, 3)
        _, report = discretize(rs, blob_graph, _config("first_order", seed=2))
        assert report.converged
        assert report.iterations <= 30

    def test_deterministic(self, blob_graph):
        rs = solve_relaxed(blob_graph, 3)
        a = first_order_discretize(rs, blob_graph, 1e-3, seed=8)
        b = first_order_discretize(rs, blob_graph, 1e-3, seed=8)
        assert np.array_equal(a.labels, b.labels)

    def test_rotation_invariance(self, blob_graph):
        rs = solve_relaxed(blob_graph, 3)
        q, _ = np.linalg.qr(make_rng(6).standard_normal((3, 3)))
        rotated = rs.rotated(q)
        for method in ("sr", "isr", "first_order"):
            _, a = discretize(rs, blob_graph, _config(method, seed=3))
            _, b = discretize(rotated, blob_graph, _config(method, seed=3))
            assert a.final_objective == pytest.approx(b.final_objective, abs=1e-8)

    def test_isr_beats_random_assignments(self, blob_graph):
        rs = solve_relaxed(blob_graph, 3)
        y = isr_discretize(rs, blob_graph, seed=0)
        best = j_isr(rs.F_star, y, blob_graph)
        rng = make_rng(10)
        for _ in range(50):
            other = Assignment(labels=random_labels(rs.n, 3, rng), c=3)
            assert best <= j_isr(rs.F_star, other, blob_graph) + 1e-9


class TestBlobContract:
    """blobs 20개 (n = 200, c ∈ {3, 5}): trace 단조, 30 sweep 이내 수렴, 완화 하한 이상"""

    @pytest.mark.parametrize("cut", list(CutType))
    @pytest.mark.parametrize("c", [3, 5])
    @pytest.mark.parametrize("dataset", range(10))
    def test_first_order_contract(self, cut, c, dataset):
        g = build_graph(gen_blobs(200, c, 2, 1.0, seed=100 + dataset), cut, k=10)
        rs = solve_relaxed(g, c)
        y, report = discretize(rs, g, _config("first_order", seed=dataset))

        trace = np.array(report.objective_trace)
        assert np.all(np.diff(trace) >= -1e-10)
        assert report.converged
        assert report.iterations <= 30
        assert np.all(y.counts() > 0)
        assert report.final_objective >= rs.lower_bound - 1e-9


class TestAgainstOracle:
    """작은 랜덤 그래프에서 first_order <= isr, 둘 다 전수 탐색 최적값 이상"""

    @pytest.mark.parametrize("cut", list(CutType))
    def test_first_order_not_worse_than_isr(self, cut):
        for trial in range(50):
            n = 6 if trial % 2 == 0 else 8
            g = build_graph(gen_random_graph(RandomGraphSpec(n=n, seed=trial)), cut)
            rs = solve_relaxed(g, 2)
            optimum = brute_force_optimum(g, 2).best_value

            _, isr_report = discretize(rs, g, _config("isr", seed=trial, restarts=5))
            _, _, fo_report = select_eta(rs, g, _config("first_order", seed=trial, restarts=5), DEFAULT_ETA_GRID)

            assert fo_report.final_objective <= isr_report.final_objective + 1e-9, trial
            assert isr_report.final_objective >= optimum - 1e-9, trial
            assert fo_report.final_objective >= optimum - 1e-9, trial


class TestSandwichAtSolution:
    """모든 방법의 결과 Y에서 J_kmeans(Y) <= J_ISR(Y) (ratio cut)"""

    @pytest.mark.parametrize("method", [m.value for m in DiscretizeMethod])
    def test_left_inequality(self, blob_graph, method):
        rs = solve_relaxed(blob_graph, 3)
        y, _ = discretize(rs, blob_graph, _config(method, seed=0))
        assert j_kmeans(rs.F_star, y) <= j_isr(rs.F_star, y) + 1e-9
        assert sandwich_check(rs.F_star, y).left_holds


class TestSpectralRotation:
    def test_recovers_indicator(self, example_graph):
        labels = Assignment.from_labels([0, 1, 1, 0])
        f = scaled_indicator(labels, example_graph)
        rs = RelaxedSolution(F_star=f, eigenvalues=np.array([0.0, 1.0, 2.0, 3.0]), cut=CutType.RATIO)
        y = sr_discretize(rs, example_graph, seed=0)
        assert y.same_partition(labels)

    def test_deterministic(self, blob_graph):
        rs = solve_relaxed(blob_graph, 3)
        assert np.array_equal(
            sr_discretize(rs, blob_graph, seed=4).labels,
            sr_discretize(rs, blob_graph, seed=4).labels,
        )


class TestKMeans:
    """k-means 계열 테스트"""

    def test_separated_rows(self):
        centers = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])
        truth = np.repeat(np.arange(3), 5)
        x = centers[truth] + 0.01 * make_rng(0).standard_normal((15, 2))
        y = km_discretize(x, 3, seed=0)
        assert y.same_partition(Assignment.from_labels(truth))

    def test_seed_repeat(self):
        x = make_rng(1).standard_normal((20, 2))
        assert np.array_equal(km_discretize(x, 3, seed=7).labels, km_discretize(x, 3, seed=7).labels)

    def test_norm_is_noop_on_unit_rows(self):
        x = normalize_rows(make_rng(2).standard_normal((20, 2)))
        assert np.array_equal(km_discretize(x, 2, seed=1).labels, km_norm_discretize(x, 2, seed=1).labels)

    def test_normalize_rows(self):
        x = np.array([[3.0, 4.0], [0.0, 0.0], [1e-13, 0.0], [-2.0, 0.0]])
        out = normalize_rows(x)
        assert np.allclose(out[[0, 3]], [[0.6, 0.8], [-1.0, 0.0]])
        assert np.array_equal(out[1], [0.0, 0.0])
        assert out[2, 0] == 1e-13

    def test_norm_collapses_rays(self):
        x = np.array([[1.0, 0.0], [2.0, 0.0], [5.0, 0.0], [0.0, 1.0], [0.0, 3.0], [0.0, 0.5]])
        y = km_norm_discretize(x, 2, seed=0)
        assert y.same_partition(Assignment.from_labels([0, 0, 0, 1, 1, 1]))

    def test_repair_moves_farthest_point(self):
        x = np.array([[0.0], [0.1], [5.0], [0.2]])
        labels = repair_empty_clusters(x, np.array([0, 0, 0, 0]), 2)
        assert labels.tolist() == [0, 0, 1, 0]

    def test_method_objective_is_inertia(self, example_graph, example_relaxed):
        _, report = discretize(example_relaxed, example_graph, _config("km"))
        assert report.method_objective >= 0
        assert report.eta is None


class TestEtaSelection:
    """η 탐색 테스트"""

    def test_sensitivity_keeps_grid_order(self, example_graph, example_relaxed):
        grid = [1e-1, 1e-3, 1e-2]
        results = eta_sensitivity(example_relaxed, example_graph, _config("first_order"), grid)
        assert [eta for eta, _, _ in results] == grid
        assert all(report.eta == eta for eta, _, report in results)

    def test_tie_prefers_smaller_eta(self):
        y = Assignment.from_labels([0, 1])

        def report(value, wall):
            return DiscretizeReport(method=DiscretizeMethod.FIRST_ORDER, iterations=1, final_objective=value, wall_ms=wall)

        eta, _, chosen = best_eta([(1.0, y, report(2.0, 1.0)), (0.1, y, report(2.0, 2.0)), (10.0, y, report(3.0, 4.0))])
        assert eta == 0.1
        assert chosen.wall_ms == 7.0

    def test_summed_wall_time_leaves_inputs_untouched(self):
        y = Assignment.from_labels([0, 1])
        reports = [
            (1e-3, y, DiscretizeReport(method=DiscretizeMethod.FIRST_ORDER, iterations=1, final_objective=1.0, wall_ms=3.0)),
            (1e-1, y, DiscretizeReport(method=DiscretizeMethod.FIRST_ORDER, iterations=1, final_objective=2.0, wall_ms=5.0)),
        ]
        _, _, chosen = best_eta(reports)
        assert chosen.wall_ms == 8.0
        assert chosen is not reports[0][2]
        assert reports[0][2].wall_ms == 3.0
        assert chosen.final_objective == reports[0][2].final_objective

    def test_strictly_better_wins(self):
        y = Assignment.from_labels([0, 1])
        reports = [
            (1e-3, y, DiscretizeReport(method=DiscretizeMethod.FIRST_ORDER, iterations=1, final_objective=2.0)),
            (1e-1, y, DiscretizeReport(method=DiscretizeMethod.FIRST_ORDER, iterations=1, final_objective=1.5)),
        ]
        assert best_eta(reports)[0] == 1e-1


@pytest.mark.slow
class TestSweepTiming:
    """sweep 당 작업량이 n에 대략 선형"""

    def test_linear_scaling(self):
        import time

        timings = {}
        for n in (500, 1000, 2000):
            g = build_graph(gen_blobs(n, 3, 2, 1.0, seed=0), CutType.RATIO, k=10)
            rs = solve_relaxed(g, 3)
            p = rs.F_star - 1e-3 * (g.laplacian @ rs.F_star)
            state = FirstOrderState.build(p, random_labels(n, 3, make_rng(0)), g.degrees)
            started = time.perf_counter()
            state.sweep()
            timings[n] = time.perf_counter() - started
        assert timings[2000] / timings[500] < 16
