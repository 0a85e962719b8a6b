"""
Benchmark Grid Runner

(데이터셋 × 컷 × 방법 × 시드) 그리드를 워커 풀에서 실행하고 보고서를 씁니다.

출력 (output_dir):
- runs.csv: RunReport (셀 키 순서, wall_ms 제외)
- timings.csv: 셀별 이산화 시간
- objective_tables.md: 컷별 목적 함수 표 (OPT_r 다음 방법들, 시드 평균)
- accuracy_tables.md / nmi_tables.md: 정답 라벨이 있는 데이터셋의 ACC / NMI 표
- eta_sensitivity.csv: first_order 셀의 η별 컷 목적 함수

셀 시드는 (dataset id, cut, method, seed index, seed)의 blake2b 해시로 정해지므로
실행 순서나 워커 수와 무관하게 결과가 같습니다.
"""

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import yaml
from pydantic import ValidationError
from tqdm import tqdm

from .config import get_config
from .dataset_io import DataMatrix, RandomGraphSpec, gen_blobs, gen_random_graph, load_csv_matrix
from .discretize import best_eta, discretize, eta_sensitivity
from .errors import ConfigError, DiscretizationError, InputFormatError
from .graph import CutType, Graph, build_graph
from .logging import RunInfo, log_run_event
from .metrics import evaluate
from .models import DiscretizeMethod, DiscretizerConfig
from .relaxed import RelaxedSolution, solve_relaxed
from .reports import (
    BenchConfig,
    DatasetEntry,
    RunReport,
    group_mean,
    metric_table,
    objective_table,
    write_csv,
    write_markdown,
    write_runs_csv,
)

logger = logging.getLogger(__name__)


# =============================================================================
# 설정 / 데이터
# =============================================================================

def load_bench_config(path: Union[str, Path]) -> BenchConfig:
    """
    JSON(.json) 또는 YAML(.yaml/.yml) 벤치마크 설정 로드

    Raises:
        InputFormatError: 파일 없음
        ConfigError: 파싱 실패 또는 스키마 위반
    """
    path = Path(path)
    if not path.is_file():
        raise InputFormatError(f"config file not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    try:
        return BenchConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid bench config {path}:\n{e}") from e


@dataclass(frozen=True)
class PreparedDataset:
    """그래프 구성 직전의 데이터셋 (특징 행렬 또는 가중치 행렬)"""
    id: str
    clusters: int
    source: Union[DataMatrix, np.ndarray]
    labels: Optional[np.ndarray] = None


def prepare_dataset(entry: DatasetEntry) -> PreparedDataset:
    """DatasetEntry를 읽거나 생성"""
    if entry.generator is not None:
        spec = entry.generator
        if spec.kind == "blobs":
            data = gen_blobs(spec.n, entry.clusters, spec.dim, spec.spread, spec.seed)
            return PreparedDataset(entry.id, entry.clusters, data, data.labels)
        weights = gen_random_graph(RandomGraphSpec(n=spec.n, seed=spec.seed))
        return PreparedDataset(entry.id, entry.clusters, weights)

    data = load_csv_matrix(entry.path, has_label_column=entry.labels, has_header=entry.has_header)
    if entry.kind == "graph":
        return PreparedDataset(entry.id, entry.clusters, data.features)
    return PreparedDataset(entry.id, entry.clusters, data, data.labels)


def cell_seed(dataset_id: str, cut: str, method: str, seed_index: int, seed: int) -> int:
    """셀 키의 blake2b 해시로 만든 63비트 시드"""
    key = f"{dataset_id}|{cut}|{method}|{seed_index}|{seed}".encode("utf-8")
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big") >> 1


# =============================================================================
# 실행
# =============================================================================

@dataclass
class CellResult:
    """그리드 셀 한 개의 결과"""
    key: Tuple[int, int, int, int]
    report: RunReport
    wall_ms: float
    eta_rows: List[Tuple[float, float, int]] = field(default_factory=list)


@dataclass
class BenchResult:
    """벤치마크 전체 결과 (셀 키 순서)"""
    config: BenchConfig
    cells: List[CellResult]
    bounds: Dict[Tuple[str, str], float]
    labelled: List[str] = field(default_factory=list)

    @property
    def reports(self) -> List[RunReport]:
        return [cell.report for cell in self.cells]


def _score(dataset: PreparedDataset, labels: np.ndarray) -> Tuple[Optional[float], Optional[float]]:
    if dataset.labels is None:
        return None, None
    try:
        result = evaluate(dataset.labels, labels, n_clusters=dataset.clusters)
    except DiscretizationError as e:
        logger.warning(f"{dataset.id}: metrics unavailable ({e})")
        return None, None
    return result.acc, result.nmi


def run_cell(
    key: Tuple[int, int, int, int],
    dataset: PreparedDataset,
    g: Graph,
    rs: RelaxedSolution,
    method: DiscretizeMethod,
    seed: int,
    config: BenchConfig,
) -> CellResult:
    """
    그리드 셀 하나 실행 (first_order는 eta_grid 전체를 돌려 컷 목적 함수 최소 η 선택)
    """
    cut = g.cut.value
    cfg = DiscretizerConfig.from_config(
        method,
        seed=cell_seed(dataset.id, cut, method.value, key[3], seed),
        restarts=config.restarts,
    )

    eta_rows: List[Tuple[float, float, int]] = []
    if method is DiscretizeMethod.FIRST_ORDER:
        results = eta_sensitivity(rs, g, cfg, config.eta_grid)
        eta_rows = [(eta, rep.final_objective, rep.iterations) for eta, _, rep in results]
        eta, y, report = best_eta(results)
    else:
        y, report = discretize(rs, g, cfg)
        eta = None

    acc, nmi = _score(dataset, y.labels)
    run = RunReport(
        dataset=dataset.id,
        cut=cut,
        method=method.value,
        seed=seed,
        eta=eta,
        objective=report.final_objective,
        relaxed_lower_bound=rs.lower_bound,
        iterations=report.iterations,
        acc=acc,
        nmi=nmi,
    )
    log_run_event(
        RunInfo(
            dataset=dataset.id,
            cut=cut,
            method=method.value,
            seed=seed,
            eta=eta,
            objective=run.objective,
            iterations=run.iterations,
        )
    )
    return CellResult(key=key, report=run, wall_ms=report.wall_ms, eta_rows=eta_rows)


def run_bench(config: BenchConfig, workers: Optional[int] = None) -> BenchResult:
    """
    벤치마크 그리드 실행

    그래프와 완화 해는 (데이터셋, 컷)마다 한 번 계산하고,
    셀은 ThreadPoolExecutor에서 병렬로 실행합니다.

    Args:
        config: 검증된 BenchConfig
        workers: 워커 수 (None이면 config.workers, 그다음 SPECDISC_WORKERS)

    Returns:
        BenchResult
    """
    runtime = get_config().bench
    workers = workers or config.workers or runtime.workers

    datasets = [prepare_dataset(entry) for entry in config.inputs]
    prepared: Dict[Tuple[int, int], Tuple[Graph, RelaxedSolution]] = {}
    bounds: Dict[Tuple[str, str], float] = {}
    for d_idx, dataset in enumerate(datasets):
        for c_idx, cut_name in enumerate(config.cuts):
            g = build_graph(dataset.source, CutType.from_string(cut_name), k=config.k_neighbors)
            rs = solve_relaxed(g, dataset.clusters)
            prepared[(d_idx, c_idx)] = (g, rs)
            bounds[(dataset.id, cut_name)] = rs.lower_bound

    jobs = []
    for (d_idx, c_idx), (g, rs) in prepared.items():
        for m_idx, method_name in enumerate(config.methods):
            for s_idx, seed in enumerate(config.seeds):
                method = DiscretizeMethod.from_string(method_name)
                jobs.append(((d_idx, c_idx, m_idx, s_idx), datasets[d_idx], g, rs, method, seed))

    logger.info(f"bench: {len(jobs)} cells on {workers} workers")
    cells: List[CellResult] = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(run_cell, *job, config) for job in jobs]
        progress = tqdm(as_completed(futures), total=len(futures), desc="bench", disable=not runtime.progress)
        for future in progress:
            cells.append(future.result())

    cells.sort(key=lambda cell: cell.key)
    labelled = [d.id for d in datasets if d.labels is not None]
    return BenchResult(config=config, cells=cells, bounds=bounds, labelled=labelled)


# =============================================================================
# 보고서
# =============================================================================

def write_bench_outputs(result: BenchResult, output_dir: Optional[Union[str, Path]] = None) -> Dict[str, Path]:
    """
    BenchResult를 output_dir에 기록

    Returns:
        보고서 이름 → 경로
    """
    config = result.config
    out = Path(output_dir or config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataset_ids = [entry.id for entry in config.inputs]
    labelled = result.labelled
    reports = result.reports

    paths = {"runs": write_runs_csv(out / "runs.csv", reports)}
    paths["timings"] = write_csv(
        out / "timings.csv",
        ["dataset", "cut", "method", "seed", "wall_ms"],
        ((c.report.dataset, c.report.cut, c.report.method, c.report.seed, c.wall_ms) for c in result.cells),
    )
    paths["eta_sensitivity"] = write_csv(
        out / "eta_sensitivity.csv",
        ["dataset", "cut", "seed", "eta", "objective", "iterations"],
        (
            (c.report.dataset, c.report.cut, c.report.seed, eta, objective, iterations)
            for c in result.cells
            for eta, objective, iterations in c.eta_rows
        ),
    )

    objective_sections = []
    acc_sections = []
    nmi_sections = []
    for cut in config.cuts:
        bounds = {d: result.bounds[(d, cut)] for d in dataset_ids}
        objective_sections.append(
            objective_table(cut, dataset_ids, config.methods, bounds, group_mean(reports, "objective", cut))
        )
        if labelled:
            acc_sections.append(
                metric_table("Clustering accuracy", cut, labelled, config.methods, group_mean(reports, "acc", cut))
            )
            nmi_sections.append(
                metric_table(
                    "Normalized mutual information", cut, labelled, config.methods, group_mean(reports, "nmi", cut)
                )
            )

    paths["objective_tables"] = write_markdown(out / "objective_tables.md", objective_sections)
    if labelled:
        paths["accuracy_tables"] = write_markdown(out / "accuracy_tables.md", acc_sections)
        paths["nmi_tables"] = write_markdown(out / "nmi_tables.md", nmi_sections)
    logger.info(f"bench reports written to {out}")
    return paths
