"""
Command-Line Interface

Subcommands:
- discretize: 단일 실행 (RunReport JSON)
- bench: 벤치마크 그리드 (CSV + Markdown 표)
- simulate: G† ≠ G* 비율 시뮬레이션 (CSV)
- theory-check: 이론 부등식 랜덤 검증 (요약 + CSV)
- oracle: 작은 그래프의 전수 탐색 결과 (JSON)
- eta-sweep: η별 first_order 컷 목적 함수 (CSV)

Exit codes:
- 0: 성공
- 1: 이론 검증 실패
- 2: 입력/설정 오류 (ContractViolation)
- 3: 수치 실패 (NumericalFailure, RunReport 검증 실패)

Usage:
    python -m spectral_discretize discretize --input data.csv --clusters 3 --method first_order
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from dotenv import load_dotenv
from pydantic import ValidationError

from .bench import load_bench_config, run_bench, write_bench_outputs
from .config import get_config
from .dataset_io import DataMatrix, load_csv_matrix
from .discretize import discretize, eta_sensitivity, select_eta
from .errors import ContractViolation, NumericalFailure
from .graph import CutType, Graph, build_graph
from .logging import RunInfo, configure_logging, log_run_event
from .metrics import evaluate
from .models import DEFAULT_ETA_GRID, DiscretizeMethod, DiscretizerConfig
from .oracle import closest_discrete, mismatch_study
from .relaxed import solve_relaxed
from .reports import RunReport, write_csv, write_json, write_trace_csv
from .theory import delta_bound_report, run_theory_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3

EPILOG = """
예시:
  python -m spectral_discretize discretize --input graph.csv --input-kind graph --clusters 2 --method isr
  python -m spectral_discretize bench --config bench.yaml
  python -m spectral_discretize simulate --n-list 3,4,5 --trials 2000
  python -m spectral_discretize theory-check --trials 200

환경변수:
  SPECDISC_K_NEIGHBORS   - adaptive-neighbor 이웃 수 (기본: 10)
  SPECDISC_ETA           - first_order η (기본: 1e-3)
  SPECDISC_MAX_SWEEPS    - sweep 상한 (기본: 100)
  SPECDISC_RESTARTS      - 회전 계열 재시작 수 (기본: 5)
  SPECDISC_KM_RESTARTS   - k-means 재시작 수 (기본: 10)
  SPECDISC_KM_MAX_ITERS  - Lloyd 반복 상한 (기본: 100)
  SPECDISC_ORACLE_MAX_N  - 전수 탐색 최대 n (기본: 16)
  SPECDISC_WORKERS       - bench 워커 수
  SPECDISC_PROGRESS      - 진행률 표시 (기본: true)
  SPECDISC_LOG_LEVEL     - 로그 레벨 (기본: WARNING)
  SPECDISC_LOG_JSON      - JSON 로그 (기본: false)
"""


# =============================================================================
# 인자 파싱
# =============================================================================

def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="CSV 파일 (특징 행렬 또는 가중치 행렬)")
    parser.add_argument(
        "--input-kind",
        choices=["features", "graph"],
        default="features",
        help="features: 행 = 샘플, graph: n×n 가중치 행렬 (기본: features)",
    )
    parser.add_argument("--clusters", type=int, required=True, help="군집 수 c")
    parser.add_argument("--cut", choices=[c.value for c in CutType], default="ratio", help="컷 규약 (기본: ratio)")
    parser.add_argument("--k", type=int, default=None, help="이웃 수 (기본: SPECDISC_K_NEIGHBORS)")
    parser.add_argument(
        "--labels",
        choices=["none", "last"],
        default="none",
        help="last: 마지막 컬럼을 정답 라벨로 사용 (ACC/NMI 계산)",
    )
    parser.add_argument("--has-header", action="store_true", help="첫 줄을 헤더로 건너뜀")


def build_parser() -> argparse.ArgumentParser:
    """CLI 파서 생성"""
    parser = argparse.ArgumentParser(
        prog="spectral_discretize",
        description="스펙트럴 클러스터링 완화 해의 이산화 도구",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--log-level", default=None, help="로그 레벨 (기본: SPECDISC_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discretize", help="단일 이산화 실행")
    _add_input_arguments(p)
    p.add_argument(
        "--method",
        choices=[m.value for m in DiscretizeMethod],
        default=DiscretizeMethod.FIRST_ORDER.value,
        help="이산화 방법 (기본: first_order)",
    )
    p.add_argument("--eta", type=float, default=None, help="first_order η (기본: SPECDISC_ETA)")
    p.add_argument(
        "--eta-search",
        action="store_true",
        help="first_order η를 {1e-3, ..., 1e1}에서 컷 목적 함수 최소로 선택",
    )
    p.add_argument("--seed", type=int, default=0, help="시드 (기본: 0)")
    p.add_argument("--restarts", type=int, default=None, help="재시작 수 (기본: SPECDISC_RESTARTS)")
    p.add_argument("--output", default="-", help="JSON 출력 경로 (기본: stdout)")
    p.add_argument("--trace-output", default=None, help="반복별 목적 함수 CSV 경로")
    p.add_argument("--timing", action="store_true", help="wall_ms 포함")
    p.add_argument("--dataset-id", default=None, help="보고서의 dataset 이름 (기본: 파일 이름)")

    p = sub.add_parser("bench", help="벤치마크 그리드 실행")
    p.add_argument("--config", required=True, help="JSON 또는 YAML 설정 파일")
    p.add_argument("--output-dir", default=None, help="출력 디렉토리 (설정의 output_dir 대신)")
    p.add_argument("--workers", type=int, default=None, help="워커 수")

    p = sub.add_parser("simulate", help="G† ≠ G* 비율 시뮬레이션")
    p.add_argument("--n-list", type=_int_list, default=[3, 4, 5], help="정점 수 목록 (기본: 3,4,5)")
    p.add_argument("--trials", type=int, default=2000, help="n당 시행 수 (기본: 2000)")
    p.add_argument("--clusters", type=int, default=2, help="군집 수 (기본: 2)")
    p.add_argument("--seed", type=int, default=0, help="마스터 시드 (기본: 0)")
    p.add_argument("--output", default="-", help="CSV 출력 경로 (기본: stdout)")

    p = sub.add_parser("theory-check", help="이론 부등식 랜덤 검증")
    p.add_argument("--trials", type=int, default=200, help="인스턴스 수 (기본: 200)")
    p.add_argument("--seed", type=int, default=0, help="시드 (기본: 0)")
    p.add_argument("--output", default=None, help="인스턴스별 CSV 경로")

    p = sub.add_parser("oracle", help="전수 탐색으로 G*와 G† 계산")
    _add_input_arguments(p)
    p.add_argument("--output", default="-", help="JSON 출력 경로 (기본: stdout)")

    p = sub.add_parser("eta-sweep", help="η별 first_order 컷 목적 함수")
    _add_input_arguments(p)
    p.add_argument("--eta-grid", type=_float_list, default=list(DEFAULT_ETA_GRID), help="η 목록 (쉼표 구분)")
    p.add_argument("--seed", type=int, default=0, help="시드 (기본: 0)")
    p.add_argument("--restarts", type=int, default=None, help="재시작 수")
    p.add_argument("--output", default="-", help="CSV 출력 경로 (기본: stdout)")

    return parser


# =============================================================================
# 공통
# =============================================================================

def _load_input(args) -> Tuple[Graph, Optional[DataMatrix]]:
    if args.input_kind == "graph" and args.labels == "last":
        raise ContractViolation("--labels last is only valid with --input-kind features")
    data = load_csv_matrix(args.input, has_label_column=args.labels == "last", has_header=args.has_header)
    cut = CutType.from_string(args.cut)
    if args.input_kind == "graph":
        return build_graph(data.features, cut), data
    return build_graph(data, cut, k=args.k), data


def _labels(y) -> List[int]:
    return [int(v) for v in y.labels]


# =============================================================================
# Subcommands
# =============================================================================

def cmd_discretize(args) -> int:
    """단일 이산화 실행 후 RunReport JSON 출력"""
    g, data = _load_input(args)
    rs = solve_relaxed(g, args.clusters)
    cfg = DiscretizerConfig.from_config(args.method, seed=args.seed, eta=args.eta, restarts=args.restarts)

    eta = None
    if cfg.method is DiscretizeMethod.FIRST_ORDER and args.eta_search:
        eta, y, report = select_eta(rs, g, cfg, DEFAULT_ETA_GRID)
    else:
        y, report = discretize(rs, g, cfg)
        eta = report.eta

    acc = nmi = None
    if data is not None and data.labels is not None:
        scores = evaluate(data.labels, y.labels, n_clusters=args.clusters)
        acc, nmi = scores.acc, scores.nmi

    dataset_id = args.dataset_id or Path(args.input).stem
    run = RunReport(
        dataset=dataset_id,
        cut=g.cut.value,
        method=cfg.method.value,
        seed=args.seed,
        eta=eta,
        objective=report.final_objective,
        relaxed_lower_bound=rs.lower_bound,
        iterations=report.iterations,
        wall_ms=report.wall_ms if args.timing else None,
        acc=acc,
        nmi=nmi,
        labels=_labels(y),
    )
    log_run_event(
        RunInfo(
            dataset=dataset_id,
            cut=run.cut,
            method=run.method,
            seed=run.seed,
            eta=eta,
            objective=run.objective,
            iterations=run.iterations,
        )
    )
    if args.trace_output:
        write_trace_csv(args.trace_output, report.objective_trace)
    write_json(run.model_dump(exclude_none=True), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    """벤치마크 그리드 실행 후 보고서 작성"""
    config = load_bench_config(args.config)
    result = run_bench(config, workers=args.workers)
    paths = write_bench_outputs(result, args.output_dir)
    for name, path in paths.items():
        print(f"{name}: {path}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    """G† ≠ G* 비율 CSV 출력"""
    rows = mismatch_study(args.n_list, args.trials, c=args.clusters, seed=args.seed)
    write_csv(
        args.output,
        ["n", "trials", "mismatch_proportion"],
        ((row.n, row.trials, row.mismatch_proportion) for row in rows),
    )
    return EXIT_OK


def cmd_theory_check(args) -> int:
    """이론 부등식 검증 요약 출력 (실패 시 exit 1)"""
    result = run_theory_suite(args.trials, seed=args.seed)
    if args.output:
        rows = [row.as_dict() for row in result.rows]
        header = list(rows[0].keys())
        write_csv(args.output, header, ([row[col] for col in header] for row in rows))
    print(result.summary())
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def cmd_oracle(args) -> int:
    """G*, G†, 컷 값, 가능 할당 수, 완화 하한 JSON 출력"""
    g, _ = _load_input(args)
    rs = solve_relaxed(g, args.clusters)
    result = closest_discrete(rs, g, args.clusters)
    bound = delta_bound_report(rs, g, args.clusters)
    payload = {
        "n": g.n,
        "clusters": args.clusters,
        "cut": g.cut.value,
        "feasible_count": result.feasible_count,
        "relaxed_lower_bound": rs.lower_bound,
        "optimum": {"labels": _labels(result.best_labels), "objective": result.best_value},
        "closest": {
            "labels": _labels(result.closest_labels),
            "objective": result.closest_value,
            "distance": result.closest_distance,
        },
        "same_partition": result.best_labels.same_partition(result.closest_labels),
        "residual_comparison": {
            "rho_sq_optimum": bound.rho_sq_best,
            "rho_sq_closest": bound.rho_sq_closest,
            "condition_ratio": bound.condition_ratio,
            "scaled_rho_sq_closest": bound.scaled_closest,
            "bound_constant": bound.bound_constant,
        },
    }
    write_json(payload, args.output)
    return EXIT_OK


def cmd_eta_sweep(args) -> int:
    """η별 first_order 결과 CSV 출력"""
    g, _ = _load_input(args)
    rs = solve_relaxed(g, args.clusters)
    cfg = DiscretizerConfig.from_config(DiscretizeMethod.FIRST_ORDER, seed=args.seed, restarts=args.restarts)
    results = eta_sensitivity(rs, g, cfg, args.eta_grid)
    write_csv(
        args.output,
        ["eta", "objective", "iterations"],
        ((eta, report.final_objective, report.iterations) for eta, _, report in results),
    )
    return EXIT_OK


COMMANDS = {
    "discretize": cmd_discretize,
    "bench": cmd_bench,
    "simulate": cmd_simulate,
    "theory-check": cmd_theory_check,
    "oracle": cmd_oracle,
    "eta-sweep": cmd_eta_sweep,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI 진입점

    Args:
        argv: 인자 목록 (None이면 sys.argv[1:])

    Returns:
        exit code
    """
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        log_config = get_config().logging
        configure_logging(args.log_level or log_config.level, log_config.json_format)
        return COMMANDS[args.command](args)
    except ContractViolation as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except NumericalFailure as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE
    except ValidationError as e:
        # RunReport 검증 실패 (설정 파일 오류는 ConfigError로 변환됨)
        print(f"numerical failure: invalid run report: {e}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE
