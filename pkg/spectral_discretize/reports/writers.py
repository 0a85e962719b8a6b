"""
Report Writers

CSV / JSON / Markdown 보고서를 씁니다.
실수는 repr(최단 왕복 표현)로 기록하므로 같은 입력이면 바이트 단위로 같은 파일이 나옵니다.
"""

import csv
import json
import logging
import sys
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .schemas import RunReport

logger = logging.getLogger(__name__)

RUN_COLUMNS = [
    "dataset",
    "cut",
    "method",
    "seed",
    "eta",
    "objective",
    "relaxed_lower_bound",
    "iterations",
    "acc",
    "nmi",
]

MISSING = "n/a"


def fmt_value(value) -> str:
    """CSV 셀 문자열 (None → 빈 문자열, float → repr)"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """
    헤더와 행으로 CSV 작성

    Args:
        path: 출력 경로 (상위 디렉토리 자동 생성, "-"이면 stdout)
        header: 컬럼 이름
        rows: 값 시퀀스 목록

    Returns:
        작성한 경로
    """
    if str(path) == "-":
        _write_rows(sys.stdout, header, rows)
        return Path("-")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        _write_rows(f, header, rows)
    logger.debug(f"Wrote {path}")
    return path


def _write_rows(stream, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_value(v) for v in row])


def write_runs_csv(path: Union[str, Path], reports: Sequence[RunReport]) -> Path:
    """RunReport 목록을 CSV로 (wall_ms 제외)"""
    return write_csv(path, RUN_COLUMNS, ([getattr(r, col) for col in RUN_COLUMNS] for r in reports))


def write_json(payload: dict, path: Optional[Union[str, Path]] = None) -> None:
    """
    JSON 작성 (path가 None이거나 "-"이면 stdout)
    """
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_trace_csv(path: Union[str, Path], trace: Sequence[float]) -> Path:
    """반복별 목적 함수 값 (iteration은 1부터)"""
    return write_csv(path, ["iteration", "objective"], ((i, float(v)) for i, v in enumerate(trace, start=1)))


# =============================================================================
# Markdown 표
# =============================================================================

def _cell(value: Optional[float]) -> str:
    return MISSING if value is None else f"{value:.4f}"


def objective_table(
    cut: str,
    datasets: Sequence[str],
    methods: Sequence[str],
    bounds: Mapping[str, float],
    values: Mapping[Tuple[str, str], Optional[float]],
) -> str:
    """
    컷 목적 함수 Markdown 표 (행 = 데이터셋, 열 = OPT_r 다음 방법들)

    각 행에서 방법 중 최솟값을 굵게 표시합니다 (OPT_r는 하한이므로 제외).

    Args:
        cut: 컷 규약 이름
        datasets: 행 순서
        methods: 열 순서
        bounds: 데이터셋별 완화 하한 (시드 평균)
        values: (dataset, method) → 시드 평균 목적 함수
    """
    lines = [
        f"### Objective values ({cut} cut)",
        "",
        "| dataset | OPT_r | " + " | ".join(methods) + " |",
        "|---|---|" + "---|" * len(methods),
    ]
    for dataset in datasets:
        row = [values.get((dataset, m)) for m in methods]
        present = [v for v in row if v is not None]
        best = min(present) if present else None
        cells = []
        for v in row:
            text = _cell(v)
            if v is not None and best is not None and v <= best + 1e-12:
                text = f"**{text}**"
            cells.append(text)
        lines.append(f"| {dataset} | {_cell(bounds.get(dataset))} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def metric_table(
    title: str,
    cut: str,
    datasets: Sequence[str],
    methods: Sequence[str],
    values: Mapping[Tuple[str, str], Optional[float]],
) -> str:
    """ACC / NMI Markdown 표 (값이 없으면 n/a, 행 최댓값 굵게)"""
    lines = [
        f"### {title} ({cut} cut)",
        "",
        "| dataset | " + " | ".join(methods) + " |",
        "|---|" + "---|" * len(methods),
    ]
    for dataset in datasets:
        row = [values.get((dataset, m)) for m in methods]
        present = [v for v in row if v is not None]
        best = max(present) if present else None
        cells = []
        for v in row:
            text = _cell(v)
            if v is not None and best is not None and v >= best - 1e-12:
                text = f"**{text}**"
            cells.append(text)
        lines.append(f"| {dataset} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def write_markdown(path: Union[str, Path], sections: List[str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(sections), encoding="utf-8")
    return path


def mean(values: Iterable[float]) -> Optional[float]:
    items = list(values)
    return sum(items) / len(items) if items else None


def group_mean(
    reports: Sequence[RunReport], attr: str, cut: str
) -> Dict[Tuple[str, str], Optional[float]]:
    """(dataset, method)별 시드 평균 (값이 하나라도 없으면 None)"""
    grouped: Dict[Tuple[str, str], List[Optional[float]]] = {}
    for r in reports:
        if r.cut == cut:
            grouped.setdefault((r.dataset, r.method), []).append(getattr(r, attr))
    return {
        key: (None if any(v is None for v in vals) else mean(vals))
        for key, vals in grouped.items()
    }
