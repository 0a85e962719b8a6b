"""
Reports Module

Components:
- schemas.py: BenchConfig, RunReport 등 pydantic 스키마
- writers.py: CSV / JSON / Markdown 작성
"""

from .schemas import BenchConfig, DatasetEntry, GeneratorSpec, RunReport
from .writers import (
    group_mean,
    metric_table,
    objective_table,
    write_csv,
    write_json,
    write_markdown,
    write_runs_csv,
    write_trace_csv,
)

__all__ = [
    "BenchConfig",
    "DatasetEntry",
    "GeneratorSpec",
    "RunReport",
    "group_mean",
    "metric_table",
    "objective_table",
    "write_csv",
    "write_json",
    "write_markdown",
    "write_runs_csv",
    "write_trace_csv",
]
