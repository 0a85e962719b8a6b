"""
Report Schemas

CLI가 읽고 쓰는 구조화 데이터의 pydantic 스키마입니다.

스키마 구조:
- BenchConfig: 벤치마크 그리드 설정 (JSON/YAML)
  - DatasetEntry: 데이터셋 (파일 경로 또는 생성기)
    - GeneratorSpec: 합성 데이터 생성 명세
- RunReport: 이산화 실행 한 건의 결과
"""

import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..models import DEFAULT_ETA_GRID

CutName = Literal["ratio", "normalized"]
MethodName = Literal["km", "km_norm", "sr", "isr", "first_order"]

# objective >= relaxed_lower_bound - LOWER_BOUND_SLACK
LOWER_BOUND_SLACK = 1e-9


class GeneratorSpec(BaseModel):
    """
    합성 데이터 생성 명세

    Attributes:
        kind: blobs (특징 행렬) 또는 random_graph (가중치 행렬)
        n: 샘플/정점 수
        dim: blobs 차원
        spread: blobs 표준편차
        seed: 생성 시드
    """
    model_config = ConfigDict(extra="forbid")

    kind: Literal["blobs", "random_graph"]
    n: int = Field(ge=3)
    dim: int = Field(default=2, ge=1)
    spread: float = Field(default=1.0, gt=0)
    seed: int = 0


class DatasetEntry(BaseModel):
    """
    벤치마크 데이터셋

    path와 generator 중 정확히 하나를 지정합니다.

    Attributes:
        id: 보고서에 쓰이는 고유 이름
        clusters: 군집 수 c
        path: CSV 경로 (현재 작업 디렉토리 기준)
        kind: features (특징 행렬) 또는 graph (가중치 행렬)
        labels: 마지막 컬럼이 정답 라벨인지 여부 (features 전용)
        has_header: 첫 줄 헤더 여부
        generator: 합성 데이터 명세
    """
    model_config = ConfigDict(extra="forbid")

    id: str = Field(min_length=1)
    clusters: int = Field(ge=2)
    path: Optional[str] = None
    kind: Literal["features", "graph"] = "features"
    labels: bool = False
    has_header: bool = False
    generator: Optional[GeneratorSpec] = None

    @model_validator(mode="after")
    def _one_source(self) -> "DatasetEntry":
        if (self.path is None) == (self.generator is None):
            raise ValueError(f"dataset {self.id!r} needs exactly one of 'path' or 'generator'")
        if self.labels and self.kind == "graph":
            raise ValueError(f"dataset {self.id!r}: graph inputs cannot carry a label column")
        return self


class BenchConfig(BaseModel):
    """
    벤치마크 그리드 설정 (알 수 없는 키는 거부)

    Attributes:
        inputs: 데이터셋 목록
        cuts: 컷 규약 목록
        methods: 이산화 방법 목록
        k_neighbors: adaptive-neighbor 이웃 수
        eta_grid: first_order η 탐색 구간
        seeds: 시드 목록
        output_dir: 보고서 출력 디렉토리
        workers: 워커 수 (None이면 SPECDISC_WORKERS)
        restarts: 회전 계열 재시작 수 (None이면 SPECDISC_RESTARTS)
    """
    model_config = ConfigDict(extra="forbid")

    inputs: List[DatasetEntry] = Field(min_length=1)
    cuts: List[CutName] = Field(min_length=1)
    methods: List[MethodName] = Field(min_length=1)
    k_neighbors: int = Field(default=10, ge=1)
    eta_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_ETA_GRID), min_length=1)
    seeds: List[int] = Field(min_length=1)
    output_dir: str
    workers: Optional[int] = Field(default=None, ge=1)
    restarts: Optional[int] = Field(default=None, ge=1)

    @field_validator("eta_grid")
    @classmethod
    def _non_negative_etas(cls, value: List[float]) -> List[float]:
        if any(not (math.isfinite(eta) and eta >= 0) for eta in value):
            raise ValueError("eta_grid entries must be finite and >= 0")
        return value

    @model_validator(mode="after")
    def _unique_ids(self) -> "BenchConfig":
        ids = [entry.id for entry in self.inputs]
        if len(set(ids)) != len(ids):
            raise ValueError("dataset ids must be unique")
        return self


class RunReport(BaseModel):
    """
    이산화 실행 한 건의 결과

    Attributes:
        dataset: 데이터셋 id
        cut: 컷 규약
        method: 이산화 방법
        seed: 시드
        eta: first_order에서 선택된 η
        objective: 최종 그래프 컷 목적 함수 값
        relaxed_lower_bound: tr(F*ᵀLF*)
        iterations: 반복 횟수
        wall_ms: 이산화 시간 (요청 시에만)
        acc / nmi: 정답 라벨이 있을 때의 평가 지표
        labels: 할당 라벨 (단일 실행 출력)
    """
    model_config = ConfigDict(extra="forbid")

    dataset: str
    cut: CutName
    method: MethodName
    seed: int
    eta: Optional[float] = None
    objective: float
    relaxed_lower_bound: float
    iterations: int = Field(ge=0)
    wall_ms: Optional[float] = None
    acc: Optional[float] = None
    nmi: Optional[float] = None
    labels: Optional[List[int]] = None

    @field_validator("eta", "objective", "relaxed_lower_bound", "wall_ms", "acc", "nmi")
    @classmethod
    def _finite(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not math.isfinite(value):
            raise ValueError("report values must be finite")
        return value

    @model_validator(mode="after")
    def _above_bound(self) -> "RunReport":
        if self.objective < self.relaxed_lower_bound - LOWER_BOUND_SLACK:
            raise ValueError(
                f"objective {self.objective!r} is below the relaxed bound {self.relaxed_lower_bound!r}"
            )
        return self

