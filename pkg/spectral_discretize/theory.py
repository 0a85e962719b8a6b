"""
Theory Checks

이산화 분석의 부등식들을 수치적으로 검증합니다.

- 특이값 상한: (YᵀY)^(-1/2)YᵀF*의 특이값 σ_i <= 1
- sandwich: J_kmeans(Y) <= J_ISR(Y) <= (1 + ε) J_kmeans(Y),
  ε = ε_var + 2√ε_var, ε_var = max_i (1 - σ_i)/(1 + σ_i)  (ratio cut)
- 순서 보존: (1 + ε₁) J_kmeans(Y₁) <= J_kmeans(Y₂) 이면 J_ISR(Y₁) <= J_ISR(Y₂)
- 잔차 Δ = f(Y) - F*R에 대해 λ_min ρ²(Δ) <= tr(ΔᵀLΔ) <= λ_max ρ²(Δ),
  ρ(Δ) = ‖F_⊥ᵀΔ‖ (F_⊥: 0이 아닌 고유값의 고유벡터)
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Union

import numpy as np
from tqdm import tqdm

from .config import get_config
from .dataset_io import RandomGraphSpec, gen_random_graph
from .discretize.base import random_labels
from .errors import ContractViolation, DegenerateGraphError, EmptyReportError
from .graph import CutType, Graph, laplacian_from_weights
from .numerics import as_dense, make_rng, procrustes, sym_eig, thin_svd
from .oracle import closest_discrete
from .relaxed import Assignment, RelaxedSolution, scaled_indicator, solve_relaxed

logger = logging.getLogger(__name__)

SIGMA_SLACK = 1e-10
RELATIVE_SLACK = 1e-8
ZERO_EIGEN_RTOL = 1e-9

# 이론 검증용 랜덤 인스턴스 범위
SUITE_N_RANGE = (5, 50)
SUITE_C_RANGE = (2, 5)


@dataclass(frozen=True)
class SandwichReport:
    """
    sandwich 부등식 검증 결과

    Attributes:
        j_kmeans: ‖F* - Y(YᵀY)⁻¹YᵀF*‖²
        j_isr: min_R ‖F*R - Y(YᵀY)^(-1/2)‖²
        sigma: (YᵀY)^(-1/2)YᵀF*의 특이값 (내림차순)
        eps_var: max_i (1 - σ_i)/(1 + σ_i), [0, 1]로 제한
        eps: eps_var + 2√eps_var
    """
    j_kmeans: float
    j_isr: float
    sigma: np.ndarray
    eps_var: float
    eps: float

    @property
    def left_holds(self) -> bool:
        return self.j_kmeans <= self.j_isr + RELATIVE_SLACK * max(1.0, abs(self.j_isr))

    @property
    def right_holds(self) -> bool:
        bound = (1.0 + self.eps) * self.j_kmeans
        return self.j_isr <= bound + RELATIVE_SLACK * max(1.0, abs(bound))

    @property
    def holds(self) -> bool:
        return self.left_holds and self.right_holds


@dataclass(frozen=True)
class RhoReport:
    """
    잔차 Δ의 고유값 부등식 검증 결과

    Attributes:
        rho_sq: ‖F_⊥ᵀΔ‖²
        l_delta: tr(ΔᵀLΔ)
        lambda_min / lambda_max: 0이 아닌 고유값의 최소/최대
        delta_sq: ‖Δ‖²
    """
    rho_sq: float
    l_delta: float
    lambda_min: float
    lambda_max: float
    delta_sq: float

    @property
    def tolerance(self) -> float:
        return RELATIVE_SLACK * max(1.0, self.lambda_max * self.delta_sq)

    @property
    def holds(self) -> bool:
        tol = self.tolerance
        return (
            self.lambda_min * self.rho_sq <= self.l_delta + tol
            and self.l_delta <= self.lambda_max * self.rho_sq + tol
            and self.rho_sq <= self.delta_sq + tol
        )


@dataclass(frozen=True)
class DeltaBoundReport:
    """
    이산 최적해 G*와 최근접 해 G†의 잔차 비교 (보고 전용, 판정하지 않음)

    Attributes:
        rho_sq_best: ρ²(Δ*), G* 기준
        rho_sq_closest: ρ²(Δ†), G† 기준
        condition_ratio: λ_max / λ_min
        scaled_closest: condition_ratio * rho_sq_closest
        bound_constant: 2 Σ (가장 작은 c개 고유값)
    """
    rho_sq_best: float
    rho_sq_closest: float
    condition_ratio: float
    scaled_closest: float
    bound_constant: float


# =============================================================================
# 목적 함수
# =============================================================================

def _f_matrix(f_star: Union[np.ndarray, RelaxedSolution]) -> np.ndarray:
    return f_star.F_star if isinstance(f_star, RelaxedSolution) else as_dense(f_star, "F*")


def _check_rows(f: np.ndarray, y: Assignment) -> None:
    if f.shape[0] != y.n or f.shape[1] != y.c:
        raise ContractViolation(f"F* shape {f.shape} does not match assignment (n={y.n}, c={y.c})")


def _normalized_projection(f: np.ndarray, y: Assignment) -> np.ndarray:
    """(YᵀY)^(-1/2) YᵀF (c, c)"""
    sums = np.zeros((y.c, f.shape[1]))
    np.add.at(sums, y.labels, f)
    return sums / np.sqrt(y.counts())[:, None]


def cluster_sigma(f_star, y: Assignment) -> np.ndarray:
    """(YᵀY)^(-1/2)YᵀF*의 특이값"""
    f = _f_matrix(f_star)
    _check_rows(f, y)
    _, s, _ = thin_svd(_normalized_projection(f, y))
    return s


def j_kmeans(f_star, y: Assignment) -> float:
    """
    k-means 잔차 ‖F* - Y(YᵀY)⁻¹YᵀF*‖²

    Args:
        f_star: (n, c) 행렬 또는 RelaxedSolution
        y: 빈 군집 없는 할당

    Returns:
        군집 중심까지의 제곱 거리 합
    """
    f = _f_matrix(f_star)
    _check_rows(f, y)
    sums = np.zeros((y.c, f.shape[1]))
    np.add.at(sums, y.labels, f)
    centroids = sums / y.counts()[:, None]
    return float(np.sum((f - centroids[y.labels]) ** 2))


def j_isr(f_star, y: Assignment, g: Optional[Graph] = None) -> float:
    """
    min_R ‖F*R - f(Y)‖² (Procrustes로 정확히 최소화)

    Args:
        f_star: (n, c) 행렬 또는 RelaxedSolution
        y: 빈 군집 없는 할당
        g: f(Y)의 스케일을 정하는 그래프 (None이면 ratio cut 규약)

    Returns:
        ‖F*‖² + c - 2‖F*ᵀf(Y)‖_*
    """
    f = _f_matrix(f_star)
    _check_rows(f, y)
    if g is None or g.cut is CutType.RATIO:
        cross = _normalized_projection(f, y).T
    else:
        cross = f.T @ scaled_indicator(y, g)
    _, s, _ = thin_svd(cross)
    return max(float(np.sum(f**2)) + y.c - 2.0 * float(np.sum(s)), 0.0)


def sandwich_check(f_star, y: Assignment) -> SandwichReport:
    """
    J_kmeans(Y) <= J_ISR(Y) <= (1 + ε) J_kmeans(Y) 검증 (ratio cut 규약)

    Args:
        f_star: 정규직교 열을 가진 (n, c) 행렬
        y: 빈 군집 없는 할당

    Returns:
        SandwichReport (left_holds / right_holds로 판정)
    """
    sigma = cluster_sigma(f_star, y)
    clipped = np.clip(sigma, 0.0, 1.0)
    eps_var = float(np.clip(np.max((1.0 - clipped) / (1.0 + clipped)), 0.0, 1.0))
    return SandwichReport(
        j_kmeans=j_kmeans(f_star, y),
        j_isr=j_isr(f_star, y),
        sigma=sigma,
        eps_var=eps_var,
        eps=eps_var + 2.0 * float(np.sqrt(eps_var)),
    )


def corollary_check(f_star, y1: Assignment, y2: Assignment) -> Optional[bool]:
    """
    (1 + ε₁) J_kmeans(Y₁) <= J_kmeans(Y₂)일 때 J_ISR(Y₁) <= J_ISR(Y₂) 여부

    Returns:
        조건을 만족하지 않으면 None, 만족하면 결론의 성립 여부
    """
    first = sandwich_check(f_star, y1)
    second_km = j_kmeans(f_star, y2)
    if (1.0 + first.eps) * first.j_kmeans > second_km:
        return None
    second_isr = j_isr(f_star, y2)
    return first.j_isr <= second_isr + RELATIVE_SLACK * max(1.0, abs(second_isr))


# =============================================================================
# 잔차 Δ
# =============================================================================

def residual(rs: RelaxedSolution, y: Assignment, g: Graph) -> np.ndarray:
    """Δ = f(Y) - F*R, R = procrustes(F*ᵀf(Y))"""
    g_mat = scaled_indicator(y, g)
    return g_mat - rs.F_star @ procrustes(rs.F_star.T @ g_mat)


def rho_of(delta: np.ndarray, g: Graph) -> RhoReport:
    """
    임의의 (n, c) 잔차에 대한 ρ², tr(ΔᵀLΔ), 비영 고유값 범위

    고유값 λ < 1e-9 λ_max는 0으로 취급합니다.

    Raises:
        DegenerateGraphError: 모든 고유값이 0
    """
    delta = as_dense(delta, "residual")
    eig = sym_eig(g.laplacian)
    lambda_max = float(eig.eigenvalues[-1])
    if not lambda_max > 0:
        raise DegenerateGraphError("all Laplacian eigenvalues are zero")
    nonzero = eig.eigenvalues >= ZERO_EIGEN_RTOL * lambda_max
    f_perp = eig.eigenvectors[:, nonzero]
    return RhoReport(
        rho_sq=float(np.sum((f_perp.T @ delta) ** 2)),
        l_delta=float(np.sum(delta * (g.laplacian @ delta))),
        lambda_min=float(eig.eigenvalues[nonzero][0]),
        lambda_max=lambda_max,
        delta_sq=float(np.sum(delta**2)),
    )


def rho_check(rs: RelaxedSolution, y: Assignment, g: Graph) -> RhoReport:
    """
    λ_min ρ²(Δ) <= tr(ΔᵀLΔ) <= λ_max ρ²(Δ) 검증

    Args:
        rs: 완화 해
        y: 할당
        g: 그래프

    Returns:
        RhoReport (holds로 판정)
    """
    return rho_of(residual(rs, y, g), g)


def delta_bound_report(rs: RelaxedSolution, g: Graph, c: int) -> DeltaBoundReport:
    """
    오라클 크기 인스턴스에서 ρ²(Δ*)와 (λ_max/λ_min)ρ²(Δ†) 비교값 계산

    상수항이 인스턴스마다 달라 판정하지 않고 보고만 합니다.
    """
    result = closest_discrete(rs, g, c)
    best = rho_check(rs, result.best_labels, g)
    closest = rho_check(rs, result.closest_labels, g)
    ratio = closest.lambda_max / closest.lambda_min
    return DeltaBoundReport(
        rho_sq_best=best.rho_sq,
        rho_sq_closest=closest.rho_sq,
        condition_ratio=ratio,
        scaled_closest=ratio * closest.rho_sq,
        bound_constant=2.0 * float(np.sum(rs.eigenvalues[:c])),
    )


# =============================================================================
# 랜덤 검증 모음
# =============================================================================

@dataclass
class TheoryRow:
    """랜덤 인스턴스 하나의 검증 결과"""
    trial: int
    n: int
    c: int
    cut: str
    sigma_max: float
    j_kmeans: float
    j_isr: float
    eps: float
    sigma_ok: bool
    sandwich_ok: bool
    corollary_qualified: int
    corollary_ok: bool
    rho_sq: float
    l_delta: float
    lambda_min: float
    lambda_max: float
    rho_ok: bool

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class TheorySuiteResult:
    """검증 모음 결과"""
    rows: List[TheoryRow] = field(default_factory=list)

    def failures(self, check: str) -> int:
        return sum(1 for row in self.rows if not getattr(row, check))

    @property
    def corollary_pairs(self) -> int:
        return sum(row.corollary_qualified for row in self.rows)

    @property
    def passed(self) -> bool:
        return all(
            self.failures(check) == 0 for check in ("sigma_ok", "sandwich_ok", "corollary_ok", "rho_ok")
        )

    def summary(self) -> str:
        lines = [
            f"instances: {len(self.rows)}",
            f"singular values <= 1: {self.failures('sigma_ok')} violations",
            f"sandwich: {self.failures('sandwich_ok')} violations",
            f"order preservation: {self.failures('corollary_ok')} violations "
            f"among {self.corollary_pairs} qualifying pairs",
            f"eigenvalue bound on residual: {self.failures('rho_ok')} violations",
            f"result: {'PASS' if self.passed else 'FAIL'}",
        ]
        return "\n".join(lines)


def theory_instance(trial: int, seed: int) -> TheoryRow:
    """
    시드 (seed, trial)로 만든 랜덤 그래프/할당에서 모든 부등식 확인

    짝수 시행은 ratio cut, 홀수 시행은 normalized cut으로 잔차 부등식을 봅니다.
    sandwich와 순서 보존은 ratio cut 규약입니다.
    """
    rng = make_rng(seed + trial)
    n = int(rng.integers(SUITE_N_RANGE[0], SUITE_N_RANGE[1] + 1))
    c = int(rng.integers(SUITE_C_RANGE[0], SUITE_C_RANGE[1] + 1))
    weights = gen_random_graph(RandomGraphSpec(n=n, seed=int(rng.integers(2**62))))

    ratio_graph = laplacian_from_weights(weights, CutType.RATIO)
    rs = solve_relaxed(ratio_graph, c)
    y1 = Assignment(labels=random_labels(n, c, rng), c=c)
    y2 = Assignment(labels=random_labels(n, c, rng), c=c)

    sandwich = sandwich_check(rs.F_star, y1)
    verdicts = [
        v for v in (corollary_check(rs.F_star, y1, y2), corollary_check(rs.F_star, y2, y1)) if v is not None
    ]

    cut = CutType.RATIO if trial % 2 == 0 else CutType.NORMALIZED
    rho_graph = ratio_graph if cut is CutType.RATIO else laplacian_from_weights(weights, cut)
    rho_rs = rs if cut is CutType.RATIO else solve_relaxed(rho_graph, c)
    rho = rho_check(rho_rs, y1, rho_graph)

    return TheoryRow(
        trial=trial,
        n=n,
        c=c,
        cut=cut.value,
        sigma_max=float(np.max(sandwich.sigma)),
        j_kmeans=sandwich.j_kmeans,
        j_isr=sandwich.j_isr,
        eps=sandwich.eps,
        sigma_ok=bool(np.max(sandwich.sigma) <= 1.0 + SIGMA_SLACK),
        sandwich_ok=sandwich.holds,
        corollary_qualified=len(verdicts),
        corollary_ok=all(verdicts),
        rho_sq=rho.rho_sq,
        l_delta=rho.l_delta,
        lambda_min=rho.lambda_min,
        lambda_max=rho.lambda_max,
        rho_ok=rho.holds,
    )


def run_theory_suite(trials: int, seed: int = 0) -> TheorySuiteResult:
    """
    랜덤 인스턴스 trials개에 대해 모든 부등식 확인

    Raises:
        EmptyReportError: trials <= 0
    """
    if trials <= 0:
        raise EmptyReportError(f"theory suite needs trials >= 1, got {trials}")

    progress = get_config().bench.progress
    result = TheorySuiteResult()
    for trial in tqdm(range(trials), desc="theory", disable=not progress, leave=False):
        result.rows.append(theory_instance(trial, seed))
    logger.info(f"theory suite: {trials} instances, passed={result.passed}")
    return result
