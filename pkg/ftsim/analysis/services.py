"""
Analysis 모듈 서비스

붕괴율 추정, 다항식 적합, 연접 사상 반복에 의한 임계 영역 분류,
최대 신뢰 계산 길이와 자원 사용량 추정을 담당합니다.
"""

import logging
import math
from collections.abc import Callable, Sequence
from pathlib import Path

import numpy as np
import numpy.typing as npt
from scipy.spatial import Delaunay, QhullError

from ftsim.analysis.exceptions import EmptyTallyError, PolynomialRoleError
from ftsim.analysis.fitting import Monomial, design_matrix, weighted_lstsq
from ftsim.analysis.schemas import (
    CrashTally,
    FitResult,
    GridSpec,
    IterateConfig,
    IterationStatus,
    Poly2,
    PolyRole,
    RateEstimate,
    RateSample,
    ResourceRow,
    Term,
    ThresholdRegion,
)
from ftsim.core.config import settings
from ftsim.core.exceptions import InputFileError
from ftsim.infra.storage import read_csv, read_json
from shared.utils.seeding import trial_rng

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]
PolyPair = tuple[Poly2, Poly2]

# 역할별 기본 차수 (코드 이름이 없으면 steane7 값)
DEFAULT_ORDERS: dict[PolyRole, dict[str, int]] = {
    PolyRole.E: {"steane7": 5, "golay23": 5},
    PolyRole.GAMMA: {"steane7": 5, "golay23": 6},
    PolyRole.P: {"steane7": 6, "golay23": 6},
    PolyRole.Q: {"steane7": 5, "golay23": 8},
}

# 상태 코드 (벡터화 반복용)
_UNDECIDED, _CONVERGED, _DIVERGED = 0, 1, 2
_STATUS = {
    _UNDECIDED: IterationStatus.UNDECIDED,
    _CONVERGED: IterationStatus.CONVERGED,
    _DIVERGED: IterationStatus.DIVERGED,
}


# ==========================================================================
# 붕괴율 추정
# ==========================================================================


def estimate_rates(tally: CrashTally) -> RateEstimate:
    """
    집계에서 비위치/위치 붕괴율 추정

    비위치율은 위치 붕괴가 없는 시행에 대한 조건부 비율입니다.

    Raises:
        EmptyTallyError: N_U + N_N = 0
    """
    unlocated_den = tally.n_unlocated + tally.n_none
    if unlocated_den == 0:
        raise EmptyTallyError(tally.n_unlocated, tally.n_located, tally.n_none)
    located_den = unlocated_den + tally.n_located
    return RateEstimate(
        unlocated=tally.n_unlocated / unlocated_den,
        sigma_unlocated=math.sqrt(tally.n_unlocated) / unlocated_den,
        located=tally.n_located / located_den,
        sigma_located=math.sqrt(tally.n_located) / located_den,
    )


# ==========================================================================
# 다항식 적합
# ==========================================================================


def term_sets(
    role: PolyRole,
    code_name: str = "steane7",
    order: int | None = None,
    drop_orders: int = 0,
) -> list[Monomial]:
    """
    역할별 단항식 집합

    E, P는 첫 변수 차수 0인 항을, Q는 둘째 변수 차수 0인 항을 제외합니다.
    drop_orders가 양수면 전체 차수가 그보다 낮은 항도 제외합니다.
    """
    defaults = DEFAULT_ORDERS[role]
    top = order if order is not None else defaults.get(code_name, defaults["steane7"])
    monomials = []
    for total in range(drop_orders, top + 1):
        for i in range(total, -1, -1):
            j = total - i
            if role in (PolyRole.E, PolyRole.P) and i == 0:
                continue
            if role is PolyRole.Q and j == 0:
                continue
            monomials.append((i, j))
    return monomials


def read_rate_samples(path: Path, unlocated: bool) -> list[RateSample]:
    """
    붕괴율 CSV를 적합 입력으로 읽기

    열 순서는 u, v, 비위치율, σ, 위치율, σ입니다 (열 이름은 무시).
    σ가 0 이하인 점(붕괴가 관측되지 않은 점)은 데이터의 가장 작은 양의 σ로 대체합니다.

    Raises:
        InputFileError: 열이 6개 미만이거나 숫자가 아닌 경우
    """
    rows = read_csv(path)
    offset = 2 if unlocated else 4
    samples: list[RateSample] = []
    for row in rows:
        cells = list(row.values())
        if len(cells) < 6:
            raise InputFileError(str(path), f"붕괴율 CSV는 최소 6열이 필요합니다: {path}")
        try:
            samples.append(
                RateSample(
                    u=float(cells[0]),
                    v=float(cells[1]),
                    value=float(cells[offset]),
                    sigma=float(cells[offset + 1]),
                )
            )
        except (TypeError, ValueError) as e:
            raise InputFileError(str(path), f"숫자가 아닌 값이 있습니다: {cells}") from e

    positive = [s.sigma for s in samples if s.sigma > 0.0]
    floor = min(positive) if positive else 1.0
    replaced = 0
    for sample in samples:
        if sample.sigma <= 0.0:
            sample.sigma = floor
            replaced += 1
    if replaced:
        logger.warning("σ가 0인 점을 대체", extra={"path": str(path), "points": replaced, "sigma": floor})
    return samples


def fit_poly(
    samples: Sequence[RateSample],
    monomials: Sequence[Monomial],
    role: PolyRole,
) -> FitResult:
    """
    가중 최소제곱 다항식 적합

    Raises:
        InsufficientPointsError: 점 수 < 항 수
        RankDeficientFitError: 결정되지 않는 단항식이 있는 경우
    """
    assert all(s.sigma > 0.0 for s in samples), "σ는 양수여야 합니다"
    u = np.array([s.u for s in samples], dtype=np.float64)
    v = np.array([s.v for s in samples], dtype=np.float64)
    values = np.array([s.value for s in samples], dtype=np.float64)
    sigma = np.array([s.sigma for s in samples], dtype=np.float64)

    coeffs, stderr = weighted_lstsq(design_matrix(u, v, monomials), values, sigma, monomials)
    poly = Poly2(
        role=role,
        terms=[
            Term(i=i, j=j, coeff=float(c), stderr=float(e))
            for (i, j), c, e in zip(monomials, coeffs, stderr, strict=True)
        ],
        domain=[(float(a), float(b)) for a, b in zip(u, v, strict=True)],
    )
    per_point = ((poly.evaluate(u, v) - values) / sigma) ** 2
    result = FitResult(
        poly=poly,
        residual=float(per_point.sum()),
        dof=len(samples) - len(monomials),
        residual_per_point=[float(x) for x in per_point],
        samples=list(samples),
    )
    logger.info(
        "다항식 적합 완료",
        extra={
            "role": str(role),
            "terms": len(monomials),
            "points": len(samples),
            "reduced": result.reduced,
        },
    )
    return result


def resample_fit(
    fit: FitResult,
    rng: np.random.Generator,
) -> FitResult:
    """입력 값에 N(0, σ) 잡음을 더해 같은 항 집합으로 재적합"""
    perturbed = [
        RateSample(u=s.u, v=s.v, value=s.value + float(rng.normal(0.0, s.sigma)), sigma=s.sigma)
        for s in fit.samples
    ]
    return fit_poly(perturbed, fit.poly.monomials, fit.poly.role)


def load_fit(path: Path, role: PolyRole) -> FitResult:
    """
    fit 출력 JSON 읽기

    Raises:
        InputFileError: 파일을 읽을 수 없거나 형식이 맞지 않는 경우
        PolynomialRoleError: 역할이 다른 경우
    """
    document = read_json(path)
    try:
        fit = FitResult.model_validate(document)
    except ValueError as e:
        raise InputFileError(str(path), f"다항식 JSON 형식이 아닙니다: {path}") from e
    if fit.poly.role is not role:
        raise PolynomialRoleError(str(role), str(fit.poly.role), str(path))
    return fit


# ==========================================================================
# 임계 영역
# ==========================================================================


def domain_test(poly: Poly2) -> Callable[[FloatArray, FloatArray], npt.NDArray[np.bool_]]:
    """
    적합 표본점의 볼록 껍질 판정 함수

    점이 3개 미만이거나 한 직선 위에 있으면 경계 상자로 대신합니다.
    표본점이 없으면 모든 점을 영역 안으로 봅니다.
    """
    points = np.array(poly.domain, dtype=np.float64).reshape(-1, 2)
    if len(points) == 0:
        return lambda u, v: np.ones(np.shape(u), dtype=np.bool_)
    low, high = points.min(axis=0), points.max(axis=0)

    def in_box(u: FloatArray, v: FloatArray) -> npt.NDArray[np.bool_]:
        inside = (u >= low[0]) & (u <= high[0]) & (v >= low[1]) & (v <= high[1])
        return inside  # type: ignore[no-any-return]

    if len(points) < 3:
        return in_box
    try:
        hull = Delaunay(points)
    except QhullError:
        return in_box

    def in_hull(u: FloatArray, v: FloatArray) -> npt.NDArray[np.bool_]:
        query = np.stack([np.ravel(u), np.ravel(v)], axis=-1)
        return (hull.find_simplex(query) >= 0).reshape(np.shape(u))  # type: ignore[no-any-return]

    return in_hull


def _bounds(poly: Poly2) -> tuple[float, float]:
    if not poly.domain:
        return math.inf, math.inf
    points = np.array(poly.domain, dtype=np.float64)
    return float(points[:, 0].max()), float(points[:, 1].max())


def classify_points(
    f: PolyPair,
    g: PolyPair,
    u: npt.ArrayLike,
    v: npt.ArrayLike,
    config: IterateConfig,
) -> npt.NDArray[np.int8]:
    """
    (g^(k-1) ∘ f) 반복으로 점마다 상태 코드 계산 (벡터화)

    음수 다항식 값은 0으로 자릅니다.
    g의 적합 영역을 벗어나며 증가하면 발산, 감소하며 벗어나면 계속 반복합니다.
    """
    uu = np.atleast_1d(np.asarray(u, dtype=np.float64))
    vv = np.atleast_1d(np.asarray(v, dtype=np.float64))
    inside = domain_test(g[0])
    p_max, q_max = _bounds(g[0])
    status = np.full(uu.shape, _UNDECIDED, dtype=np.int8)

    with np.errstate(over="ignore", invalid="ignore"):
        p = np.maximum(f[0].evaluate(uu, vv), 0.0)
        q = np.maximum(f[1].evaluate(uu, vv), 0.0)
        converged = (p < config.conv_tol) & (q < config.conv_tol)
        escaped = ~inside(p, q) & ((p > p_max) | (q > q_max))
        diverged = ~converged & ((p > config.div_bound) | (q > config.div_bound) | escaped)
        status[converged] = _CONVERGED
        status[diverged] = _DIVERGED

        for _ in range(config.max_k):
            active = status == _UNDECIDED
            if not active.any():
                break
            p_next = np.maximum(g[0].evaluate(p, q), 0.0)
            q_next = np.maximum(g[1].evaluate(p, q), 0.0)
            converged = active & (p_next < config.conv_tol) & (q_next < config.conv_tol)
            escaped = ~inside(p_next, q_next) & ((p_next > p) | (q_next > q))
            diverged = (
                active
                & ~converged
                & (
                    (p_next > config.div_bound)
                    | (q_next > config.div_bound)
                    | escaped
                    | ~np.isfinite(p_next)
                )
            )
            status[converged] = _CONVERGED
            status[diverged] = _DIVERGED
            p = np.where(active, p_next, p)
            q = np.where(active, q_next, q)
    return status


def iterate_threshold(
    f: PolyPair,
    g: PolyPair,
    epsilon: float,
    gamma: float,
    config: IterateConfig | None = None,
) -> IterationStatus:
    """한 점의 수렴/발산/미결정 판정"""
    codes = classify_points(f, g, [epsilon], [gamma], config or IterateConfig())
    return _STATUS[int(codes[0])]


def frontier(grid: GridSpec, converged: npt.NDArray[np.bool_]) -> list[tuple[float, float]]:
    """
    수렴 영역 경계선

    u 열마다 v 최솟값부터 이어지는 수렴 구간의 끝점을 잇습니다.
    시작점부터 수렴하지 않는 열은 건너뜁니다.
    """
    us, vs = grid.axes()
    boundary = []
    for iu, column in enumerate(converged):
        run = len(column) if column.all() else int(np.argmin(column))
        if run > 0:
            boundary.append((float(us[iu]), float(vs[run - 1])))
    return boundary


def _classify_grid(
    f: PolyPair, g: PolyPair, grid: GridSpec, config: IterateConfig
) -> npt.NDArray[np.int8]:
    us, vs = grid.axes()
    uu, vv = np.meshgrid(us, vs, indexing="ij")
    return classify_points(f, g, uu, vv, config)


def threshold_boundary(
    f: PolyPair,
    g: PolyPair,
    grid: GridSpec,
    config: IterateConfig | None = None,
) -> ThresholdRegion:
    """격자점 분류와 경계선 추출"""
    codes = _classify_grid(f, g, grid, config or IterateConfig())
    status = [[_STATUS[int(c)] for c in row] for row in codes]
    region = ThresholdRegion(grid=grid, status=status, boundary=frontier(grid, codes == _CONVERGED))
    logger.info(
        "임계 영역 분류 완료",
        extra={
            "converged": int(np.count_nonzero(codes == _CONVERGED)),
            "diverged": int(np.count_nonzero(codes == _DIVERGED)),
            "undecided": int(np.count_nonzero(codes == _UNDECIDED)),
        },
    )
    return region


def threshold_bands(
    f: tuple[FitResult, FitResult],
    g: tuple[FitResult, FitResult],
    grid: GridSpec,
    config: IterateConfig | None = None,
    seed: int = 0,
    count: int | None = None,
) -> tuple[list[tuple[float, float]], list[tuple[float, float]]]:
    """
    재표본 적합 오차 띠

    네 다항식을 count번 재적합해 격자를 분류하고,
    모든 재표본에서 수렴한 영역(안쪽)과 하나라도 수렴한 영역(바깥쪽)의 경계를 돌려줍니다.
    """
    rounds = settings.RESAMPLE_COUNT if count is None else count
    iterate = config or IterateConfig()
    inner: npt.NDArray[np.bool_] | None = None
    outer: npt.NDArray[np.bool_] | None = None
    for k in range(rounds):
        rng = trial_rng(seed, 0, k)
        polys = [resample_fit(fit, rng).poly for fit in (*f, *g)]
        codes = _classify_grid((polys[0], polys[1]), (polys[2], polys[3]), grid, iterate)
        converged = codes == _CONVERGED
        inner = converged if inner is None else inner & converged
        outer = converged if outer is None else outer | converged
        logger.debug("재표본 분류", extra={"resample": k, "converged": int(converged.sum())})
    if inner is None or outer is None:
        return [], []
    return frontier(grid, inner), frontier(grid, outer)


# ==========================================================================
# 자원 사용량
# ==========================================================================


def max_reliable_length(p_c: float) -> float:
    """
    모든 연산이 확률 1/2 이상으로 붕괴하지 않는 최대 연산 수

    p_c <= 0이면 math.inf를 돌려줍니다.
    """
    if p_c <= 0.0:
        return math.inf
    if p_c >= 1.0:
        return 0.0
    return math.log(0.5) / math.log1p(-p_c)


def resource_estimate(level: int, factors: Sequence[float], level1_cost: float) -> float:
    """레벨 1 비용에 레벨 2..L 배율을 곱한 연산당 Bell 쌍 수"""
    assert level >= 1 and len(factors) >= level - 1
    return level1_cost * math.prod(factors[: level - 1])


def resource_table(
    levels: int,
    p1: float,
    q1: float,
    g: PolyPair,
    level1_cost: float,
    factors: Sequence[float],
) -> list[ResourceRow]:
    """레벨 1 붕괴율에서 g를 반복해 레벨별 (p, q, 최대 길이, Bell 쌍) 계산"""
    rows = []
    p, q = p1, q1
    for level in range(1, levels + 1):
        rows.append(
            ResourceRow(
                level=level,
                p=p,
                q=q,
                max_length=max_reliable_length(p + q),
                bell_pairs=resource_estimate(level, factors, level1_cost),
            )
        )
        p, q = max(g[0](p, q), 0.0), max(g[1](p, q), 0.0)
    return rows
