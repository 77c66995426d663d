"""
Analysis 모듈 스키마

시행 결과, 붕괴 집계, 붕괴율 추정, 2변수 다항식, 적합/임계 영역 결과와
fit / threshold / resources 실행 설정을 정의합니다.
"""

from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ftsim.core.config import settings
from ftsim.core.schemas import RunConfig

# ==========================================================================
# 시행 결과
# ==========================================================================


class TrialKind(StrEnum):
    """시행 결과 종류"""

    NONE = "none"
    UNLOCATED_CRASH = "unlocated_crash"
    LOCATED_CRASH = "located_crash"
    DISCARDED = "discarded"  # 예열 라운드 붕괴


@dataclass(frozen=True)
class TrialOutcome:
    """
    한 시행(또는 라운드)의 결과

    위치 붕괴가 비위치 붕괴보다 우선합니다.
    """

    kind: TrialKind
    x_located_crash: bool = False
    z_located_crash: bool = False
    logical: str = "I"  # 비위치 붕괴의 논리 클래스

    @property
    def crashed(self) -> bool:
        return self.kind in (TrialKind.UNLOCATED_CRASH, TrialKind.LOCATED_CRASH)


# ==========================================================================
# 집계 / 추정
# ==========================================================================


class CrashTally(BaseModel):
    """
    시행 결과 집계

    예열 라운드가 붕괴하지 않은 시행만 n_unlocated/n_located/n_none에 들어갑니다.
    """

    n_unlocated: int = Field(default=0, ge=0)
    n_located: int = Field(default=0, ge=0)
    n_none: int = Field(default=0, ge=0)
    n_discarded: int = Field(default=0, ge=0)

    @property
    def total(self) -> int:
        return self.n_unlocated + self.n_located + self.n_none

    def record(self, outcome: TrialOutcome) -> None:
        if outcome.kind is TrialKind.UNLOCATED_CRASH:
            self.n_unlocated += 1
        elif outcome.kind is TrialKind.LOCATED_CRASH:
            self.n_located += 1
        elif outcome.kind is TrialKind.DISCARDED:
            self.n_discarded += 1
        else:
            self.n_none += 1

    def merge(self, other: "CrashTally") -> "CrashTally":
        """결합 법칙을 만족하는 병합"""
        return CrashTally(
            n_unlocated=self.n_unlocated + other.n_unlocated,
            n_located=self.n_located + other.n_located,
            n_none=self.n_none + other.n_none,
            n_discarded=self.n_discarded + other.n_discarded,
        )


class RateEstimate(BaseModel):
    """비위치/위치 붕괴율과 표준오차"""

    unlocated: float
    sigma_unlocated: float
    located: float
    sigma_located: float


# ==========================================================================
# 다항식
# ==========================================================================


class PolyRole(StrEnum):
    """적합 다항식의 역할 (레벨 1: E, Γ / 레벨 2 이상: P, Q)"""

    E = "E"
    GAMMA = "Gamma"
    P = "P"
    Q = "Q"


class Term(BaseModel):
    """단항식 coeff * u^i * v^j"""

    i: int = Field(..., ge=0)
    j: int = Field(..., ge=0)
    coeff: float = 0.0
    stderr: float | None = None


class Poly2(BaseModel):
    """
    2변수 다항식

    domain은 적합에 쓰인 표본점으로, 반복 시 적합 영역 판정에 쓰입니다.
    """

    role: PolyRole
    terms: list[Term]
    domain: list[tuple[float, float]] = Field(default_factory=list)

    def evaluate(self, u: npt.ArrayLike, v: npt.ArrayLike) -> npt.NDArray[np.float64]:
        uu = np.asarray(u, dtype=np.float64)
        vv = np.asarray(v, dtype=np.float64)
        total = np.zeros(np.broadcast(uu, vv).shape, dtype=np.float64)
        for term in self.terms:
            total = total + term.coeff * uu**term.i * vv**term.j
        return total

    def __call__(self, u: float, v: float) -> float:
        return float(self.evaluate(u, v))

    @property
    def monomials(self) -> list[tuple[int, int]]:
        return [(t.i, t.j) for t in self.terms]


class RateSample(BaseModel):
    """적합 입력 점 (u, v, 값, σ)"""

    u: float
    v: float
    value: float
    sigma: float


class FitResult(BaseModel):
    """다항식 적합 결과 (재표본 적합을 위해 입력 점을 함께 보관)"""

    poly: Poly2
    residual: float  # R = Σ (poly - value)^2 / σ^2
    dof: int  # D = 점 수 - 항 수
    residual_per_point: list[float]
    samples: list[RateSample] = Field(default_factory=list)

    @property
    def reduced(self) -> float:
        """R/D (1에 가까우면 좋은 적합)"""
        return self.residual / self.dof if self.dof > 0 else float("nan")


# ==========================================================================
# 임계 영역
# ==========================================================================


class IterationStatus(StrEnum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    UNDECIDED = "undecided"


class GridSpec(BaseModel):
    """(u, v) 분류 격자"""

    model_config = ConfigDict(frozen=True)

    u_min: float = Field(default=0.0, ge=0.0)
    u_max: float = Field(..., gt=0.0)
    u_steps: int = Field(default=41, ge=2)
    v_min: float = Field(default=0.0, ge=0.0)
    v_max: float = Field(..., gt=0.0)
    v_steps: int = Field(default=41, ge=2)

    @model_validator(mode="after")
    def validate_ranges(self) -> "GridSpec":
        if self.u_min >= self.u_max or self.v_min >= self.v_max:
            raise ValueError("격자 최솟값은 최댓값보다 작아야 합니다")
        return self

    def axes(self) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        return (
            np.linspace(self.u_min, self.u_max, self.u_steps),
            np.linspace(self.v_min, self.v_max, self.v_steps),
        )


class IterateConfig(BaseModel):
    """연접 사상 반복 설정"""

    model_config = ConfigDict(frozen=True)

    max_k: int = Field(default=settings.MAX_K, ge=1)
    conv_tol: float = Field(default=settings.CONV_TOL, gt=0.0)
    div_bound: float = Field(default=settings.DIV_BOUND, gt=0.0, le=1.0)


class ThresholdRegion(BaseModel):
    """격자점별 수렴 상태와 경계선"""

    grid: GridSpec
    status: list[list[IterationStatus]]  # status[iu][iv]
    boundary: list[tuple[float, float]]
    inner: list[tuple[float, float]] | None = None  # 재표본 중 가장 좁은 경계
    outer: list[tuple[float, float]] | None = None  # 재표본 중 가장 넓은 경계

    def converged_mask(self) -> npt.NDArray[np.bool_]:
        return np.array(
            [[s is IterationStatus.CONVERGED for s in row] for row in self.status], dtype=np.bool_
        )


class ResourceRow(BaseModel):
    """연접 레벨별 자원 표 한 행"""

    level: int
    p: float
    q: float
    max_length: float
    bell_pairs: float


# ==========================================================================
# 실행 설정
# ==========================================================================


class FitConfig(RunConfig):
    """fit 실행 설정"""

    input: Path = Field(..., description="붕괴율 CSV 경로 (u,v,unlocated,sigma,located,sigma)")
    level: Literal["cluster", "det"] = Field(default="cluster", description="E/Γ 또는 P/Q 항 집합")
    unlocated_order: int | None = Field(default=None, ge=1, description="비위치 다항식 차수 재정의")
    located_order: int | None = Field(default=None, ge=1, description="위치 다항식 차수 재정의")
    drop_orders: int = Field(default=0, ge=0, description="이 차수 미만의 단항식 제외")


class ThresholdConfig(RunConfig):
    """threshold 실행 설정"""

    f_unlocated: Path
    f_located: Path
    g_unlocated: Path
    g_located: Path
    grid: GridSpec
    iterate: IterateConfig = Field(default_factory=IterateConfig)
    bands: bool = Field(default=False, description="재표본 오차 띠 계산 여부")


class ResourcesConfig(RunConfig):
    """resources 실행 설정"""

    levels: int = Field(default=4, ge=1)
    p1: float = Field(..., ge=0.0, le=1.0, description="레벨 1 비위치 붕괴율 (E)")
    q1: float = Field(..., ge=0.0, le=1.0, description="레벨 1 위치 붕괴율 (Γ)")
    g_unlocated: Path
    g_located: Path
    level1_cost: float = Field(..., gt=0.0, description="레벨 1 연산당 Bell 쌍 수")
    factors: list[float] = Field(default_factory=list, description="레벨 2.. 배율")

    @model_validator(mode="after")
    def validate_factors(self) -> "ResourcesConfig":
        if len(self.factors) < self.levels - 1:
            raise ValueError(f"factors는 최소 {self.levels - 1}개가 필요합니다")
        return self
