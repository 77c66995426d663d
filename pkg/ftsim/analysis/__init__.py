"""
Analysis 모듈

붕괴율 추정, 다항식 적합, 임계 영역 분류, 자원 사용량 추정입니다.
"""

from ftsim.analysis.exceptions import (
    EmptyTallyError,
    InsufficientPointsError,
    PolynomialRoleError,
    RankDeficientFitError,
)
from ftsim.analysis.fitting import design_matrix, weighted_lstsq
from ftsim.analysis.fixtures import golay_memory_e_poly
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
    TrialKind,
    TrialOutcome,
)
from ftsim.analysis.services import (
    classify_points,
    estimate_rates,
    fit_poly,
    iterate_threshold,
    load_fit,
    max_reliable_length,
    read_rate_samples,
    resample_fit,
    resource_estimate,
    resource_table,
    term_sets,
    threshold_bands,
    threshold_boundary,
)

__all__ = [
    # Schemas
    "TrialKind",
    "TrialOutcome",
    "CrashTally",
    "RateEstimate",
    "PolyRole",
    "Term",
    "Poly2",
    "RateSample",
    "FitResult",
    "IterationStatus",
    "GridSpec",
    "IterateConfig",
    "ThresholdRegion",
    "ResourceRow",
    # Fitting
    "design_matrix",
    "weighted_lstsq",
    # Services
    "estimate_rates",
    "term_sets",
    "read_rate_samples",
    "fit_poly",
    "resample_fit",
    "load_fit",
    "classify_points",
    "iterate_threshold",
    "threshold_boundary",
    "threshold_bands",
    "max_reliable_length",
    "resource_estimate",
    "resource_table",
    # Fixtures
    "golay_memory_e_poly",
    # Exceptions
    "EmptyTallyError",
    "RankDeficientFitError",
    "InsufficientPointsError",
    "PolynomialRoleError",
]
