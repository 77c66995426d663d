"""
Analysis 모듈 예외
"""

from collections.abc import Sequence

from ftsim.core.exceptions import ERROR_BASE_URI, EXIT_INPUT, EXIT_NUMERIC, ProblemDetail


class EmptyTallyError(ProblemDetail):
    """붕괴율 분모가 0인 집계"""

    def __init__(self, n_unlocated: int, n_located: int, n_none: int) -> None:
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/analysis/empty-tally",
            title="Empty Tally",
            status=EXIT_NUMERIC,
            detail="집계된 시행이 없어 붕괴율을 추정할 수 없습니다 (N_U + N_N = 0)",
            extensions={
                "code": "EMPTY_TALLY",
                "n_unlocated": n_unlocated,
                "n_located": n_located,
                "n_none": n_none,
            },
        )


class RankDeficientFitError(ProblemDetail):
    """설계 행렬의 계수 부족"""

    def __init__(self, dependent: Sequence[tuple[int, int]], rank: int) -> None:
        names = [f"u^{i} v^{j}" for i, j in dependent]
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/analysis/rank-deficient",
            title="Rank Deficient Fit",
            status=EXIT_NUMERIC,
            detail=f"표본점으로 결정되지 않는 단항식이 있습니다 (계수 {rank}): {', '.join(names)}",
            extensions={
                "code": "RANK_DEFICIENT_FIT",
                "rank": rank,
                "dependent": [list(m) for m in dependent],
            },
        )


class InsufficientPointsError(ProblemDetail):
    """표본점 수가 항 수보다 적음"""

    def __init__(self, points: int, terms: int) -> None:
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/analysis/insufficient-points",
            title="Insufficient Points",
            status=EXIT_NUMERIC,
            detail=f"표본점 {points}개로 {terms}개 항을 적합할 수 없습니다",
            extensions={"code": "INSUFFICIENT_POINTS", "points": points, "terms": terms},
        )


class PolynomialRoleError(ProblemDetail):
    """다항식 역할이 기대와 다름"""

    def __init__(self, expected: str, actual: str, source: str | None = None) -> None:
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/analysis/polynomial-role",
            title="Polynomial Role Mismatch",
            status=EXIT_INPUT,
            detail=f"{expected} 다항식이 필요하지만 {actual} 다항식이 주어졌습니다",
            instance=source,
            extensions={"code": "POLYNOMIAL_ROLE", "expected": expected, "actual": actual},
        )
