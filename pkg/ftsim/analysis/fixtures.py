"""
패키지 내장 다항식

Golay 코드, 메모리 잡음 적용 조건에서 적합한 레벨 1 비위치 붕괴율 E(ε, γ)입니다.
임계 영역 회귀 테스트와 CLI 예제 입력으로 사용합니다.
"""

from ftsim.analysis.schemas import Poly2, PolyRole, Term

# (ε 차수, γ 차수) → 계수
GOLAY_MEMORY_E_COEFFS: dict[tuple[int, int], float] = {
    (1, 0): 0.003357,
    (1, 1): 2209.0,
    (1, 2): -3.630e6,
    (1, 3): 1.868e9,
    (1, 4): -8.421e10,
    (2, 0): 2009.0,
    (2, 1): -2.133e7,
    (2, 2): 2.979e10,
    (2, 3): -2.573e12,
    (3, 0): -3.578e7,
    (3, 1): 2.348e11,
    (3, 2): -2.9574e13,
    (4, 0): 7.098e11,
    (4, 1): -2.341e14,
    (5, 0): -2.472e14,
}


def golay_memory_e_poly() -> Poly2:
    """적합 영역 정보가 없는 E 다항식 (반복 시 모든 점을 영역 안으로 취급)"""
    return Poly2(
        role=PolyRole.E,
        terms=[Term(i=i, j=j, coeff=c) for (i, j), c in GOLAY_MEMORY_E_COEFFS.items()],
    )
