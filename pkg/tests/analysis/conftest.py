"""
Analysis 테스트 픽스처

반복 테스트용 간단한 다항식 쌍을 제공합니다.
"""

import pytest

from ftsim.analysis.schemas import Poly2, PolyRole, Term


def poly(role: PolyRole, *terms: tuple[int, int, float]) -> Poly2:
    return Poly2(role=role, terms=[Term(i=i, j=j, coeff=c) for i, j, c in terms])


@pytest.fixture
def make_poly():
    """(i, j, 계수) 항으로 다항식 생성"""
    return poly


@pytest.fixture
def identity_f() -> tuple[Poly2, Poly2]:
    """E = ε, Γ = γ"""
    return poly(PolyRole.E, (1, 0, 1.0)), poly(PolyRole.GAMMA, (0, 1, 1.0))


@pytest.fixture
def compatible_g() -> tuple[Poly2, Poly2]:
    """P = 1000 p^2 + 10 pq, Q = 5 q^2 + 100 p (작은 점에서 수렴)"""
    return (
        poly(PolyRole.P, (2, 0, 1000.0), (1, 1, 10.0)),
        poly(PolyRole.Q, (0, 2, 5.0), (1, 0, 100.0)),
    )


@pytest.fixture
def halving_g() -> tuple[Poly2, Poly2]:
    """P = p/2, Q = q/2"""
    return poly(PolyRole.P, (1, 0, 0.5)), poly(PolyRole.Q, (0, 1, 0.5))
