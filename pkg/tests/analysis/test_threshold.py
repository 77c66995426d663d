"""
임계 영역 / 자원 추정 테스트
"""

import math

import numpy as np
import pytest

from ftsim.analysis.fixtures import golay_memory_e_poly
from ftsim.analysis.schemas import GridSpec, IterateConfig, IterationStatus, PolyRole, RateSample
from ftsim.analysis.services import (
    classify_points,
    fit_poly,
    iterate_threshold,
    max_reliable_length,
    resource_estimate,
    resource_table,
    threshold_bands,
    threshold_boundary,
)

SMALL_BOX = [(0.0, 0.0), (1e-3, 0.0), (0.0, 1e-3), (1e-3, 1e-3)]


class TestIterateThreshold:
    """iterate_threshold 테스트"""

    def test_origin_converges(self, identity_f, compatible_g):
        """잡음 없는 점은 즉시 수렴"""
        assert iterate_threshold(identity_f, compatible_g, 0.0, 0.0) is IterationStatus.CONVERGED

    def test_large_noise_diverges(self, identity_f, compatible_g):
        """발산 한계를 넘으면 발산"""
        assert iterate_threshold(identity_f, compatible_g, 0.2, 0.2) is IterationStatus.DIVERGED

    def test_fixture_value(self):
        """내장 Golay E 다항식 값"""
        assert golay_memory_e_poly()(1e-4, 1e-3) == pytest.approx(3.301187e-4, rel=1e-3)
        assert golay_memory_e_poly()(0.0, 1e-3) == 0.0

    def test_fixture_converges(self, compatible_g, make_poly):
        """내장 E와 Γ = 20γ는 (1e-4, 1e-3)에서 수렴"""
        # Given
        f = (golay_memory_e_poly(), make_poly(PolyRole.GAMMA, (0, 1, 20.0)))

        # When
        status = iterate_threshold(f, compatible_g, 1e-4, 1e-3)

        # Then
        assert status is IterationStatus.CONVERGED

    def test_out_of_domain_start_diverges(self, identity_f, halving_g):
        """적합 영역 밖에서 시작하면 발산으로 판정"""
        # Given
        g = (halving_g[0].model_copy(update={"domain": SMALL_BOX}), halving_g[1])

        # Then
        assert iterate_threshold(identity_f, g, 0.01, 0.01) is IterationStatus.DIVERGED
        assert iterate_threshold(identity_f, g, 5e-4, 5e-4) is IterationStatus.CONVERGED

    def test_iteration_cap_is_undecided(self, identity_f, halving_g):
        """반복 한도 안에 판정되지 않으면 미결정"""
        config = IterateConfig(max_k=1)
        status = iterate_threshold(identity_f, halving_g, 0.1, 0.1, config)
        assert status is IterationStatus.UNDECIDED

    def test_negative_values_clamped(self, halving_g, make_poly):
        """음수 다항식 값은 0으로 자름"""
        f = (make_poly(PolyRole.E, (1, 0, -1.0)), make_poly(PolyRole.GAMMA, (0, 1, 1.0)))
        assert iterate_threshold(f, halving_g, 0.1, 0.0) is IterationStatus.CONVERGED

    def test_vectorized_shape(self, identity_f, compatible_g):
        """입력 배열 모양 유지"""
        u = np.array([[0.0, 0.2], [0.0, 1e-4]])
        v = np.array([[0.0, 0.2], [1e-3, 1e-3]])
        codes = classify_points(identity_f, compatible_g, u, v, IterateConfig())
        assert codes.shape == (2, 2)
        assert codes[0, 0] == 1 and codes[0, 1] == 2


class TestThresholdBoundary:
    """threshold_boundary 테스트"""

    def test_all_converged(self, identity_f, halving_g):
        """모두 수렴하면 경계는 v 최댓값"""
        # Given
        grid = GridSpec(u_max=0.1, u_steps=5, v_max=0.1, v_steps=5)

        # When
        region = threshold_boundary(identity_f, halving_g, grid)

        # Then
        assert region.converged_mask().all()
        assert region.boundary == [(u, 0.1) for u in np.linspace(0.0, 0.1, 5)]

    def test_mixed_region(self, identity_f, compatible_g):
        """원점 근처 수렴, 먼 점 발산"""
        grid = GridSpec(u_max=0.2, u_steps=5, v_max=0.2, v_steps=5)
        region = threshold_boundary(identity_f, compatible_g, grid)
        assert region.status[0][0] is IterationStatus.CONVERGED
        assert region.status[-1][-1] is IterationStatus.DIVERGED
        assert region.boundary[0][0] == 0.0

    def test_nested_by_tolerance(self, identity_f, compatible_g):
        """작은 수렴 허용치의 수렴 영역은 큰 허용치 영역에 포함"""
        # Given
        grid = GridSpec(u_max=0.01, u_steps=6, v_max=0.05, v_steps=6)

        # When
        strict = threshold_boundary(identity_f, compatible_g, grid, IterateConfig(conv_tol=1e-15))
        loose = threshold_boundary(identity_f, compatible_g, grid, IterateConfig(conv_tol=1e-6))

        # Then
        assert not (strict.converged_mask() & ~loose.converged_mask()).any()

    def test_bands_are_nested(self):
        """안쪽 띠는 바깥쪽 띠 안에 있음"""
        # Given
        axis = np.linspace(0.0, 0.05, 6)
        points = [(float(a), float(b)) for a in axis for b in axis]

        def fit(role, monomials, fn):
            samples = [RateSample(u=a, v=b, value=fn(a, b), sigma=1e-9) for a, b in points]
            return fit_poly(samples, monomials, role)

        f = (
            fit(PolyRole.E, [(1, 0)], lambda a, b: a),
            fit(PolyRole.GAMMA, [(0, 1)], lambda a, b: b),
        )
        g = (
            fit(PolyRole.P, [(2, 0), (1, 1)], lambda a, b: 1000 * a * a + 10 * a * b),
            fit(PolyRole.Q, [(0, 2), (1, 0)], lambda a, b: 5 * b * b + 100 * a),
        )
        grid = GridSpec(u_max=0.01, u_steps=5, v_max=0.05, v_steps=5)

        # When
        inner, outer = threshold_bands(f, g, grid, seed=1, count=3)

        # Then
        outer_edge = dict(outer)
        for u, v in inner:
            assert u in outer_edge
            assert v <= outer_edge[u]


class TestResources:
    """자원 추정 테스트"""

    def test_max_reliable_length(self):
        """최대 신뢰 연산 수"""
        assert max_reliable_length(0.01016) == pytest.approx(68, abs=1)
        assert max_reliable_length(0.5) == pytest.approx(1.0)
        assert max_reliable_length(0.0) == math.inf
        assert max_reliable_length(1.0) == 0.0

    def test_resource_estimate(self):
        """레벨별 배율의 곱"""
        assert resource_estimate(1, [], 5.0) == 5.0
        assert resource_estimate(3, [10.0, 20.0], 5.0) == pytest.approx(1000.0)

    def test_resource_table(self, halving_g):
        """레벨이 오를수록 붕괴율 감소, 비용 증가"""
        # When
        rows = resource_table(3, 0.01, 0.02, halving_g, 100.0, [10.0, 10.0])

        # Then
        assert [r.level for r in rows] == [1, 2, 3]
        assert [r.p for r in rows] == pytest.approx([0.01, 0.005, 0.0025])
        assert [r.bell_pairs for r in rows] == pytest.approx([100.0, 1000.0, 10000.0])
        assert rows[0].max_length < rows[1].max_length < rows[2].max_length
