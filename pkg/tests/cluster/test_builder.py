"""
마이크로클러스터 / 배치 테스트
"""

import numpy as np
import pytest

from ftsim.cluster.builder import (
    ConstructionLedger,
    build_microcluster,
    expected_microcluster_cost,
    microcluster_steps,
    realize,
    sampled_microcluster_cost,
    stage_schedule,
)
from ftsim.cluster.layout import ATTACH, ancilla_layout, telemodule_layout
from ftsim.codes.services import standard_form
from ftsim.pauli.models import ClusterGraph


class TestMicroclusterCost:
    """마이크로클러스터 비용 모델 테스트"""

    @pytest.mark.parametrize(("k", "steps"), [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (8, 4)])
    def test_steps(self, k: int, steps: int):
        """생성 시간 단계 = ceil(log2 k) + 1"""
        assert microcluster_steps(k) == steps

    @pytest.mark.parametrize(("k", "cost"), [(1, 1.0), (2, 4.0), (3, 10.0), (4, 16.0), (8, 64.0)])
    def test_expected_cost(self, k: int, cost: float):
        """p_s = 1/2에서 기대 Bell 쌍 수"""
        assert expected_microcluster_cost(k) == pytest.approx(cost)

    def test_certain_fusion_costs_k(self):
        """융합이 항상 성공하면 Bell 쌍 k개"""
        assert expected_microcluster_cost(6, 1.0) == pytest.approx(6.0)
        assert sampled_microcluster_cost(6, np.random.default_rng(0), 1.0) == 6

    def test_sampled_mean_matches_expectation(self, rng):
        """표본 평균이 기대값과 표준오차 4배 이내에서 일치"""
        # When
        samples = np.array([sampled_microcluster_cost(4, rng) for _ in range(20000)])

        # Then
        standard_error = samples.std(ddof=1) / np.sqrt(samples.size)
        assert abs(samples.mean() - 16.0) < 4 * standard_error
        assert samples.var(ddof=1) == pytest.approx(160.0, rel=0.2)


class TestBuildMicrocluster:
    """build_microcluster 테스트"""

    def test_star_shape(self, quiet, rng):
        """루트 하나와 잎 k개만 남음"""
        # When
        mc = build_microcluster(4, quiet, rng)

        # Then
        assert len(mc.leaves) == 4
        assert len(mc.graph) == 5
        assert set(mc.graph.neighbors(mc.root)) == set(mc.leaves)
        assert mc.steps == 3
        assert mc.cost >= 4

    def test_noise_free_has_no_errors(self, quiet, rng):
        """잡음이 없으면 모든 노드 오류가 I"""
        mc = build_microcluster(7, quiet, rng)
        assert all(mc.graph.error(node).total.is_identity for node in mc.graph.nodes())


class TestLayouts:
    """앤실라 / 텔레모듈 배치 테스트"""

    def test_ancilla_layout(self, steane):
        """종단 노드 r+1개, 출력 노드 n개, 모든 종단 노드는 측정 대상"""
        # Given
        form = standard_form(steane)

        # When
        layout = ancilla_layout(form, build_attempts=3)

        # Then
        assert len(layout.terminating) == steane.r + 1
        assert len(layout.outputs) == steane.n
        assert set(layout.terminating) <= set(layout.measure_order)
        assert not set(layout.outputs) & set(layout.measure_order)

    def test_telemodule_layout(self):
        """행마다 T, B 쌍과 세로 결합 하나"""
        layout = telemodule_layout(7, join_attempts=5, build_attempts=3)
        assert len(layout.nodes) == 14
        assert len(layout.bonds) == 7
        assert len(layout.outputs) == 7

    def test_layout_json(self, steane):
        """배치 JSON 직렬화"""
        layout = ancilla_layout(standard_form(steane), build_attempts=2)
        payload = layout.to_dict()
        assert payload["name"] == "ancilla"
        assert len(payload["bonds"]) == len(layout.bonds)

    def test_stage_schedule(self, steane):
        """단계별 시간 단계"""
        ancilla = stage_schedule(ancilla_layout(standard_form(steane), build_attempts=3))
        tele = stage_schedule(telemodule_layout(7, join_attempts=5, build_attempts=3))
        assert set(ancilla) == {"microclusters", "vertical", "simple", "parallel", "measure"}
        assert set(tele) == {"microclusters", "vertical", "measure"}
        assert tele["microclusters"] == microcluster_steps(12)


class TestRealize:
    """배치 실현 테스트"""

    def test_ancilla_realization(self, steane, quiet, rng):
        """출력 노드와 attach 잎이 실현되고 비용이 누적됨"""
        # Given
        layout = ancilla_layout(standard_form(steane), build_attempts=3)
        graph = ClusterGraph()
        ledger = ConstructionLedger()

        # When
        realized = realize(layout, graph, quiet, rng, ledger)

        # Then
        for key in layout.outputs:
            assert realized.ids[key] in graph
            assert len(realized.leaves[(key, ATTACH)]) == 3
        assert ledger.bell_pairs > 0
        assert 0.0 < ledger.acceptance <= 1.0
        assert ledger.cost(0.0) >= ledger.bell_pairs
        assert ledger.cost(0.01) > ledger.cost(0.0)
