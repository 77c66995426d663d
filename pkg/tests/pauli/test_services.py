"""
Pauli 전파 규칙 / 그래프 연산 테스트
"""

from collections import Counter

import numpy as np

from ftsim.pauli.models import I, NodeError, PauliBits, X, Y, Z
from ftsim.pauli.services import (
    PAULI_PAIRS,
    add_frame,
    add_phys,
    depolarize_1q,
    depolarize_2q,
    fuse,
    fuse_fail,
    fuse_failure,
    fuse_success,
    measure_terminating_x,
    measure_z,
    propagate_vertical_stage,
    propagate_x_measure_horizontal,
    x_measure,
    z_measure,
)


class TestPropagationRules:
    """순수 전파 규칙 테스트"""

    def test_horizontal_moves_z_to_frame_x(self):
        """측정 노드의 물리 Z는 오른쪽 노드의 프레임 X"""
        result = propagate_x_measure_horizontal(NodeError(phys=Z), NodeError())
        assert result.frame == X
        assert result.phys == I

    def test_horizontal_moves_frame_x_to_frame_z(self):
        """측정 노드의 프레임 X는 오른쪽 노드의 프레임 Z"""
        result = propagate_x_measure_horizontal(NodeError(frame=X), NodeError())
        assert result.frame == Z

    def test_horizontal_absorbs_phys_x(self):
        """측정 노드의 물리 X는 측정에 흡수"""
        result = propagate_x_measure_horizontal(NodeError(phys=X), NodeError(phys=Y))
        assert result == NodeError(phys=Y)

    def test_vertical_stage_is_symmetric(self):
        """세로 결합: 각 프레임 X가 상대 프레임 Z로"""
        q1, q3 = propagate_vertical_stage(NodeError(frame=X), NodeError())
        assert q1.frame == X
        assert q3.frame == Z

    def test_terminating_flip_reads_z(self):
        """종단 X 측정은 Z 성분(물리+프레임)만 봄"""
        assert measure_terminating_x(NodeError(phys=Z)) == 1
        assert measure_terminating_x(NodeError(phys=X)) == 0
        assert measure_terminating_x(NodeError(phys=Z, frame=Z)) == 0

    def test_z_measure_spreads_frame_z(self):
        """X 성분이 있는 Z 측정은 모든 이웃 프레임에 Z"""
        neighbors = measure_z(NodeError(frame=X), [NodeError(), NodeError(frame=Z)])
        assert [n.frame for n in neighbors] == [Z, I]

    def test_fuse_success_kicks_neighbours(self):
        """한쪽 물리 X는 반대쪽 이웃에 물리 Z"""
        merged, nbrs1, nbrs2 = fuse_success(
            NodeError(phys=X), NodeError(), [NodeError()], [NodeError()]
        )
        assert merged.phys == X
        assert nbrs1[0].phys == I
        assert nbrs2[0].phys == Z

    def test_fuse_failure_measures_each_side(self):
        """실패하면 양쪽을 각각 Z 측정, X 성분이 있는 쪽 이웃만 프레임 Z"""
        nbrs1, nbrs2 = fuse_failure(
            NodeError(phys=Y), NodeError(frame=Z), [NodeError()], [NodeError(frame=X)]
        )
        assert nbrs1[0].frame == Z
        assert nbrs2[0].frame == X


class TestDepolarizing:
    """탈분극 잡음 샘플링 테스트"""

    def test_zero_strength_is_identity(self, rng):
        """ε = 0이면 항상 항등"""
        assert all(depolarize_1q(rng, 0.0) == I for _ in range(100))
        assert all(depolarize_2q(rng, 0.0) == (I, I) for _ in range(100))

    def test_single_qubit_uniform_over_errors(self, rng):
        """ε = 1이면 X, Y, Z가 고르게 나옴"""
        # When
        counts = Counter(depolarize_1q(rng, 1.0) for _ in range(3000))

        # Then
        assert set(counts) == {X, Y, Z}
        assert all(800 < c < 1200 for c in counts.values())

    def test_two_qubit_covers_fifteen_pairs(self, rng):
        """ε = 1이면 비항등 15쌍이 모두 나옴"""
        seen = {depolarize_2q(rng, 1.0) for _ in range(3000)}
        assert seen == set(PAULI_PAIRS)
        assert len(PAULI_PAIRS) == 15


class TestGraphOperations:
    """그래프 단위 측정/융합 테스트"""

    def test_chain_teleports_z_error(self, chain):
        """첫 노드의 Z 오류는 체인 끝 측정을 반전"""
        # Given
        graph, nodes = chain
        add_phys(graph, nodes[0], Z)

        # When
        first = x_measure(graph, nodes[0])
        second = x_measure(graph, nodes[1])
        last = x_measure(graph, nodes[2])

        # Then
        assert first is None and second is None
        assert last == 1
        assert len(graph) == 0

    def test_chain_absorbs_x_error(self, chain):
        """첫 노드의 X 오류는 측정에 흡수"""
        graph, nodes = chain
        add_phys(graph, nodes[0], X)

        flips = [x_measure(graph, node) for node in nodes]

        assert flips == [None, None, 0]

    def test_z_measure_updates_neighbour_frames(self, chain):
        """Z 측정 노드의 X 성분은 이웃 프레임 Z"""
        graph, nodes = chain
        add_frame(graph, nodes[1], X)

        z_measure(graph, nodes[1])

        assert graph.error(nodes[0]).frame == Z
        assert graph.error(nodes[2]).frame == Z
        assert nodes[1] not in graph

    def test_fuse_joins_chains(self, two_chains):
        """융합 성공은 두 체인을 가로로 이음"""
        # Given
        graph, (a, b, c, d) = two_chains

        # When
        merged = fuse(graph, keep=b, other=c)

        # Then
        assert merged == b
        assert c not in graph
        assert graph.right_neighbor(a) == b
        assert graph.right_neighbor(b) == d

    def test_fuse_fail_measures_both(self, two_chains):
        """융합 실패는 두 노드를 Z 측정"""
        graph, (a, b, c, d) = two_chains

        fuse_fail(graph, b, c)

        assert b not in graph and c not in graph
        assert graph.neighbors(a) == [] and graph.neighbors(d) == []

    def test_frame_does_not_touch_phys(self, chain):
        """프레임 오류 합성은 물리 오류와 분리"""
        graph, nodes = chain
        add_frame(graph, nodes[0], PauliBits(1, 1))
        assert graph.error(nodes[0]) == NodeError(frame=Y)
