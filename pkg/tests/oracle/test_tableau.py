"""
안정자 시뮬레이터 상태 테스트
"""

import itertools

import numpy as np
import pytest

from ftsim.oracle.exceptions import OracleCapacityError
from ftsim.oracle.models import MAX_QUBITS, CoinStream, Fuse, MeasureX, Schedule
from ftsim.oracle.services import fuse_nodes, measure_x, measure_z, prepare_cluster, run_oracle
from ftsim.pauli.models import BondKind, ClusterGraph, NodeRole, Z


def _graph(count: int, bonds: list[tuple[int, int, BondKind]]) -> tuple[ClusterGraph, list[int]]:
    graph = ClusterGraph()
    nodes = [graph.add_node(NodeRole.ROOT) for _ in range(count)]
    for u, v, kind in bonds:
        graph.add_bond(nodes[u], nodes[v], kind, origin=nodes[u])
    return graph, nodes


def _generator(neighbours: dict[int, list[int]], v: int) -> dict[int, str]:
    """K_v = X_v ∏ Z_nbr"""
    return {v: "X"} | {n: "Z" for n in neighbours[v]}


class TestPrepareCluster:
    """prepare_cluster 테스트"""

    def test_single_node_is_plus_state(self):
        """고립 노드의 X 측정은 결정적 0"""
        # Given
        graph, (a,) = _graph(1, [])
        tableau = prepare_cluster(graph)
        coins = CoinStream(coins=[])

        # When
        outcome, terminating = measure_x(tableau, a, coins)

        # Then
        assert (outcome, terminating) == (0, True)
        assert coins.drawn == []

    def test_z_error_flips_isolated_x(self):
        """Z 오류는 고립 노드 X 측정을 반전"""
        graph, (a,) = _graph(1, [])
        tableau = prepare_cluster(graph)
        tableau.pauli(a, Z)
        assert measure_x(tableau, a, CoinStream(coins=[]))[0] == 1

    def test_two_node_edge_stabilizers(self):
        """결합 하나짜리 그래프의 안정자는 {XZ, ZX}"""
        # Given
        graph, (a, b) = _graph(2, [(0, 1, BondKind.HORIZONTAL)])

        # When
        tableau = prepare_cluster(graph)

        # Then
        assert tableau.expectation({a: "X", b: "Z"}) == 1
        assert tableau.expectation({a: "Z", b: "X"}) == 1
        assert tableau.expectation({a: "X"}) == 0
        assert tableau.expectation({a: "Z", b: "Z"}) == 0

    def test_six_node_graph_matches_neighbourhood_formula(self):
        """6노드 그래프의 모든 K_v = X_v ∏ Z_nbr가 +1 안정자"""
        # Given
        bonds = [
            (0, 1, BondKind.HORIZONTAL),
            (1, 2, BondKind.HORIZONTAL),
            (3, 4, BondKind.HORIZONTAL),
            (4, 5, BondKind.HORIZONTAL),
            (0, 3, BondKind.VERTICAL),
            (1, 4, BondKind.VERTICAL),
            (2, 5, BondKind.VERTICAL),
        ]
        graph, nodes = _graph(6, bonds)
        neighbours = {v: graph.neighbors(v) for v in nodes}

        # When
        tableau = prepare_cluster(graph)

        # Then
        for v in nodes:
            assert tableau.expectation(_generator(neighbours, v)) == 1
        product = {nodes[0]: "Y", nodes[1]: "Y", nodes[2]: "Z", nodes[3]: "Z", nodes[4]: "Z"}
        assert abs(tableau.expectation(product)) == 1

    def test_capacity_limit(self):
        """한도를 넘는 그래프는 거부"""
        graph, _ = _graph(MAX_QUBITS + 1, [(0, 1, BondKind.HORIZONTAL)])

        with pytest.raises(OracleCapacityError) as exc_info:
            prepare_cluster(graph)

        assert exc_info.value.status == 2
        assert exc_info.value.extensions["qubits"] == MAX_QUBITS + 1


class TestByproductCorrections:
    """측정 직후 적용되는 부산물 보정 테스트"""

    @pytest.mark.parametrize("coins", list(itertools.product([0, 1], repeat=2)))
    def test_fusion_of_two_pairs_gives_linear_cluster(self, coins: tuple[int, int]):
        """2노드 클러스터 둘의 융합 성공은 모든 분기에서 3노드 선형 클러스터"""
        # Given
        graph, (a, k, o, b) = _graph(4, [(0, 1, BondKind.HORIZONTAL), (2, 3, BondKind.HORIZONTAL)])
        tableau = prepare_cluster(graph)
        stream = CoinStream(coins=list(coins))

        # When
        outcomes = fuse_nodes(tableau, k, o, stream)

        # Then
        assert outcomes == coins
        assert stream.drawn == list(coins)
        assert tableau.expectation({a: "X", k: "Z"}) == 1
        assert tableau.expectation({a: "Z", k: "X", b: "Z"}) == 1
        assert tableau.expectation({k: "Z", b: "X"}) == 1
        assert sorted(tuple(sorted(e)) for e in tableau.graph.edges) == [(a, k), (k, b)]
        assert tableau.graph.edges[k, b]["origin"] == k

    @pytest.mark.parametrize("coins", list(itertools.product([0, 1], repeat=2)))
    def test_odd_chain_end_is_deterministic(self, coins: tuple[int, int]):
        """3노드 체인을 전송하면 끝 노드 X 결과는 분기와 무관하게 0"""
        graph, nodes = _graph(3, [(0, 1, BondKind.HORIZONTAL), (1, 2, BondKind.HORIZONTAL)])
        schedule = Schedule([MeasureX(n) for n in nodes])
        stream = CoinStream(coins=list(coins))
        assert run_oracle(graph, schedule, stream) == {nodes[2]: 0}
        assert stream.drawn == list(coins)

    @pytest.mark.parametrize("coin", [0, 1])
    def test_z_measurement_removes_node(self, coin: int):
        """Z 측정 뒤 남은 고립 노드는 다시 |+>"""
        # Given
        graph, (a, b) = _graph(2, [(0, 1, BondKind.VERTICAL)])
        tableau = prepare_cluster(graph)

        # When
        outcome = measure_z(tableau, a, CoinStream(coins=[coin]))

        # Then
        assert outcome == coin
        assert tableau.expectation({b: "X"}) == 1
        assert list(tableau.graph.nodes) == [b]

    def test_failed_fusion_leaves_chain_ends(self):
        """융합 실패 뒤 양쪽 체인 끝 노드는 고립된 |+>"""
        graph, (a, k, o, b) = _graph(4, [(0, 1, BondKind.HORIZONTAL), (2, 3, BondKind.HORIZONTAL)])
        schedule = Schedule([Fuse(k, o, False), MeasureX(a), MeasureX(b)])
        assert run_oracle(graph, schedule, CoinStream(coins=[1, 1])) == {a: 0, b: 0}


class TestCoinStream:
    """CoinStream 테스트"""

    def test_replay_then_zero(self):
        """재생 목록이 끝나면 0"""
        coins = CoinStream(coins=[1])
        assert [coins.next(), coins.next()] == [1, 0]

    def test_records_random_draws(self):
        """rng 동전은 기록됨"""
        coins = CoinStream(rng=np.random.default_rng(3))
        drawn = [coins.next() for _ in range(8)]
        assert coins.drawn == drawn
