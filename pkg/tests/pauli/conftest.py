"""
Pauli 모듈 테스트 픽스처
"""

import pytest

from ftsim.pauli.models import BondKind, ClusterGraph, NodeRole


@pytest.fixture
def chain() -> tuple[ClusterGraph, list[int]]:
    """가로 결합 3노드 체인 (왼쪽부터)"""
    graph = ClusterGraph()
    nodes = [graph.add_node(NodeRole.ROOT) for _ in range(3)]
    graph.add_bond(nodes[0], nodes[1], BondKind.HORIZONTAL, origin=nodes[0])
    graph.add_bond(nodes[1], nodes[2], BondKind.HORIZONTAL, origin=nodes[1])
    return graph, nodes


@pytest.fixture
def two_chains() -> tuple[ClusterGraph, list[int]]:
    """가로 결합 2노드 체인 두 개 (a-b, c-d)"""
    graph = ClusterGraph()
    a, b, c, d = (graph.add_node(NodeRole.ROOT) for _ in range(4))
    graph.add_bond(a, b, BondKind.HORIZONTAL, origin=a)
    graph.add_bond(c, d, BondKind.HORIZONTAL, origin=c)
    return graph, [a, b, c, d]
