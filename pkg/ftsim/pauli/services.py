"""
Pauli 모듈 서비스

클러스터 측정/융합에 따른 물리 오류와 프레임 오류의 전파 규칙,
탈분극 잡음 샘플링, 그래프 단위 측정 연산을 담당합니다.
모든 규칙은 GF(2) 위에서 선형입니다.
"""

import numpy as np

from ftsim.pauli.models import PAULIS, ClusterGraph, I, NodeError, PauliBits

# depolarize_2q의 비항등 15쌍 (첫 슬롯 우선 사전식)
PAULI_PAIRS: tuple[tuple[PauliBits, PauliBits], ...] = tuple(
    (a, b) for a in PAULIS for b in PAULIS if not (a.is_identity and b.is_identity)
)


# ==========================================================================
# 전파 규칙 (순수 함수)
# ==========================================================================


def propagate_x_measure_horizontal(q1: NodeError, q2: NodeError) -> NodeError:
    """
    가로 결합 X 측정 규칙

    측정 노드 q1의 Z 성분(물리+프레임)은 q2의 프레임 X로, q1의 프레임 X는
    q2의 프레임 Z로 옮겨집니다. q1의 물리 X는 측정에 흡수됩니다.
    """
    frame = PauliBits(
        q2.frame.x ^ q1.phys.z ^ q1.frame.z,
        q2.frame.z ^ q1.frame.x,
    )
    return NodeError(q2.phys, frame)


def propagate_vertical_stage(q1: NodeError, q3: NodeError) -> tuple[NodeError, NodeError]:
    """세로 결합 단계: 프레임 X가 상대 노드의 프레임 Z로 전파"""
    new_q1 = NodeError(q1.phys, PauliBits(q1.frame.x, q1.frame.z ^ q3.frame.x))
    new_q3 = NodeError(q3.phys, PauliBits(q3.frame.x, q3.frame.z ^ q1.frame.x))
    return new_q1, new_q3


def measure_terminating_x(q: NodeError) -> int:
    """종단 노드 X 측정 반전 비트"""
    return q.phys.z ^ q.frame.z


def measure_z(q: NodeError, neighbors: list[NodeError]) -> list[NodeError]:
    """Z 측정: x_t만큼 이웃 프레임에 Z 추가"""
    x_t = q.phys.x ^ q.frame.x
    if not x_t:
        return [n.copy() for n in neighbors]
    return [NodeError(n.phys, PauliBits(n.frame.x, n.frame.z ^ 1)) for n in neighbors]


def fuse_success(
    q1: NodeError,
    q2: NodeError,
    nbrs1: list[NodeError],
    nbrs2: list[NodeError],
) -> tuple[NodeError, list[NodeError], list[NodeError]]:
    """
    융합 성공 규칙

    Returns:
        (병합 노드, 갱신된 q1 이웃, 갱신된 q2 이웃)
    """
    assert q1.frame.is_identity and q2.frame.is_identity, "프레임 오류가 있는 노드는 융합하지 않습니다"
    merged = NodeError(q1.phys ^ q2.phys, I)
    kick1 = PauliBits(0, q2.phys.x)
    kick2 = PauliBits(0, q1.phys.x)
    new1 = [NodeError(n.phys ^ kick1, n.frame) for n in nbrs1]
    new2 = [NodeError(n.phys ^ kick2, n.frame) for n in nbrs2]
    return merged, new1, new2


def fuse_failure(
    q1: NodeError,
    q2: NodeError,
    nbrs1: list[NodeError],
    nbrs2: list[NodeError],
) -> tuple[list[NodeError], list[NodeError]]:
    """융합 실패: 두 노드를 각각 Z 측정"""
    return measure_z(q1, nbrs1), measure_z(q2, nbrs2)


# ==========================================================================
# 잡음 샘플링
# ==========================================================================


def depolarize_1q(rng: np.random.Generator, epsilon: float) -> PauliBits:
    """확률 ε로 X, Y, Z 중 하나 (각 ε/3)"""
    u = rng.random()
    if u >= epsilon:
        return I
    return PAULIS[1 + min(int(3.0 * u / epsilon), 2)]


def depolarize_2q(rng: np.random.Generator, epsilon: float) -> tuple[PauliBits, PauliBits]:
    """확률 ε로 비항등 15쌍 중 하나 (각 ε/15)"""
    u = rng.random()
    if u >= epsilon:
        return I, I
    return PAULI_PAIRS[min(int(15.0 * u / epsilon), 14)]


def random_pauli(rng: np.random.Generator) -> PauliBits:
    """{I, X, Y, Z} 균등 추출"""
    return PAULIS[int(rng.integers(4))]


def sample_loss(rng: np.random.Generator, gamma: float) -> bool:
    """광자 손실 Bernoulli(γ)"""
    return bool(gamma > 0.0 and rng.random() < gamma)


# ==========================================================================
# 그래프 단위 연산
# ==========================================================================


def add_phys(graph: ClusterGraph, node: int, pauli: PauliBits) -> None:
    """노드에 물리 오류 합성"""
    if not pauli.is_identity:
        err = graph.error(node)
        graph.set_error(node, NodeError(err.phys ^ pauli, err.frame))


def add_frame(graph: ClusterGraph, node: int, pauli: PauliBits) -> None:
    """노드에 프레임 오류 합성"""
    if not pauli.is_identity:
        err = graph.error(node)
        graph.set_error(node, NodeError(err.phys, err.frame ^ pauli))


def x_measure(graph: ClusterGraph, node: int) -> int | None:
    """
    노드 X 측정

    세로 결합을 노드 ID 오름차순으로 처리한 뒤, 오른쪽 가로 결합이 있으면
    가로 규칙을, 없으면 종단 규칙을 적용합니다.

    Returns:
        종단 측정이면 반전 비트, 가로 전송이면 None
    """
    for other in graph.vertical_neighbors(node):
        new_q, new_o = propagate_vertical_stage(graph.error(node), graph.error(other))
        graph.set_error(node, new_q)
        graph.set_error(other, new_o)
        graph.graph.remove_edge(node, other)

    right = graph.right_neighbor(node)
    remaining = graph.neighbors(node)
    assert remaining == ([] if right is None else [right]), (
        f"노드 {node}: X 측정 전 남은 결합 {remaining}"
    )
    if right is not None:
        moved = propagate_x_measure_horizontal(graph.error(node), graph.error(right))
        graph.set_error(right, moved)
        graph.remove(node)
        return None
    flip = measure_terminating_x(graph.error(node))
    graph.remove(node)
    return flip


def z_measure(graph: ClusterGraph, node: int) -> None:
    """노드 Z 측정 (이웃 프레임 갱신 후 제거)"""
    neighbors = graph.neighbors(node)
    updated = measure_z(graph.error(node), [graph.error(n) for n in neighbors])
    for n, err in zip(neighbors, updated, strict=True):
        graph.set_error(n, err)
    graph.remove(node)


def fuse(graph: ClusterGraph, keep: int, other: int) -> int:
    """
    융합 성공: other를 keep에 병합

    other의 결합은 종류/방향을 유지한 채 keep으로 옮겨집니다.

    Returns:
        병합된 노드 ID (keep)
    """
    assert not graph.graph.has_edge(keep, other), "인접한 노드는 융합하지 않습니다"
    nbrs1 = graph.neighbors(keep)
    nbrs2 = graph.neighbors(other)
    assert not set(nbrs1) & set(nbrs2), "공통 이웃이 있는 노드는 융합하지 않습니다"
    merged, new1, new2 = fuse_success(
        graph.error(keep),
        graph.error(other),
        [graph.error(n) for n in nbrs1],
        [graph.error(n) for n in nbrs2],
    )
    for n, err in zip(nbrs1, new1, strict=True):
        graph.set_error(n, err)
    for n, err in zip(nbrs2, new2, strict=True):
        graph.set_error(n, err)
    moved = [(n, *graph.bond(other, n)) for n in nbrs2]
    graph.remove(other)
    graph.set_error(keep, merged)
    for n, kind, origin in moved:
        graph.add_bond(keep, n, kind, keep if origin == other else origin)
    return keep


def fuse_fail(graph: ClusterGraph, a: int, b: int) -> None:
    """융합 실패: 두 노드 모두 Z 측정"""
    z_measure(graph, a)
    z_measure(graph, b)
