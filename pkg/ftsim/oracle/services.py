"""
Oracle 모듈 서비스

stim 안정자 시뮬레이터로 클러스터 계산을 물리적으로 실행해 Pauli 모듈의 전파 규칙을 검증합니다.

실험자 보정은 그래프 상태 측정 규칙으로 정한 부산물 Pauli를 측정 직후 큐비트에 직접
적용합니다. 그러면 종단 X 측정의 원시 결과가 곧 해석된 결과가 됩니다.

- 가로 전송 X 측정 (a → b, 결과 m): X_b^m, N(b) \\ {a}에 Z^m
- Z 측정 (결과 m): 모든 이웃에 Z^m
- 융합 성공 (ZZ 결과 f1, X 결과 f2): other의 이웃에 Z^f1, keep에 Z^f2
- 융합 실패: 두 노드를 차례로 Z 측정

오류가 있는 실행과 없는 실행을 같은 동전 스트림으로 돌려 XOR한 것이 기준 반전 비트입니다.
무작위 분기와 무관한 종단 결과 패리티에서만 의미가 있습니다.
"""

import copy
import logging

import galois
import networkx as nx
import numpy as np
import numpy.typing as npt
import stim

from ftsim.oracle.exceptions import OracleCapacityError
from ftsim.oracle.models import (
    MAX_QUBITS,
    CoinStream,
    Fuse,
    Inject,
    MeasureX,
    MeasureZ,
    StabilizerTableau,
    Schedule,
    ScheduleOp,
)
from ftsim.pauli.models import PAULIS, BondKind, ClusterGraph, NodeError, NodeRole
from ftsim.pauli.services import add_phys, fuse, fuse_fail, x_measure, z_measure

logger = logging.getLogger(__name__)


# ==========================================================================
# 그래프 상태 준비
# ==========================================================================


def qubit_index(graph: ClusterGraph) -> dict[int, int]:
    """노드 ID → 큐비트 인덱스 (ID 오름차순)"""
    return {node: k for k, node in enumerate(graph.nodes())}


def prepare_cluster(graph: ClusterGraph) -> StabilizerTableau:
    """
    그래프 상태 준비

    모든 큐비트를 |+>로 준비한 뒤 간선마다 CZ를 적용합니다.

    Raises:
        OracleCapacityError: 노드 수가 MAX_QUBITS를 넘는 경우
    """
    if len(graph) > MAX_QUBITS:
        raise OracleCapacityError(len(graph), MAX_QUBITS)
    index = qubit_index(graph)
    sim = stim.TableauSimulator()
    sim.set_num_qubits(len(index))
    for k in range(len(index)):
        sim.h(k)
    for u, v in sorted(tuple(sorted(e)) for e in graph.graph.edges):
        sim.cz(index[u], index[v])
    structure = nx.Graph()
    structure.add_nodes_from(graph.nodes())
    structure.add_edges_from(graph.graph.edges(data=True))
    return StabilizerTableau(sim=sim, index=index, graph=structure)


# ==========================================================================
# 측정 (무작위 분기는 동전으로 고정)
# ==========================================================================


def _measure_z(state: StabilizerTableau, q: int, coins: CoinStream) -> int:
    expectation = state.sim.peek_z(q)
    if expectation:
        return int(expectation < 0)
    outcome = coins.next()
    state.sim.postselect_z(q, desired_value=bool(outcome))
    return outcome


def _measure_x(state: StabilizerTableau, q: int, coins: CoinStream) -> int:
    expectation = state.sim.peek_x(q)
    if expectation:
        return int(expectation < 0)
    outcome = coins.next()
    state.sim.postselect_x(q, desired_value=bool(outcome))
    return outcome


def _measure_zz(state: StabilizerTableau, a: int, b: int, coins: CoinStream) -> int:
    state.sim.cnot(a, b)
    outcome = _measure_z(state, b, coins)
    state.sim.cnot(a, b)
    return outcome


def _kick_z(state: StabilizerTableau, nodes: list[int]) -> None:
    for n in nodes:
        state.sim.z(state.qubit(n))


def _right_neighbor(state: StabilizerTableau, node: int) -> int | None:
    right = [
        n
        for n, data in state.graph.adj[node].items()
        if data["kind"] is BondKind.HORIZONTAL and data["origin"] == node
    ]
    assert len(right) <= 1, f"노드 {node}의 오른쪽 가로 결합이 여러 개입니다"
    return right[0] if right else None


def measure_x(state: StabilizerTableau, node: int, coins: CoinStream) -> tuple[int, bool]:
    """
    노드 X 측정

    Returns:
        (원시 결과, 종단 여부)
    """
    left = [
        n
        for n, data in state.graph.adj[node].items()
        if data["kind"] is BondKind.HORIZONTAL and data["origin"] != node
    ]
    assert not left, f"노드 {node}: 왼쪽 가로 결합 {left}가 남아 있습니다"
    right = _right_neighbor(state, node)
    outcome = _measure_x(state, state.qubit(node), coins)
    if right is not None and outcome:
        state.sim.x(state.qubit(right))
        _kick_z(state, sorted(n for n in state.graph.neighbors(right) if n != node))
    state.graph.remove_node(node)
    return outcome, right is None


def measure_z(state: StabilizerTableau, node: int, coins: CoinStream) -> int:
    """노드 Z 측정 (결과가 1이면 모든 이웃에 Z)"""
    outcome = _measure_z(state, state.qubit(node), coins)
    if outcome:
        _kick_z(state, sorted(state.graph.neighbors(node)))
    state.graph.remove_node(node)
    return outcome


def fuse_nodes(state: StabilizerTableau, keep: int, other: int, coins: CoinStream) -> tuple[int, int]:
    """
    융합 성공: ZZ 패리티 측정 후 other를 X 측정

    other의 결합은 종류/방향을 유지한 채 keep으로 옮겨집니다.

    Returns:
        (ZZ 결과, X 결과)
    """
    assert not state.graph.has_edge(keep, other), "인접한 노드는 융합하지 않습니다"
    moved = dict(state.graph.adj[other])
    assert not set(moved) & set(state.graph.neighbors(keep)), "공통 이웃이 있습니다"
    f1 = _measure_zz(state, state.qubit(keep), state.qubit(other), coins)
    f2 = _measure_x(state, state.qubit(other), coins)
    if f1:
        _kick_z(state, sorted(moved))
    if f2:
        _kick_z(state, [keep])
    state.graph.remove_node(other)
    for n, data in moved.items():
        origin = keep if data["origin"] == other else data["origin"]
        state.graph.add_edge(keep, n, kind=data["kind"], origin=origin)
    return f1, f2


# ==========================================================================
# 스케줄 실행
# ==========================================================================


def apply_op(
    state: StabilizerTableau,
    op: ScheduleOp,
    coins: CoinStream,
    outcomes: dict[int, int],
) -> None:
    """연산 하나 실행 (종단 X 결과는 outcomes에 기록)"""
    if isinstance(op, Inject):
        state.pauli(op.node, op.pauli)
    elif isinstance(op, Fuse):
        if op.success:
            fuse_nodes(state, op.keep, op.other, coins)
        else:
            measure_z(state, op.keep, coins)
            measure_z(state, op.other, coins)
    elif isinstance(op, MeasureX):
        outcome, terminating = measure_x(state, op.node, coins)
        if terminating:
            outcomes[op.node] = outcome
    elif isinstance(op, MeasureZ):
        measure_z(state, op.node, coins)


def run_oracle(
    graph: ClusterGraph,
    schedule: Schedule,
    coins: CoinStream,
    with_injections: bool = True,
) -> dict[int, int]:
    """
    시뮬레이터 위에서 스케줄 실행

    Returns:
        종단 X 측정 노드 → 결과 비트
    """
    state = prepare_cluster(graph)
    ops = schedule.ops if with_injections else schedule.without_injections().ops
    outcomes: dict[int, int] = {}
    for op in ops:
        apply_op(state, op, coins, outcomes)
    return outcomes


def oracle_flip_bits(
    graph: ClusterGraph,
    schedule: Schedule,
    rng: np.random.Generator,
) -> dict[int, int]:
    """
    기준 반전 비트

    주입 없는 실행에서 동전을 기록하고, 같은 동전으로 주입 실행을 재생해
    종단 측정 결과를 XOR합니다. Pauli 주입은 어떤 측정이 무작위인지 바꾸지 않으므로
    두 실행은 같은 개수의 동전을 씁니다.
    """
    coins = CoinStream(rng=rng)
    clean = run_oracle(graph, schedule, coins, with_injections=False)
    replay = CoinStream(coins=coins.drawn)
    noisy = run_oracle(graph, schedule, replay, with_injections=True)
    assert len(replay.drawn) == len(coins.drawn)
    return {node: clean[node] ^ noisy[node] for node in clean}


def outcome_dependence(graph: ClusterGraph, schedule: Schedule) -> tuple[list[int], npt.NDArray[np.uint8]]:
    """
    오류 없는 종단 결과의 동전 의존 행렬

    종단 결과는 동전에 대해 GF(2) 아핀이므로 동전 하나씩 뒤집어 열을 얻습니다.

    Returns:
        (종단 노드 목록, 종단 × 동전 0/1 행렬)
    """
    base_coins = CoinStream(coins=[])
    base = run_oracle(graph, schedule, base_coins, with_injections=False)
    terminals = sorted(base)
    count = len(base_coins.drawn)
    dependence = np.zeros((len(terminals), count), dtype=np.uint8)
    for k in range(count):
        flipped = [0] * count
        flipped[k] = 1
        result = run_oracle(graph, schedule, CoinStream(coins=flipped), with_injections=False)
        dependence[:, k] = [result[node] ^ base[node] for node in terminals]
    return terminals, dependence


def deterministic_parities(graph: ClusterGraph, schedule: Schedule) -> list[frozenset[int]]:
    """
    무작위 분기에 의존하지 않는 종단 결과 패리티의 기저

    동전 의존 행렬의 왼쪽 영공간입니다. 각 원소는 XOR할 종단 노드 집합입니다.
    """
    terminals, dependence = outcome_dependence(graph, schedule)
    if not terminals:
        return []
    if dependence.shape[1] == 0:
        return [frozenset([node]) for node in terminals]
    basis = galois.GF2(dependence).left_null_space()
    return [
        frozenset(node for node, bit in zip(terminals, row, strict=True) if bit)
        for row in np.asarray(basis, dtype=np.uint8)
    ]


def deterministic_mask(graph: ClusterGraph, schedule: Schedule) -> set[int]:
    """결과 자체가 결정적인 종단 노드 집합"""
    terminals, dependence = outcome_dependence(graph, schedule)
    return {node for node, row in zip(terminals, dependence, strict=True) if not row.any()}


def parity(bits: dict[int, int], nodes: frozenset[int]) -> int:
    """nodes에 해당하는 비트의 XOR"""
    return sum(bits[node] for node in nodes) & 1


def core_flip_bits(graph: ClusterGraph, schedule: Schedule) -> dict[int, int]:
    """Pauli 모듈 규칙만으로 계산한 종단 측정 반전 비트"""
    work = clone_structure(graph)
    flips: dict[int, int] = {}
    for op in schedule.ops:
        if isinstance(op, Inject):
            add_phys(work, op.node, op.pauli)
        elif isinstance(op, Fuse):
            if op.success:
                fuse(work, op.keep, op.other)
            else:
                fuse_fail(work, op.keep, op.other)
        elif isinstance(op, MeasureX):
            flip = x_measure(work, op.node)
            if flip is not None:
                flips[op.node] = flip
        elif isinstance(op, MeasureZ):
            z_measure(work, op.node)
    return flips


# ==========================================================================
# 무작위 스케줄 생성 (속성 테스트용)
# ==========================================================================


def clone_structure(graph: ClusterGraph) -> ClusterGraph:
    """같은 ID/결합을 가진 오류 없는 복사본"""
    clone = copy.deepcopy(graph)
    for node in clone.nodes():
        clone.set_error(node, NodeError())
    return clone


def _ready_for_x(graph: ClusterGraph, node: int) -> bool:
    """왼쪽 가로 결합이 남아 있지 않으면 X 측정 가능"""
    return all(graph.bond(node, n)[1] == node for n in graph.horizontal_neighbors(node))


def random_schedule(
    rng: np.random.Generator,
    max_nodes: int = 10,
    max_injections: int = 3,
) -> tuple[ClusterGraph, Schedule]:
    """
    유효한 클러스터 계산 스케줄 생성

    가로 체인 몇 개와 같은 열 사이의 세로 결합으로 그래프를 만들고,
    체인 끝끼리의 융합을 먼저, 그다음 왼쪽부터 X/Z 측정을 배치합니다.
    주입은 임의 시점에 살아 있는 노드에 들어갑니다.
    """
    graph = ClusterGraph()
    total = int(rng.integers(2, max_nodes + 1))
    chain_count = int(rng.integers(1, min(3, total) + 1))
    cuts = sorted(rng.choice(np.arange(1, total), size=chain_count - 1, replace=False).tolist())
    lengths = [b - a for a, b in zip([0, *cuts], [*cuts, total], strict=True)]

    chains: list[list[int]] = []
    for length in lengths:
        chain = [graph.add_node(NodeRole.ROOT) for _ in range(length)]
        for left, right in zip(chain, chain[1:], strict=False):
            graph.add_bond(left, right, BondKind.HORIZONTAL, origin=left)
        chains.append(chain)

    for a in range(len(chains)):
        for b in range(a + 1, len(chains)):
            for col in range(min(len(chains[a]), len(chains[b]))):
                if rng.random() < 0.4:
                    graph.add_bond(chains[a][col], chains[b][col], BondKind.VERTICAL)

    work = clone_structure(graph)
    ops: list[ScheduleOp] = []
    injections_left = int(rng.integers(1, max_injections + 1))

    def maybe_inject() -> None:
        nonlocal injections_left
        if injections_left and rng.random() < 0.35:
            node = int(rng.choice(work.nodes()))
            ops.append(Inject(node, PAULIS[int(rng.integers(1, 4))]))
            injections_left -= 1

    # 융합: 체인 A의 오른쪽 끝과 체인 B의 왼쪽 끝
    group = list(range(len(chains)))
    tainted: set[int] = set()
    for _ in range(int(rng.integers(0, 3))):
        candidates = [
            (a, b)
            for a in range(len(chains))
            for b in range(len(chains))
            if group[a] != group[b]
            and chains[a][-1] in work
            and chains[b][0] in work
            and chains[a][-1] not in tainted
            and chains[b][0] not in tainted
            and not work.vertical_neighbors(chains[a][-1])
            and not work.vertical_neighbors(chains[b][0])
            and chains[a][-1] != chains[b][0]
        ]
        if not candidates:
            break
        a, b = candidates[int(rng.integers(len(candidates)))]
        keep, other = chains[a][-1], chains[b][0]
        tainted |= {keep, other, *work.neighbors(keep), *work.neighbors(other)}
        success = bool(rng.random() < 0.5)
        maybe_inject()
        ops.append(Fuse(keep, other, success))
        if success:
            fuse(work, keep, other)
            merged, absorbed = group[a], group[b]
            group = [merged if g == absorbed else g for g in group]
        else:
            fuse_fail(work, keep, other)

    # 측정: 왼쪽 가로 결합이 없는 노드부터
    while len(work):
        maybe_inject()
        node = int(rng.choice(work.nodes()))
        if rng.random() < 0.2:
            ops.append(MeasureZ(node))
            z_measure(work, node)
        elif _ready_for_x(work, node):
            ops.append(MeasureX(node))
            x_measure(work, node)

    return graph, Schedule(ops)
