"""
마이크로클러스터와 배치 실현

마이크로클러스터는 Bell 쌍을 루트끼리 재귀적으로 융합해 만듭니다.
구성 중 융합 실패와 광자 손실은 표본 추출하지 않고(후선택) 비용에만 반영하며,
탈분극 잡음은 모든 연산에서 표본 추출합니다.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ftsim.cluster.layout import BondStage, ClusterLayout, LeafSide, NodeKey
from ftsim.cluster.schemas import NoiseParams
from ftsim.core.config import settings
from ftsim.core.exceptions import RetryCapExceededError
from ftsim.pauli.models import BondKind, ClusterGraph, NodeRole
from ftsim.pauli.services import (
    add_phys,
    depolarize_1q,
    depolarize_2q,
    fuse,
    fuse_fail,
    x_measure,
    z_measure,
)

# ==========================================================================
# 비용 모델
# ==========================================================================


def microcluster_steps(k: int) -> int:
    """k잎 마이크로클러스터 생성 시간 단계 (ceil(log2 k) + 1)"""
    assert k >= 1
    return (k - 1).bit_length() + 1


@lru_cache(maxsize=256)
def expected_microcluster_cost(k: int, fusion_success: float = 0.5) -> float:
    """
    기대 Bell 쌍 수

    E(1) = 1, E(k) = (E(ceil(k/2)) + E(floor(k/2))) / p_s. p_s = 1/2이고 k가 2의 거듭제곱이면 k^2입니다.
    """
    assert k >= 1
    if k == 1:
        return 1.0
    half = (k + 1) // 2
    halves = expected_microcluster_cost(half, fusion_success) + expected_microcluster_cost(
        k - half, fusion_success
    )
    return halves / fusion_success


def sampled_microcluster_cost(k: int, rng: np.random.Generator, fusion_success: float = 0.5) -> int:
    """두 절반을 융합이 성공할 때까지 다시 만드는 Bell 쌍 수 표본"""
    assert k >= 1
    if k == 1:
        return 1
    half = (k + 1) // 2
    total = 0
    while True:
        total += sampled_microcluster_cost(half, rng, fusion_success)
        total += sampled_microcluster_cost(k - half, rng, fusion_success)
        if rng.random() < fusion_success:
            return total


@dataclass
class ConstructionLedger:
    """
    후선택 구성의 자원 장부

    acceptance는 표본 추출하지 않은 융합 조건화 확률의 곱이고,
    qubit_steps는 손실 후선택 확률 (1 - γ)^qubit_steps의 지수입니다.
    """

    bell_pairs: float = 0.0
    acceptance: float = 1.0
    qubit_steps: int = 0
    steps: int = 0

    def cost(self, gamma: float) -> float:
        """기대 Bell 쌍 수 (후선택 재시도 포함)"""
        survive = self.acceptance * (1.0 - gamma) ** self.qubit_steps
        return self.bell_pairs / survive if survive > 0.0 else math.inf


# ==========================================================================
# 그래프 단위 잡음
# ==========================================================================


def depolarize_pair(
    graph: ClusterGraph, a: int, b: int, noise: NoiseParams, rng: np.random.Generator
) -> None:
    if noise.epsilon > 0.0:
        pa, pb = depolarize_2q(rng, noise.epsilon)
        add_phys(graph, a, pa)
        add_phys(graph, b, pb)


def depolarize_nodes(
    graph: ClusterGraph,
    nodes: Sequence[int],
    noise: NoiseParams,
    rng: np.random.Generator,
) -> None:
    if noise.epsilon > 0.0:
        for node in nodes:
            add_phys(graph, node, depolarize_1q(rng, noise.epsilon))


def tick(
    graph: ClusterGraph,
    busy: set[int],
    noise: NoiseParams,
    rng: np.random.Generator,
    ledger: ConstructionLedger,
) -> None:
    """한 시간 단계 종료: 유휴 노드 메모리 잡음과 큐비트-단계 누적"""
    ledger.steps += 1
    ledger.qubit_steps += len(graph)
    if noise.memory_noise:
        depolarize_nodes(graph, [node for node in graph.nodes() if node not in busy], noise, rng)


# ==========================================================================
# 마이크로클러스터
# ==========================================================================


@dataclass
class Microcluster:
    """루트 + 잎 별 모양 클러스터 조각"""

    graph: ClusterGraph
    root: int
    leaves: list[int]
    cost: int
    steps: int
    qubit_steps: int = 0


def _attach_leaf(graph: ClusterGraph, root: int, side: LeafSide) -> int:
    leaf = graph.add_node(NodeRole.LEAF)
    if side is LeafSide.VERTICAL:
        graph.add_bond(root, leaf, BondKind.VERTICAL)
    else:
        graph.add_bond(root, leaf, BondKind.HORIZONTAL, root if side is LeafSide.RIGHT else leaf)
    return leaf


def _grow(
    graph: ClusterGraph,
    sides: Sequence[LeafSide],
    noise: NoiseParams,
    rng: np.random.Generator,
    counter: list[int],
) -> tuple[int, list[int], int]:
    if len(sides) == 1:
        root = graph.add_node(NodeRole.ROOT)
        leaf = _attach_leaf(graph, root, sides[0])
        depolarize_pair(graph, root, leaf, noise, rng)
        counter[0] += 2
        return root, [leaf], 1

    half = (len(sides) + 1) // 2
    root_a, leaves_a, steps_a = _grow(graph, sides[:half], noise, rng, counter)
    root_b, leaves_b, steps_b = _grow(graph, sides[half:], noise, rng, counter)
    shorter = [root_b, *leaves_b] if steps_a > steps_b else [root_a, *leaves_a]
    for _ in range(abs(steps_a - steps_b)):
        if noise.memory_noise:
            depolarize_nodes(graph, shorter, noise, rng)
        counter[0] += len(shorter)

    depolarize_pair(graph, root_a, root_b, noise, rng)
    fuse(graph, keep=root_a, other=root_b)
    leaves = leaves_a + leaves_b
    if noise.memory_noise:
        depolarize_nodes(graph, leaves, noise, rng)
    counter[0] += len(leaves) + 2
    return root_a, leaves, max(steps_a, steps_b) + 1


def build_microcluster(
    k: int,
    noise: NoiseParams,
    rng: np.random.Generator,
    sides: Sequence[LeafSide] | None = None,
    fusion_success: float = 0.5,
) -> Microcluster:
    """
    k잎 마이크로클러스터

    Bell 쌍마다 2큐비트 탈분극, 루트 융합 직전 2큐비트 탈분극, 유휴 잎 메모리 잡음을
    적용합니다. 잎의 결합 방향은 sides 순서를 따릅니다.
    """
    assert k >= 1, "잎 수는 1 이상이어야 합니다"
    leaf_sides = list(sides) if sides is not None else [LeafSide.RIGHT] * k
    assert len(leaf_sides) == k
    graph = ClusterGraph()
    counter = [0]
    root, leaves, steps = _grow(graph, leaf_sides, noise, rng, counter)
    cost = sampled_microcluster_cost(k, rng, fusion_success)
    return Microcluster(graph, root, leaves, cost, steps, counter[0])


# ==========================================================================
# 융합 단계
# ==========================================================================


def conditioned_outcomes(
    rng: np.random.Generator, attempts: int, fusion_success: float
) -> list[bool]:
    """
    적어도 하나 성공하는 융합 결과 (재표본)

    Raises:
        RetryCapExceededError: 재표본 한도 초과
    """
    for _ in range(settings.RETRY_CAP):
        draws = rng.random(attempts) < fusion_success
        if draws.any():
            return [bool(d) for d in draws]
    raise RetryCapExceededError(
        "parallel fusion", settings.RETRY_CAP, {"fusion_success": fusion_success}
    )


def parallel_fuse(
    graph: ClusterGraph,
    left: Sequence[int],
    right: Sequence[int],
    outcomes: Sequence[bool],
    noise: NoiseParams,
    rng: np.random.Generator,
) -> int | None:
    """
    잎 쌍 병렬 융합

    첫 성공이 연결 노드로 남고, 추가 성공은 Z 측정, 실패는 두 잎을 Z 측정합니다.
    짝이 없는 잎도 Z 측정합니다.

    Returns:
        연결 노드 ID (성공이 없으면 None)
    """
    link: int | None = None
    for a, b, ok in zip(left, right, outcomes, strict=False):
        depolarize_pair(graph, a, b, noise, rng)
        if not ok:
            fuse_fail(graph, a, b)
            continue
        merged = fuse(graph, keep=a, other=b)
        if link is None:
            link = merged
            graph.set_role(link, NodeRole.AUX)
        else:
            z_measure(graph, merged)
    used = len(outcomes)
    for leftover in [*left[used:], *right[used:]]:
        z_measure(graph, leftover)
    return link


@dataclass
class Realized:
    """실현된 배치: 키별 노드 ID와 남은 잎 그룹"""

    ids: dict[NodeKey, int] = field(default_factory=dict)
    leaves: dict[tuple[NodeKey, str], list[int]] = field(default_factory=dict)


def realize(
    layout: ClusterLayout,
    graph: ClusterGraph,
    noise: NoiseParams,
    rng: np.random.Generator,
    ledger: ConstructionLedger,
    fusion_success: float = 0.5,
) -> Realized:
    """
    배치를 그래프로 실현

    마이크로클러스터 → 세로 결합 → 단순 가로 결합 → 병렬 결합 순서이며
    결합 단계는 각각 한 시간 단계입니다.
    """
    realized = Realized()
    fragments: list[tuple[list[int], int]] = []
    leaf_counts: dict[NodeKey, int] = {}

    for key, spec in layout.nodes.items():
        mc = build_microcluster(spec.leaf_count, noise, rng, spec.sides(), fusion_success)
        mapping = graph.absorb(mc.graph)
        root = mapping[mc.root]
        graph.set_role(root, NodeRole.ROOT)
        realized.ids[key] = root
        leaf_counts[key] = spec.leaf_count
        leaves = [mapping[leaf] for leaf in mc.leaves]
        offset = 0
        for group in spec.groups:
            realized.leaves[(key, group.name)] = leaves[offset : offset + group.count]
            offset += group.count
        ledger.bell_pairs += mc.cost
        ledger.qubit_steps += mc.qubit_steps
        fragments.append(([root, *leaves], mc.steps))

    stage_steps = max((steps for _, steps in fragments), default=0)
    for nodes, steps in fragments:
        pad = stage_steps - steps
        for _ in range(pad):
            if noise.memory_noise:
                depolarize_nodes(graph, nodes, noise, rng)
        ledger.qubit_steps += pad * len(nodes)
    ledger.steps += stage_steps

    retry = 1.0 / fusion_success - 1.0
    for stage in (BondStage.VERTICAL, BondStage.SIMPLE):
        bonds = layout.bonds_at(stage)
        if not bonds:
            continue
        busy: set[int] = set()
        for bond in bonds:
            (leaf,) = realized.leaves.pop((bond.provider, bond.group))
            root = realized.ids[bond.receiver]
            depolarize_pair(graph, leaf, root, noise, rng)
            fuse(graph, keep=root, other=leaf)
            busy.add(root)
            ledger.bell_pairs += retry * (
                expected_microcluster_cost(leaf_counts[bond.provider], fusion_success)
                + expected_microcluster_cost(leaf_counts[bond.receiver], fusion_success)
            )
        tick(graph, busy, noise, rng, ledger)

    bonds = layout.bonds_at(BondStage.PARALLEL)
    if bonds:
        busy = set()
        for bond in bonds:
            left = realized.leaves.pop((bond.provider, bond.group))
            right = realized.leaves.pop((bond.receiver, bond.group))
            attempts = min(len(left), len(right))
            outcomes = conditioned_outcomes(rng, attempts, fusion_success)
            ledger.acceptance *= 1.0 - (1.0 - fusion_success) ** attempts
            busy.update(left[:attempts])
            link = parallel_fuse(graph, left, right, outcomes, noise, rng)
            assert link is not None and bond.link is not None
            realized.ids[bond.link] = link
        tick(graph, busy, noise, rng, ledger)
    return realized


def measure_layout(
    graph: ClusterGraph,
    layout: ClusterLayout,
    realized: Realized,
    noise: NoiseParams,
    rng: np.random.Generator,
    ledger: ConstructionLedger,
) -> dict[NodeKey, int]:
    """
    측정 단계: 측정 노드마다 1큐비트 탈분극 후 순서대로 X 측정

    Returns:
        종단 노드 키별 반전 비트
    """
    nodes = [realized.ids[key] for key in layout.measure_order]
    depolarize_nodes(graph, nodes, noise, rng)
    tick(graph, set(nodes), noise, rng, ledger)
    flips: dict[NodeKey, int] = {}
    terminating = set(layout.terminating)
    for key, node in zip(layout.measure_order, nodes, strict=True):
        flip = x_measure(graph, node)
        if key in terminating:
            assert flip is not None, f"{key}는 종단 노드여야 합니다"
            flips[key] = flip
        else:
            assert flip is None, f"{key}는 가로 전송 노드여야 합니다"
    return flips


def stage_schedule(layout: ClusterLayout) -> dict[str, int]:
    """단계별 시간 단계 수 (측정 단계 포함)"""
    specs = layout.nodes.values()
    schedule = {"microclusters": max((microcluster_steps(s.leaf_count) for s in specs), default=0)}
    for stage in BondStage:
        if layout.bonds_at(stage):
            schedule[str(stage)] = 1
    schedule["measure"] = 1
    return schedule
