"""
클러스터 배치 구성

회로 좌표를 그대로 마이크로클러스터 배열 좌표로 옮깁니다.
와이어 q의 짝수 시간 노드는 인코더 층, 홀수 시간 노드는 병렬 융합 연결 노드이고,
대상 와이어는 노드 하나를 더 거쳐 피벗 와이어와 Hadamard 패리티가 달라집니다.
검증 행마다 종단 노드 하나가 세로 결합으로 붙습니다.
"""

import json
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

from ftsim.codes.models import StandardForm

NodeKey = tuple[str, int, int]

WIRE = "w"
LINK = "l"
VERIFIER = "v"
TOP = "T"
BOTTOM = "B"

ATTACH = "attach"
JOIN = "join"
OUTPUT = "output"
EXTRACTIONS = ("x1", "x2", "x3", "x4")


class LeafSide(StrEnum):
    """잎 결합 방향 (생성 시점에 지정)"""

    LEFT = "left"  # 가로, 잎이 왼쪽 끝
    RIGHT = "right"  # 가로, 루트가 왼쪽 끝
    VERTICAL = "vertical"


class BondStage(StrEnum):
    VERTICAL = "vertical"
    SIMPLE = "simple"  # 후선택된 단일 가로 융합
    PARALLEL = "parallel"


@dataclass(frozen=True)
class LeafGroup:
    name: str
    side: LeafSide
    count: int


@dataclass
class NodeSpec:
    """마이크로클러스터 하나 (루트 + 잎 그룹)"""

    key: NodeKey
    groups: list[LeafGroup] = field(default_factory=list)

    @property
    def leaf_count(self) -> int:
        return sum(g.count for g in self.groups)

    def sides(self) -> list[LeafSide]:
        return [g.side for g in self.groups for _ in range(g.count)]


@dataclass(frozen=True)
class BondSpec:
    """
    결합 명세

    세로/단순 결합은 provider의 잎 하나를 receiver 루트에 융합합니다.
    병렬 결합은 provider(왼쪽)와 receiver의 잎을 짝지어 융합하고 첫 성공이 link가 됩니다.
    """

    stage: BondStage
    provider: NodeKey
    receiver: NodeKey
    group: str
    link: NodeKey | None = None


@dataclass
class ClusterLayout:
    """마이크로클러스터 배열, 결합 순서, X 측정 순서"""

    name: str
    nodes: dict[NodeKey, NodeSpec] = field(default_factory=dict)
    bonds: list[BondSpec] = field(default_factory=list)
    measure_order: list[NodeKey] = field(default_factory=list)
    terminating: list[NodeKey] = field(default_factory=list)
    outputs: list[NodeKey] = field(default_factory=list)

    def node(self, key: NodeKey) -> NodeSpec:
        if key not in self.nodes:
            self.nodes[key] = NodeSpec(key)
        return self.nodes[key]

    def add_leaves(self, key: NodeKey, name: str, side: LeafSide, count: int) -> None:
        self.node(key).groups.append(LeafGroup(name, side, count))

    def connect(
        self, stage: BondStage, provider: NodeKey, receiver: NodeKey, attempts: int = 1
    ) -> BondSpec:
        """결합 추가와 양쪽 잎 예약"""
        group = f"b{len(self.bonds)}"
        if stage is BondStage.PARALLEL:
            link: NodeKey | None = (LINK, provider[1], provider[2] + 1)
            self.add_leaves(provider, group, LeafSide.RIGHT, attempts)
            receiver_side = LeafSide.VERTICAL if receiver[0] in (TOP, BOTTOM) else LeafSide.LEFT
            self.add_leaves(receiver, group, receiver_side, attempts)
        else:
            link = None
            side = LeafSide.VERTICAL if stage is BondStage.VERTICAL else LeafSide.RIGHT
            self.add_leaves(provider, group, side, 1)
        bond = BondSpec(stage, provider, receiver, group, link)
        self.bonds.append(bond)
        return bond

    def bonds_at(self, stage: BondStage) -> list[BondSpec]:
        return [b for b in self.bonds if b.stage is stage]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "nodes": [
                {
                    "key": list(spec.key),
                    "leaves": [
                        {"group": g.name, "side": str(g.side), "count": g.count}
                        for g in spec.groups
                    ],
                }
                for spec in self.nodes.values()
            ],
            "bonds": [
                {
                    "stage": str(b.stage),
                    "provider": list(b.provider),
                    "receiver": list(b.receiver),
                    "group": b.group,
                    "link": list(b.link) if b.link else None,
                }
                for b in self.bonds
            ],
            "measure_order": [list(k) for k in self.measure_order],
            "terminating": [list(k) for k in self.terminating],
            "outputs": [list(k) for k in self.outputs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def ancilla_layout(form: StandardForm, build_attempts: int) -> ClusterLayout:
    """
    검증된 앤실라 클러스터 배치

    인코더 층 l의 CNOT은 시간 2l 노드 사이 세로 결합(인덱스가 큰 와이어가 잎 제공),
    시간 2E+1 노드는 검증 노드와 세로 결합, 2E+2 노드가 출력입니다.
    출력 노드의 attach 잎은 텔레교정기 결합에 쓰입니다.
    """
    n = int(form.basis.shape[1])
    layers = form.encoder_layers
    depth = len(layers)
    assert depth >= 1, "인코더 층이 없는 코드는 지원하지 않습니다"
    targets = set(form.targets)
    verify_col = 2 * depth + 1
    out_col = 2 * depth + 2
    layout = ClusterLayout(name="ancilla")

    def wire(q: int, t: int) -> NodeKey:
        return (WIRE, q, t)

    # 노드 생성 순서 = 행 우선
    for q in range(n):
        for layer in range(depth):
            layout.node(wire(q, 2 * layer))
        if q in targets:
            layout.node(wire(q, 2 * depth))
        layout.node(wire(q, verify_col))
        layout.node(wire(q, out_col))
    supports = form.verifier_supports
    for k in range(len(supports)):
        layout.node((VERIFIER, k, 0))

    # 세로: 인코더 CNOT, 검증 CZ
    for layer, pairs in enumerate(layers):
        for a, b in pairs:
            low, high = min(a, b), max(a, b)
            layout.connect(BondStage.VERTICAL, wire(high, 2 * layer), wire(low, 2 * layer))
    for k, support in enumerate(supports):
        for q in support:
            layout.connect(BondStage.VERTICAL, (VERIFIER, k, 0), wire(q, verify_col))

    # 단순 가로: 대상 여분 노드 → 검증 열, 검증 열 → 출력
    for q in sorted(targets):
        layout.connect(BondStage.SIMPLE, wire(q, 2 * depth), wire(q, verify_col))
    for q in range(n):
        layout.connect(BondStage.SIMPLE, wire(q, verify_col), wire(q, out_col))

    # 병렬 가로: 인코더 층 사이
    for q in range(n):
        for layer in range(depth):
            if layer < depth - 1:
                right = wire(q, 2 * layer + 2)
            else:
                right = wire(q, 2 * depth) if q in targets else wire(q, verify_col)
            layout.connect(BondStage.PARALLEL, wire(q, 2 * layer), right, build_attempts)

    for q in range(n):
        layout.add_leaves(wire(q, out_col), ATTACH, LeafSide.RIGHT, build_attempts)
        layout.outputs.append(wire(q, out_col))

    # 열 순서로 측정, 검증 열 다음에 검증 노드
    for t in range(out_col):
        for q in range(n):
            key = (LINK, q, t) if t % 2 and t < verify_col else wire(q, t)
            if key in layout.nodes or key[0] == LINK:
                layout.measure_order.append(key)
    layout.terminating = [(VERIFIER, k, 0) for k in range(len(supports))]
    layout.measure_order.extend(layout.terminating)
    return layout


def telemodule_layout(n: int, join_attempts: int, build_attempts: int) -> ClusterLayout:
    """
    텔레교정기 절반 T, B의 마이크로클러스터

    T는 데이터 결합 잎(join)과 추출 1, 4의 잎, B는 추출 2, 3의 잎과 출력 잎을 가지며
    T의 잎 하나가 B 루트에 세로 결합됩니다.
    """
    layout = ClusterLayout(name="telemodule")
    for i in range(n):
        top, bottom = (TOP, i, 0), (BOTTOM, i, 0)
        layout.add_leaves(top, JOIN, LeafSide.VERTICAL, join_attempts)
        layout.add_leaves(top, "x1", LeafSide.VERTICAL, build_attempts)
        layout.add_leaves(top, "x4", LeafSide.VERTICAL, build_attempts)
        layout.add_leaves(bottom, "x2", LeafSide.VERTICAL, build_attempts)
        layout.add_leaves(bottom, "x3", LeafSide.VERTICAL, build_attempts)
        layout.add_leaves(bottom, OUTPUT, LeafSide.RIGHT, join_attempts)
        layout.connect(BondStage.VERTICAL, top, bottom)
        layout.outputs.append(bottom)
    return layout
