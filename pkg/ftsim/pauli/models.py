"""
Pauli 모듈 모델

비트 단위 Pauli 오류, 노드 오류, 클러스터 그래프를 정의합니다.
양자 상태나 Pauli 프레임 값 자체는 저장하지 않고 그 오류만 추적합니다.
"""

import json
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import networkx as nx


@dataclass(frozen=True, slots=True)
class PauliBits:
    """X^x Z^z (전역 위상 무시, Y = x=1,z=1)"""

    x: int = 0
    z: int = 0

    def __xor__(self, other: "PauliBits") -> "PauliBits":
        return PauliBits(self.x ^ other.x, self.z ^ other.z)

    @property
    def is_identity(self) -> bool:
        return not (self.x or self.z)

    @property
    def label(self) -> str:
        return "IZXY"[(self.x << 1) | self.z]

    @classmethod
    def from_label(cls, label: str) -> "PauliBits":
        index = "IZXY".index(label.upper())
        return cls(index >> 1, index & 1)


I = PauliBits(0, 0)
X = PauliBits(1, 0)
Z = PauliBits(0, 1)
Y = PauliBits(1, 1)
PAULIS = (I, X, Y, Z)


@dataclass(slots=True)
class NodeError:
    """노드의 물리 오류와 Pauli 프레임 오류"""

    phys: PauliBits = I
    frame: PauliBits = I

    @property
    def total(self) -> PauliBits:
        return self.phys ^ self.frame

    def copy(self) -> "NodeError":
        return NodeError(self.phys, self.frame)


class NodeRole(StrEnum):
    """클러스터 노드 역할"""

    ROOT = "root"
    LEAF = "leaf"
    AUX = "aux"


class BondKind(StrEnum):
    """결합 종류 (배치 시점에 지정되는 메타데이터)"""

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass
class ClusterGraph:
    """
    클러스터 그래프

    networkx.Graph 위에 노드 오류/역할과 결합 종류를 얹은 구조입니다.
    가로 결합은 origin(왼쪽 끝점)을 함께 저장합니다.
    측정된 노드는 간선과 함께 그래프에서 제거됩니다.
    """

    graph: nx.Graph = field(default_factory=nx.Graph)
    _next_id: int = 0

    # ==========================================================================
    # 노드/간선 구성
    # ==========================================================================

    def add_node(
        self,
        role: NodeRole = NodeRole.ROOT,
        error: NodeError | None = None,
        label: Any = None,
    ) -> int:
        """새 노드 추가 후 ID 반환"""
        node = self._next_id
        self._next_id += 1
        self.graph.add_node(node, error=error or NodeError(), role=role, label=label)
        return node

    def add_bond(self, u: int, v: int, kind: BondKind, origin: int | None = None) -> None:
        """결합 추가 (가로 결합은 origin 필수)"""
        assert u != v and u in self.graph and v in self.graph
        assert not self.graph.has_edge(u, v), f"중복 결합 {u}-{v}"
        if kind is BondKind.HORIZONTAL:
            assert origin in (u, v), "가로 결합은 왼쪽 끝점이 필요합니다"
        else:
            origin = None
        self.graph.add_edge(u, v, kind=kind, origin=origin)

    def remove(self, node: int) -> None:
        """노드와 간선 제거"""
        self.graph.remove_node(node)

    def absorb(self, other: "ClusterGraph") -> dict[int, int]:
        """다른 그래프를 새 ID로 복사해 합치고 ID 매핑 반환"""
        mapping: dict[int, int] = {}
        for node in sorted(other.graph.nodes):
            data = other.graph.nodes[node]
            mapping[node] = self.add_node(data["role"], data["error"], data["label"])
        for u, v, data in other.graph.edges(data=True):
            origin = mapping[data["origin"]] if data["origin"] is not None else None
            self.add_bond(mapping[u], mapping[v], data["kind"], origin)
        return mapping

    # ==========================================================================
    # 조회
    # ==========================================================================

    def __contains__(self, node: object) -> bool:
        return node in self.graph

    def __len__(self) -> int:
        return int(self.graph.number_of_nodes())

    def error(self, node: int) -> NodeError:
        return self.graph.nodes[node]["error"]  # type: ignore[no-any-return]

    def set_error(self, node: int, error: NodeError) -> None:
        self.graph.nodes[node]["error"] = error

    def role(self, node: int) -> NodeRole:
        return self.graph.nodes[node]["role"]  # type: ignore[no-any-return]

    def set_role(self, node: int, role: NodeRole) -> None:
        self.graph.nodes[node]["role"] = role

    def label(self, node: int) -> Any:
        return self.graph.nodes[node]["label"]

    def nodes(self) -> list[int]:
        return sorted(self.graph.nodes)

    def neighbors(self, node: int) -> list[int]:
        return sorted(self.graph.neighbors(node))

    def bond(self, u: int, v: int) -> tuple[BondKind, int | None]:
        data = self.graph.edges[u, v]
        return data["kind"], data["origin"]

    def vertical_neighbors(self, node: int) -> list[int]:
        return [n for n in self.neighbors(node) if self.bond(node, n)[0] is BondKind.VERTICAL]

    def horizontal_neighbors(self, node: int) -> list[int]:
        return [n for n in self.neighbors(node) if self.bond(node, n)[0] is BondKind.HORIZONTAL]

    def right_neighbor(self, node: int) -> int | None:
        """node가 왼쪽 끝인 가로 결합의 상대 노드"""
        right = [n for n in self.horizontal_neighbors(node) if self.bond(node, n)[1] == node]
        assert len(right) <= 1, f"노드 {node}의 오른쪽 가로 결합이 여러 개입니다"
        return right[0] if right else None

    # ==========================================================================
    # 디버그 덤프
    # ==========================================================================

    def to_adjacency(self) -> dict[str, Any]:
        """노드 역할과 결합 종류를 포함한 인접 리스트"""
        return {
            "nodes": [
                {
                    "id": node,
                    "role": str(self.role(node)),
                    "label": self.label(node),
                    "phys": self.error(node).phys.label,
                    "frame": self.error(node).frame.label,
                }
                for node in self.nodes()
            ],
            "edges": [
                {"u": u, "v": v, "kind": str(d["kind"]), "origin": d["origin"]}
                for u, v, d in sorted(self.graph.edges(data=True))
            ],
        }

    def to_adjacency_json(self) -> str:
        return json.dumps(self.to_adjacency(), default=str, sort_keys=True)
