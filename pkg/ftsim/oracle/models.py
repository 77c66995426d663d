"""
Oracle 모듈 모델

stim 안정자 시뮬레이터 상태와 측정 스케줄 연산을 정의합니다.
테스트 전용 기준 시뮬레이터이며 성능은 고려하지 않습니다.
"""

from dataclasses import dataclass, field

import networkx as nx
import numpy as np
import stim

from ftsim.pauli.models import PauliBits

MAX_QUBITS = 24


class CoinStream:
    """
    무작위 측정 결과용 동전 스트림

    rng가 있으면 새 동전을 뽑아 기록하고, 고정 목록이 있으면 순서대로 재생합니다.
    목록이 소진되면 0을 냅니다.
    """

    def __init__(self, rng: np.random.Generator | None = None, coins: list[int] | None = None):
        self._rng = rng
        self._replay = list(coins) if coins is not None else None
        self.drawn: list[int] = []

    def next(self) -> int:
        if self._replay is not None:
            index = len(self.drawn)
            coin = self._replay[index] if index < len(self._replay) else 0
        else:
            assert self._rng is not None
            coin = int(self._rng.integers(2))
        self.drawn.append(coin)
        return coin


@dataclass
class StabilizerTableau:
    """
    기준 시뮬레이터 실행 상태

    sim은 물리 큐비트 상태, graph는 아직 측정되지 않은 노드의 결합 구조입니다.
    graph 간선은 kind와 origin 속성을 가지며 ClusterGraph와 같은 의미입니다.
    부산물 보정은 측정 직후 sim에 물리적으로 적용되므로 원시 결과가 곧 해석 결과입니다.
    """

    sim: stim.TableauSimulator
    index: dict[int, int]
    graph: nx.Graph

    def qubit(self, node: int) -> int:
        return self.index[node]

    def pauli(self, node: int, pauli: PauliBits) -> None:
        """노드에 Pauli 적용 (전역 위상 무시)"""
        q = self.index[node]
        if pauli.x:
            self.sim.x(q)
        if pauli.z:
            self.sim.z(q)

    def expectation(self, paulis: dict[int, str]) -> int:
        """노드별 Pauli 곱의 기댓값 (+1, -1, 결정적이지 않으면 0)"""
        chars = ["_"] * len(self.index)
        for node, label in paulis.items():
            chars[self.index[node]] = label
        return int(self.sim.peek_observable_expectation(stim.PauliString("".join(chars))))


# ==========================================================================
# 측정 스케줄
# ==========================================================================


@dataclass(frozen=True)
class Inject:
    """노드에 물리 Pauli 오류 주입"""

    node: int
    pauli: PauliBits


@dataclass(frozen=True)
class Fuse:
    """융합 시도 (keep 쪽이 병합 노드로 남음)"""

    keep: int
    other: int
    success: bool


@dataclass(frozen=True)
class MeasureX:
    node: int


@dataclass(frozen=True)
class MeasureZ:
    node: int


ScheduleOp = Inject | Fuse | MeasureX | MeasureZ


@dataclass
class Schedule:
    """클러스터 그래프 위의 연산 순서"""

    ops: list[ScheduleOp] = field(default_factory=list)

    def without_injections(self) -> "Schedule":
        return Schedule([op for op in self.ops if not isinstance(op, Inject)])

    def injections(self) -> list[Inject]:
        return [op for op in self.ops if isinstance(op, Inject)]

    def only_injection(self, keep: Inject) -> "Schedule":
        """keep 하나만 남긴 스케줄"""
        return Schedule([op for op in self.ops if not isinstance(op, Inject) or op is keep])
