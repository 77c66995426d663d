"""
텔레교정 회로 구성

검증된 |0_L> 앤실라 회로와 텔레교정기(데이터 D, 윗절반 T, 아랫절반 B,
앤실라 A1..A4) 연산 목록을 만듭니다. 연산은 시간 단계별로 묶이며
같은 단계에서 연산을 받지 않은 살아 있는 큐비트는 유휴 큐비트입니다.
"""

import json
from collections import defaultdict
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from typing import Any

import numpy as np
import numpy.typing as npt

from ftsim.codes.models import StandardForm

CODE = "code"
VERIFY = "verify"

DATA = "D"
TOP = "T"
BOTTOM = "B"
ANCILLAS = ("A1", "A2", "A3", "A4")

# 측정 라벨 → 검출하는 섹터 라벨 (1, 4는 윗절반, 2, 3은 아랫절반)
# 시간 순서 X, Z, X, Z 추출(반복 쌍 1-3, 2-4)을 같은 섹터끼리 같은 절반에 모은 배치라
# 반복 쌍은 1-4 (Z), 2-3 (X)입니다. cluster.services.preagrees도 이 쌍을 씁니다.
SYNDROME_LABELS = {"1": "Z", "2": "X", "3": "X", "4": "Z"}


class GateKind(StrEnum):
    PREP_ZERO = "prep_zero"
    PREP_PLUS = "prep_plus"
    H = "h"
    CNOT = "cnot"
    CZ = "cz"
    MEASURE_X = "measure_x"
    MEMORY = "memory"


TWO_QUBIT = frozenset({GateKind.CNOT, GateKind.CZ})
PREPARATIONS = frozenset({GateKind.PREP_ZERO, GateKind.PREP_PLUS})


@dataclass(frozen=True)
class CircuitOp:
    """
    한 시간 단계의 트랜스버설(또는 층 단위) 연산

    2큐비트 게이트는 other 레지스터의 controls와 register의 targets를 짝지어 적용합니다.
    forced가 참인 MEMORY는 메모리 잡음 플래그와 무관하게 적용됩니다.
    """

    step: int
    kind: GateKind
    register: str
    targets: tuple[int, ...]
    other: str | None = None
    controls: tuple[int, ...] = ()
    label: str | None = None
    forced: bool = False

    @property
    def qubit_locations(self) -> int:
        return len(self.targets) + len(self.controls)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "step": self.step,
            "kind": str(self.kind),
            "register": self.register,
            "targets": list(self.targets),
        }
        if self.other is not None:
            data["other"] = self.other
            data["controls"] = list(self.controls)
        if self.label is not None:
            data["label"] = self.label
        if self.forced:
            data["forced"] = True
        return data


@dataclass(frozen=True)
class OpCounts:
    """회로 연산 수와 잡음 위치 수"""

    gates: int
    preparations: int
    measurements: int
    full_sites: int  # 전체 잡음 큐비트 위치 (유휴 포함)
    meas_sites: int  # 측정 잡음 큐비트 위치

    @property
    def operations(self) -> int:
        return self.gates + self.preparations + self.measurements


@dataclass
class TelecorrectorCircuit:
    """
    시간 단계로 정렬된 회로

    spans[reg] = (시작 단계, 마지막 단계)는 레지스터가 살아 있는 구간입니다.
    """

    name: str
    registers: dict[str, int]
    spans: dict[str, tuple[int, int]]
    ops: list[CircuitOp] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return max(op.step for op in self.ops) + 1 if self.ops else 0

    @cached_property
    def steps(self) -> list[list[CircuitOp]]:
        grouped: dict[int, list[CircuitOp]] = defaultdict(list)
        for op in self.ops:
            grouped[op.step].append(op)
        return [grouped[s] for s in range(self.depth)]

    @cached_property
    def idle(self) -> list[dict[str, npt.NDArray[np.intp]]]:
        """단계별 유휴 큐비트 인덱스"""
        result: list[dict[str, npt.NDArray[np.intp]]] = []
        for step, ops in enumerate(self.steps):
            busy: dict[str, set[int]] = defaultdict(set)
            for op in ops:
                if op.kind is GateKind.MEMORY and not op.forced:
                    continue
                busy[op.register].update(op.targets)
                if op.other is not None:
                    busy[op.other].update(op.controls)
            idle: dict[str, npt.NDArray[np.intp]] = {}
            for reg, size in self.registers.items():
                start, end = self.spans[reg]
                if start <= step <= end:
                    free = [q for q in range(size) if q not in busy[reg]]
                    if free:
                        idle[reg] = np.asarray(free, dtype=np.intp)
            result.append(idle)
        return result

    def counts(self, memory_noise: bool, steps: range | None = None) -> OpCounts:
        """연산 수 집계 (steps가 주어지면 해당 구간만)"""
        window = range(self.depth) if steps is None else steps
        gates = preparations = measurements = full = meas = 0
        for step in window:
            for op in self.steps[step]:
                if op.kind in TWO_QUBIT:
                    gates += len(op.targets)
                    full += op.qubit_locations
                elif op.kind is GateKind.H:
                    gates += len(op.targets)
                    full += len(op.targets)
                elif op.kind in PREPARATIONS:
                    preparations += len(op.targets)
                    full += len(op.targets)
                elif op.kind is GateKind.MEASURE_X:
                    measurements += len(op.targets)
                    meas += len(op.targets)
                elif op.forced:
                    full += len(op.targets)
            if memory_noise:
                full += sum(len(q) for q in self.idle[step].values())
        return OpCounts(gates, preparations, measurements, full, meas)

    def measurement_labels(self) -> list[str]:
        return [op.label for op in self.ops if op.kind is GateKind.MEASURE_X and op.label]

    def to_json(self) -> str:
        """연산 목록 감사용 덤프"""
        payload = {
            "name": self.name,
            "registers": self.registers,
            "spans": {reg: list(span) for reg, span in self.spans.items()},
            "depth": self.depth,
            "syndrome_labels": SYNDROME_LABELS if self.name == "telecorrector" else {},
            "ops": [op.to_dict() for op in self.ops],
        }
        return json.dumps(payload, indent=2, sort_keys=True)


# ==========================================================================
# 회로 생성
# ==========================================================================


def ancilla_circuit_det(form: StandardForm) -> TelecorrectorCircuit:
    """
    검증된 |0_L> 앤실라 회로

    피벗 |+>, 대상 |0>에서 인코더 CNOT 층을 적용하고, 검사 행과 논리 대표마다
    검증 큐비트 |+>를 CZ로 붙여 X 측정합니다. 모든 결과가 0이어야 수락됩니다.
    검증 큐비트 준비는 마지막 인코더 층과 같은 단계입니다.
    """
    n = int(form.basis.shape[1])
    encoder = form.encoder_layers
    verifier = form.verifier_layers
    depth_e = len(encoder)
    rows = len(form.verifier_supports)
    measure_step = depth_e + len(verifier) + 1

    ops = [
        CircuitOp(0, GateKind.PREP_PLUS, CODE, tuple(form.pivots)),
        CircuitOp(0, GateKind.PREP_ZERO, CODE, tuple(form.targets)),
    ]
    for layer, pairs in enumerate(encoder, start=1):
        ops.append(
            CircuitOp(
                layer,
                GateKind.CNOT,
                CODE,
                tuple(t for _, t in pairs),
                other=CODE,
                controls=tuple(c for c, _ in pairs),
            )
        )
    verify_prep = depth_e
    ops.append(CircuitOp(verify_prep, GateKind.PREP_PLUS, VERIFY, tuple(range(rows))))
    for offset, pairs in enumerate(verifier, start=1):
        ops.append(
            CircuitOp(
                depth_e + offset,
                GateKind.CZ,
                CODE,
                tuple(q for _, q in pairs),
                other=VERIFY,
                controls=tuple(k for k, _ in pairs),
            )
        )
    ops.append(
        CircuitOp(measure_step, GateKind.MEASURE_X, VERIFY, tuple(range(rows)), label="verify")
    )
    ops.sort(key=lambda op: op.step)
    return TelecorrectorCircuit(
        name="ancilla",
        registers={CODE: n, VERIFY: rows},
        spans={CODE: (0, measure_step), VERIFY: (verify_prep, measure_step)},
        ops=ops,
    )


# 텔레교정기 단계
STEP_HADAMARD = 0
STEP_EXTRACT_FIRST = 1
STEP_MEASURE_FIRST = 2
STEP_EXTRACT_SECOND = 3
STEP_MEASURE_SECOND = 4
STEP_JOIN = 5
STEP_MEASURE_DATA = 6
CREATION_STEPS = range(STEP_HADAMARD, STEP_MEASURE_SECOND + 1)
ROUND_STEPS = range(STEP_JOIN, STEP_MEASURE_DATA + 1)


def telecorrector_circuit(n: int) -> TelecorrectorCircuit:
    """
    텔레교정기 생성 + 데이터 결합 회로

    T, B는 검증된 |0_L>에 트랜스버설 H를 적용한 |+_L>입니다.
    측정 1, 4는 T의 신드롬, 2, 3은 B의 신드롬을 반복 추출하고 그 사이에
    CZ(T, B)가 두 절반을 잇습니다. 이후 CZ(D, T)와 D, T의 X 측정이 데이터를
    B로 순간이동시킵니다. CZ(D, T) 단계의 B 메모리는 항상 적용됩니다.
    """
    every = tuple(range(n))

    def cz(step: int, a: str, b: str) -> CircuitOp:
        return CircuitOp(step, GateKind.CZ, b, every, other=a, controls=every)

    def measure(step: int, reg: str, label: str) -> CircuitOp:
        return CircuitOp(step, GateKind.MEASURE_X, reg, every, label=label)

    ops = [
        CircuitOp(STEP_HADAMARD, GateKind.H, TOP, every),
        CircuitOp(STEP_HADAMARD, GateKind.H, BOTTOM, every),
        cz(STEP_EXTRACT_FIRST, TOP, "A1"),
        cz(STEP_EXTRACT_FIRST, BOTTOM, "A2"),
        measure(STEP_MEASURE_FIRST, "A1", "1"),
        measure(STEP_MEASURE_FIRST, "A2", "2"),
        cz(STEP_MEASURE_FIRST, TOP, BOTTOM),
        cz(STEP_EXTRACT_SECOND, BOTTOM, "A3"),
        cz(STEP_EXTRACT_SECOND, TOP, "A4"),
        measure(STEP_MEASURE_SECOND, "A3", "3"),
        measure(STEP_MEASURE_SECOND, "A4", "4"),
        cz(STEP_JOIN, DATA, TOP),
        CircuitOp(STEP_JOIN, GateKind.MEMORY, BOTTOM, every, forced=True),
        measure(STEP_MEASURE_DATA, DATA, "data"),
        measure(STEP_MEASURE_DATA, TOP, "top"),
    ]
    registers = {DATA: n, TOP: n, BOTTOM: n, **{a: n for a in ANCILLAS}}
    spans = {
        DATA: (STEP_JOIN, STEP_MEASURE_DATA),
        TOP: (STEP_HADAMARD, STEP_MEASURE_DATA),
        BOTTOM: (STEP_HADAMARD, STEP_MEASURE_DATA),
        "A1": (STEP_HADAMARD, STEP_MEASURE_FIRST),
        "A2": (STEP_HADAMARD, STEP_MEASURE_FIRST),
        "A3": (STEP_HADAMARD, STEP_MEASURE_SECOND),
        "A4": (STEP_HADAMARD, STEP_MEASURE_SECOND),
    }
    return TelecorrectorCircuit(name="telecorrector", registers=registers, spans=spans, ops=ops)
