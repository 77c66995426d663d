"""
Deterministic 모듈

레벨 2 이상의 회로 모델 텔레교정 시뮬레이션입니다.
"""

from ftsim.deterministic.circuit import (
    CircuitOp,
    GateKind,
    OpCounts,
    TelecorrectorCircuit,
    ancilla_circuit_det,
    telecorrector_circuit,
)
from ftsim.deterministic.schemas import (
    CircuitQubit,
    DetSimulateConfig,
    EffNoiseParams,
    LocatedMark,
    QubitRegister,
)
from ftsim.deterministic.services import (
    ScaleUpCounter,
    Telecorrector,
    apply_located,
    apply_unlocated,
    create_telecorrector,
    create_verified_zero,
    folded_located_rate,
    propagate_cnot,
    propagate_cphase,
    protocol_circuits,
    run_round_det,
    run_trial,
    simulate_grid,
)

__all__ = [
    # Circuit
    "GateKind",
    "CircuitOp",
    "OpCounts",
    "TelecorrectorCircuit",
    "ancilla_circuit_det",
    "telecorrector_circuit",
    # Schemas
    "EffNoiseParams",
    "LocatedMark",
    "CircuitQubit",
    "QubitRegister",
    "DetSimulateConfig",
    # Services
    "apply_unlocated",
    "apply_located",
    "propagate_cnot",
    "propagate_cphase",
    "folded_located_rate",
    "protocol_circuits",
    "create_verified_zero",
    "create_telecorrector",
    "Telecorrector",
    "run_round_det",
    "run_trial",
    "simulate_grid",
    "ScaleUpCounter",
]
