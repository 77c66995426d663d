"""
Cluster 모듈

레벨 1 광학 클러스터 상태 텔레교정 시뮬레이션입니다.
"""

from ftsim.cluster.builder import (
    ConstructionLedger,
    Microcluster,
    build_microcluster,
    expected_microcluster_cost,
    microcluster_steps,
    realize,
    sampled_microcluster_cost,
    stage_schedule,
)
from ftsim.cluster.layout import ClusterLayout, ancilla_layout, telemodule_layout
from ftsim.cluster.schemas import ClusterSimulateConfig, DataBlock, NoiseParams, ProtocolConfig
from ftsim.cluster.services import (
    AncillaState,
    ClusterCounter,
    JoinResult,
    Telecorrector,
    assemble_telecorrector,
    create_ancilla,
    create_telecorrector,
    join_and_correct,
    preagrees,
    run_trial,
    simulate_grid,
)

__all__ = [
    # Layout
    "ClusterLayout",
    "ancilla_layout",
    "telemodule_layout",
    # Builder
    "Microcluster",
    "ConstructionLedger",
    "build_microcluster",
    "expected_microcluster_cost",
    "sampled_microcluster_cost",
    "microcluster_steps",
    "realize",
    "stage_schedule",
    # Schemas
    "NoiseParams",
    "ProtocolConfig",
    "DataBlock",
    "ClusterSimulateConfig",
    # Services
    "AncillaState",
    "Telecorrector",
    "JoinResult",
    "ClusterCounter",
    "create_ancilla",
    "assemble_telecorrector",
    "preagrees",
    "create_telecorrector",
    "join_and_correct",
    "run_trial",
    "simulate_grid",
]
