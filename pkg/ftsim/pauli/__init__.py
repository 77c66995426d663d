"""
Pauli 모듈

비트 단위 Pauli 오류 대수와 클러스터 상태 전파 규칙을 담당합니다.
"""

from ftsim.pauli.models import (
    PAULIS,
    BondKind,
    ClusterGraph,
    I,
    NodeError,
    NodeRole,
    PauliBits,
    X,
    Y,
    Z,
)
from ftsim.pauli.services import (
    add_frame,
    add_phys,
    depolarize_1q,
    depolarize_2q,
    fuse,
    fuse_fail,
    fuse_failure,
    fuse_success,
    measure_terminating_x,
    measure_z,
    propagate_vertical_stage,
    propagate_x_measure_horizontal,
    random_pauli,
    sample_loss,
    x_measure,
    z_measure,
)

__all__ = [
    # Models
    "PauliBits",
    "I",
    "X",
    "Y",
    "Z",
    "PAULIS",
    "NodeError",
    "NodeRole",
    "BondKind",
    "ClusterGraph",
    # Rules
    "propagate_x_measure_horizontal",
    "propagate_vertical_stage",
    "measure_terminating_x",
    "measure_z",
    "fuse_success",
    "fuse_failure",
    # Noise
    "depolarize_1q",
    "depolarize_2q",
    "random_pauli",
    "sample_loss",
    # Graph operations
    "add_phys",
    "add_frame",
    "x_measure",
    "z_measure",
    "fuse",
    "fuse_fail",
]
