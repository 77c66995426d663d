"""
Oracle 모듈

전파 규칙 검증용 stim 기반 기준 시뮬레이터입니다 (테스트 전용).
"""

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
)
from ftsim.oracle.services import (
    apply_op,
    core_flip_bits,
    deterministic_mask,
    deterministic_parities,
    oracle_flip_bits,
    parity,
    prepare_cluster,
    random_schedule,
    run_oracle,
)

__all__ = [
    # Models
    "MAX_QUBITS",
    "CoinStream",
    "StabilizerTableau",
    "Schedule",
    "Inject",
    "Fuse",
    "MeasureX",
    "MeasureZ",
    # Services
    "prepare_cluster",
    "apply_op",
    "run_oracle",
    "oracle_flip_bits",
    "deterministic_parities",
    "deterministic_mask",
    "parity",
    "core_flip_bits",
    "random_schedule",
    # Exceptions
    "OracleCapacityError",
]
