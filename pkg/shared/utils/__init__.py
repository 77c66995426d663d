"""
Shared Utils 패키지

GF(2) 선형대수와 시드 유도 유틸리티를 제공합니다.
"""

from shared.utils.gf2 import (
    RowEchelon,
    SingularMatrixError,
    as_bits,
    bits_to_int,
    in_row_space,
    int_to_bits,
    mat_vec,
    rank,
    reduce_vector,
    right_inverse,
    row_echelon,
)
from shared.utils.seeding import chunk_bounds, trial_rng, trial_seed_sequence

__all__ = [
    # Exceptions
    "SingularMatrixError",
    # GF(2)
    "RowEchelon",
    "as_bits",
    "row_echelon",
    "rank",
    "reduce_vector",
    "in_row_space",
    "right_inverse",
    "mat_vec",
    "bits_to_int",
    "int_to_bits",
    # Seeding
    "trial_seed_sequence",
    "trial_rng",
    "chunk_bounds",
]
