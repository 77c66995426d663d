"""
GF(2) 선형대수 유틸리티

검사 행렬 표준화, 행 공간 포함 판정, 우역행렬 계산을 제공합니다.
연산은 galois.GF2 위에서 하고, 입출력 행렬은 0/1 값의 numpy uint8 배열입니다.
"""

from dataclasses import dataclass

import galois
import numpy as np
import numpy.typing as npt

BitMatrix = npt.NDArray[np.uint8]
BitVector = npt.NDArray[np.uint8]

GF2 = galois.GF(2)


class SingularMatrixError(Exception):
    """행 랭크가 부족하여 우역행렬이 없음"""

    pass


@dataclass(frozen=True)
class RowEchelon:
    """기약 행사다리꼴 결과"""

    matrix: BitMatrix  # 0이 아닌 행만 남긴 RREF
    pivots: tuple[int, ...]  # 각 행의 피벗 열
    transform: BitMatrix  # transform @ 원본 = RREF (0 행 포함 전체)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def as_bits(matrix: npt.ArrayLike) -> BitMatrix:
    """임의 정수 배열을 mod 2 uint8 배열로 변환"""
    return (np.asarray(matrix, dtype=np.int64) & 1).astype(np.uint8)


def _plain(array: galois.FieldArray) -> BitMatrix:
    return np.asarray(array, dtype=np.uint8)


def row_echelon(matrix: npt.ArrayLike) -> RowEchelon:
    """
    GF(2) 기약 행사다리꼴 계산

    [A | I]를 앞 n열만 기준으로 행 축약해 RREF와 변환 행렬을 함께 얻습니다.

    Args:
        matrix: m x n 이진 행렬

    Returns:
        RREF 행렬, 피벗 열, 변환 행렬
    """
    bits = as_bits(matrix)
    m, n = bits.shape
    augmented = GF2(np.hstack([bits, np.eye(m, dtype=np.uint8)]))
    reduced = _plain(augmented.row_reduce(ncols=n))
    rref, transform = reduced[:, :n], reduced[:, n:]
    pivots = tuple(int(np.flatnonzero(row)[0]) for row in rref if row.any())
    return RowEchelon(matrix=rref[: len(pivots)].copy(), pivots=pivots, transform=transform.copy())


def rank(matrix: npt.ArrayLike) -> int:
    """GF(2) 랭크"""
    return int(np.linalg.matrix_rank(GF2(as_bits(matrix))))


def reduce_vector(echelon: RowEchelon, vector: npt.ArrayLike) -> BitVector:
    """RREF 기저로 벡터를 소거한 나머지 (피벗 열은 모두 0)"""
    rest = GF2(as_bits(vector))
    if not echelon.rank:
        return _plain(rest)
    coefficients = rest[list(echelon.pivots)]
    return _plain(rest - coefficients @ GF2(echelon.matrix))


def in_row_space(echelon: RowEchelon, vector: npt.ArrayLike) -> bool:
    """벡터가 행 공간에 속하는지 판정"""
    return not reduce_vector(echelon, vector).any()


def right_inverse(matrix: npt.ArrayLike) -> BitMatrix:
    """
    H @ R = I (mod 2)를 만족하는 우역행렬 R 계산

    Args:
        matrix: 행 랭크가 꽉 찬 r x n 이진 행렬

    Returns:
        n x r 이진 행렬

    Raises:
        SingularMatrixError: 행 랭크가 r보다 작은 경우
    """
    bits = as_bits(matrix)
    m, n = bits.shape
    echelon = row_echelon(bits)
    if echelon.rank < m:
        raise SingularMatrixError(f"행 랭크 {echelon.rank} < {m}")
    inverse = np.zeros((n, m), dtype=np.uint8)
    inverse[list(echelon.pivots)] = echelon.transform
    return inverse


def mat_vec(matrix: npt.ArrayLike, vector: npt.ArrayLike) -> BitVector:
    """GF(2) 행렬-벡터 곱"""
    return _plain(GF2(as_bits(matrix)) @ GF2(as_bits(vector)))


def bits_to_int(bits: npt.ArrayLike) -> int:
    """비트 벡터를 정수로 (인덱스 k가 2^k 자리)"""
    value = 0
    for k, bit in enumerate(as_bits(bits)):
        if bit:
            value |= 1 << k
    return value


def int_to_bits(value: int, length: int) -> BitVector:
    """정수를 길이 length의 비트 벡터로"""
    return np.array([(value >> k) & 1 for k in range(length)], dtype=np.uint8)
