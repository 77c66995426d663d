"""
GF(2) 선형대수 유틸리티 테스트
"""

import numpy as np
import pytest

from shared.utils.gf2 import (
    SingularMatrixError,
    bits_to_int,
    in_row_space,
    int_to_bits,
    mat_vec,
    rank,
    reduce_vector,
    right_inverse,
    row_echelon,
)

HAMMING = np.array(
    [
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ],
    dtype=np.uint8,
)


class TestRowEchelon:
    """row_echelon 테스트"""

    def test_hamming_pivots(self):
        """Hamming 검사 행렬은 이미 기약 행사다리꼴"""
        # When
        echelon = row_echelon(HAMMING)

        # Then
        assert echelon.rank == 3
        assert echelon.pivots == (0, 1, 3)

    def test_transform_reproduces_rref(self):
        """변환 행렬 @ 원본 = RREF"""
        # Given
        matrix = np.array([[1, 1, 0, 1], [1, 1, 0, 1], [0, 1, 1, 0]], dtype=np.uint8)

        # When
        echelon = row_echelon(matrix)

        # Then
        product = (echelon.transform.astype(np.int64) @ matrix.astype(np.int64)) & 1
        assert echelon.rank == 2
        assert np.array_equal(product[: echelon.rank], echelon.matrix)
        assert not product[echelon.rank :].any()

    def test_rank_of_duplicate_rows(self):
        """중복 행은 랭크에 기여하지 않음"""
        assert rank(np.vstack([HAMMING, HAMMING[0] ^ HAMMING[1]])) == 3


class TestRowSpace:
    """in_row_space 테스트"""

    def test_row_sum_is_member(self):
        """행의 합은 행 공간에 속함"""
        echelon = row_echelon(HAMMING)
        assert in_row_space(echelon, HAMMING[0] ^ HAMMING[2])

    def test_weight_three_codeword_is_not_member(self):
        """무게 3 코드워드는 행 공간 밖"""
        echelon = row_echelon(HAMMING)
        assert not in_row_space(echelon, [1, 1, 1, 0, 0, 0, 0])

    def test_residue_vanishes_on_pivots(self):
        """소거 나머지는 피벗 열에서 0이고 원래 벡터와 같은 잉여류"""
        # Given
        shuffled = HAMMING[:, [6, 2, 4, 0, 5, 1, 3]]
        echelon = row_echelon(shuffled)
        vector = np.array([1, 0, 0, 1, 1, 0, 1], dtype=np.uint8)

        # When
        rest = reduce_vector(echelon, vector)

        # Then
        assert not rest[list(echelon.pivots)].any()
        assert in_row_space(echelon, rest ^ vector)


class TestRightInverse:
    """right_inverse 테스트"""

    def test_product_is_identity(self):
        """H @ R = I"""
        # When
        inverse = right_inverse(HAMMING)

        # Then
        product = (HAMMING.astype(np.int64) @ inverse.astype(np.int64)) & 1
        assert np.array_equal(product, np.eye(3, dtype=np.int64))

    def test_permuted_golay_checks(self, golay):
        """열 순열된 Golay 검사 행렬도 H @ R = I"""
        # Given
        checks = golay.checks[:, np.random.default_rng(5).permutation(golay.n)]

        # When
        inverse = right_inverse(checks)

        # Then
        product = (checks.astype(np.int64) @ inverse.astype(np.int64)) & 1
        assert inverse.shape == (golay.n, 11)
        assert np.array_equal(product, np.eye(11, dtype=np.int64))

    def test_rank_deficient_raises(self):
        """행 랭크 부족이면 SingularMatrixError"""
        with pytest.raises(SingularMatrixError):
            right_inverse([[1, 1], [1, 1]])


class TestBitConversion:
    """비트 변환 테스트"""

    def test_bits_to_int_little_endian(self):
        """인덱스 k가 2^k 자리"""
        assert bits_to_int([1, 0, 1]) == 5
        assert np.array_equal(int_to_bits(5, 4), [1, 0, 1, 0])

    def test_mat_vec_mod_two(self):
        """행렬-벡터 곱은 mod 2"""
        error = np.zeros(7, dtype=np.uint8)
        error[6] = 1
        assert np.array_equal(mat_vec(HAMMING, error), [1, 1, 1])
