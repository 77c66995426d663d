"""
시드 유도 유틸리티 테스트
"""

import numpy as np

from shared.utils.seeding import chunk_bounds, trial_rng


class TestTrialRng:
    """trial_rng 테스트"""

    def test_same_indices_same_stream(self):
        """같은 (시드, 격자점, 시행)은 같은 스트림"""
        # When
        a = trial_rng(7, 2, 11).random(5)
        b = trial_rng(7, 2, 11).random(5)

        # Then
        assert np.array_equal(a, b)

    def test_neighbouring_trials_differ(self):
        """시행 인덱스가 다르면 다른 스트림"""
        a = trial_rng(7, 2, 11).random(5)
        b = trial_rng(7, 2, 12).random(5)
        c = trial_rng(7, 3, 11).random(5)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)


class TestChunkBounds:
    """chunk_bounds 테스트"""

    def test_fixed_chunks_with_remainder(self):
        """마지막 청크만 짧음"""
        assert chunk_bounds(5000, 2000) == [(0, 2000), (2000, 4000), (4000, 5000)]

    def test_single_chunk(self):
        """시행 수가 청크보다 작으면 청크 하나"""
        assert chunk_bounds(3, 2000) == [(0, 3)]
