"""
재현 가능한 병렬 몬테카를로 시드 유틸리티

(master_seed, point_index, trial_index)에서 독립 난수 스트림을 유도합니다.
워커 수와 무관하게 같은 시행은 항상 같은 스트림을 받습니다.
"""

import numpy as np


def trial_seed_sequence(
    master_seed: int, point_index: int, trial_index: int
) -> np.random.SeedSequence:
    """시행별 SeedSequence (엔트로피 튜플로 분할)"""
    return np.random.SeedSequence([master_seed, point_index, trial_index])


def trial_rng(master_seed: int, point_index: int, trial_index: int) -> np.random.Generator:
    """
    시행별 난수 생성기

    Args:
        master_seed: 실행 마스터 시드
        point_index: 잡음 격자점 인덱스
        trial_index: 격자점 내 시행 인덱스

    Returns:
        PCG64 기반 Generator
    """
    sequence = trial_seed_sequence(master_seed, point_index, trial_index)
    return np.random.Generator(np.random.PCG64(sequence))


def chunk_bounds(trials: int, chunk: int) -> list[tuple[int, int]]:
    """시행 범위를 고정 크기 청크 [start, stop)로 분할"""
    return [(start, min(start + chunk, trials)) for start in range(0, trials, chunk)]
