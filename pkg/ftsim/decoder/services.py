"""
Decoder 모듈 서비스

위치 오류와 비위치 오류가 섞인 한 CSS 섹터의 최대우도 디코딩입니다.

가능도 모델은 무게만 봅니다. 위치 오류 패턴은 모두 같은 가능도를 갖고,
비위치 오류는 무게가 작을수록 가능도가 큽니다. 위치 부분집합 L'마다
s' = s XOR syndrome(L')의 표준 디코딩 패턴을 찾아 무게가 최소인 쌍을 고릅니다.
"""

import logging
from collections.abc import Sequence
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from ftsim.codes.models import CssCode
from ftsim.codes.services import get_code
from ftsim.core.config import settings
from ftsim.decoder.exceptions import InvalidSyndromeError, LocatedCapExceededError
from ftsim.decoder.schemas import DecodeInput, DecodeResult
from shared.utils.gf2 import BitVector, bits_to_int, in_row_space

logger = logging.getLogger(__name__)


class SectorCorrection(NamedTuple):
    """한 섹터 디코딩 결과 (시뮬레이션 내부용)"""

    correction: BitVector
    located_crash: bool


@lru_cache(maxsize=8)
def _decode_weights(code: CssCode) -> npt.NDArray[np.int64]:
    return code.decode_array.sum(axis=1).astype(np.int64)


def located_cap(code: CssCode) -> int:
    """열거 가능한 위치 오류 수 (설정이 없으면 블록 길이)"""
    return settings.LOCATED_CAP if settings.LOCATED_CAP is not None else code.n


def _subset_syndromes(code: CssCode, located: Sequence[int]) -> npt.NDArray[np.int64]:
    """
    위치 부분집합 마스크별 신드롬 정수

    마스크 비트 k는 located[k]를 뜻하며 배열 인덱스가 곧 마스크입니다.
    """
    table = np.zeros(1 << len(located), dtype=np.int64)
    for k, q in enumerate(located):
        half = 1 << k
        table[half : 2 * half] = table[:half] ^ code.column_syndromes[q]
    return table


def _subset_pattern(code: CssCode, located: Sequence[int], mask: int) -> BitVector:
    pattern = np.zeros(code.n, dtype=np.uint8)
    for k, q in enumerate(located):
        if (mask >> k) & 1:
            pattern[q] = 1
    return pattern


@lru_cache(maxsize=65536)
def _decode_cached(
    code_name: str, syndrome_value: int, located: tuple[int, ...]
) -> tuple[bytes, bool]:
    code = get_code(code_name)
    subset_syndromes = _subset_syndromes(code, located)
    residual_syndromes = subset_syndromes ^ syndrome_value
    weights = _decode_weights(code)[residual_syndromes]
    minimizers = np.nonzero(weights == weights.min())[0]

    def total(mask: int) -> BitVector:
        return code.decode_array[residual_syndromes[mask]] ^ _subset_pattern(code, located, mask)

    # 마스크 오름차순 첫 최소 후보를 채택
    chosen = total(int(minimizers[0]))
    crash = False
    for mask in minimizers[1:]:
        if not in_row_space(code.row_space, total(int(mask)) ^ chosen):
            crash = True
            break
    return chosen.tobytes(), crash


def ml_decode_sector(
    code: CssCode,
    syndrome_value: int,
    located: Sequence[int] = (),
) -> SectorCorrection:
    """
    한 섹터 최대우도 디코딩

    Args:
        code: CSS 코드
        syndrome_value: 신드롬 정수 (행 k가 2^k 자리)
        located: 위치를 아는 큐비트 인덱스

    Returns:
        교정 패턴과 위치 붕괴 플래그. 교정 패턴의 신드롬은 입력과 같습니다.

    Raises:
        LocatedCapExceededError: 위치 오류 수가 한도를 넘는 경우
    """
    positions = tuple(sorted(set(int(q) for q in located)))
    cap = located_cap(code)
    if len(positions) > cap:
        raise LocatedCapExceededError(len(positions), cap)
    raw, crash = _decode_cached(code.name, int(syndrome_value), positions)
    return SectorCorrection(np.frombuffer(raw, dtype=np.uint8).copy(), crash)


def ml_decode_pair(
    code: CssCode,
    x_syndrome: int,
    z_syndrome: int,
    located: Sequence[int] = (),
) -> tuple[SectorCorrection, SectorCorrection]:
    """X/Z 섹터를 독립적으로 디코딩 (같은 위치 목록 공유)"""
    return ml_decode_sector(code, x_syndrome, located), ml_decode_sector(code, z_syndrome, located)


def ml_decode(code: CssCode, data: DecodeInput) -> DecodeResult:
    """
    decode 서브커맨드용 디코딩

    Raises:
        InvalidSyndromeError: 신드롬 길이 또는 위치 인덱스가 코드와 맞지 않는 경우
    """
    if len(data.syndrome) != code.r:
        raise InvalidSyndromeError(
            code.name, f"신드롬 길이 {len(data.syndrome)}가 검사 행 수 {code.r}와 다릅니다"
        )
    if any(q >= code.n for q in data.located):
        raise InvalidSyndromeError(code.name, f"위치 인덱스는 0 이상 {code.n} 미만이어야 합니다")

    result = ml_decode_sector(code, bits_to_int(data.syndrome), data.located)
    logger.info(
        "디코딩 완료",
        extra={
            "code": code.name,
            "located": len(data.located),
            "located_crash": result.located_crash,
        },
    )
    return DecodeResult(
        correction=[int(bit) for bit in result.correction],
        located_crash=result.located_crash,
    )
