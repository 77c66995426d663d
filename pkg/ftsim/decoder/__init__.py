"""
Decoder 모듈

위치/비위치 오류 혼합 최대우도 CSS 디코더입니다.
"""

from ftsim.decoder.exceptions import InvalidSyndromeError, LocatedCapExceededError
from ftsim.decoder.schemas import DecodeInput, DecodeResult
from ftsim.decoder.services import (
    SectorCorrection,
    located_cap,
    ml_decode,
    ml_decode_pair,
    ml_decode_sector,
)

__all__ = [
    # Schemas
    "DecodeInput",
    "DecodeResult",
    # Services
    "SectorCorrection",
    "located_cap",
    "ml_decode",
    "ml_decode_sector",
    "ml_decode_pair",
    # Exceptions
    "LocatedCapExceededError",
    "InvalidSyndromeError",
]
