"""
공통 스키마

모든 서브커맨드 설정이 공유하는 기본 실행 설정을 정의합니다.
"""

import hashlib
import json
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ftsim import __version__
from ftsim.core.config import settings

CodeName = Literal["steane7", "golay23"]


# ==========================================================================
# 실행 설정 기본 스키마
# ==========================================================================


class RunConfig(BaseModel):
    """서브커맨드 공통 실행 설정"""

    model_config = ConfigDict(extra="forbid")

    seed: int = Field(..., ge=0, description="마스터 시드 (필수, 벽시계 기본값 없음)")
    workers: int = Field(default=settings.DEFAULT_WORKERS, ge=1, description="워커 프로세스 수")
    out: Path = Field(default=Path("out"), description="출력 디렉토리")
    code: CodeName = Field(default="steane7", description="CSS 코드 이름")
    memory_noise: bool = Field(default=True, description="메모리 잡음 적용 여부")
    trials: int = Field(default=1000, ge=1, description="격자점당 시행 수")

    @field_validator("memory_noise", mode="before")
    @classmethod
    def parse_on_off(cls, v: object) -> object:
        """on/off 문자열 허용"""
        if isinstance(v, str) and v.lower() in {"on", "off"}:
            return v.lower() == "on"
        return v

    def config_hash(self) -> str:
        """정규화된 JSON 덤프의 SHA-256 앞 16자리 (workers/out 제외)"""
        payload = self.model_dump(mode="json", exclude={"workers", "out"})
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    def meta(self) -> "RunMeta":
        """출력 파일 헤더용 메타데이터"""
        return RunMeta(version=__version__, config_hash=self.config_hash(), seed=self.seed)


class RunMeta(BaseModel):
    """출력 파일에 포함되는 실행 메타데이터"""

    version: str
    config_hash: str
    seed: int
