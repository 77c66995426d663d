"""
Decoder 모듈 스키마

decode 서브커맨드 입력/출력 JSON 스키마를 정의합니다.
"""

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ftsim.core.schemas import CodeName


class DecodeInput(BaseModel):
    """한 섹터 디코딩 입력"""

    model_config = ConfigDict(extra="forbid")

    code: CodeName = Field(default="steane7", description="CSS 코드 이름")
    syndrome: list[int] = Field(..., description="신드롬 비트 (행 k가 k번째 원소)", examples=[[0, 0, 1]])
    located: list[int] = Field(
        default_factory=list, description="위치를 아는 큐비트 인덱스", examples=[[0, 1]]
    )

    @field_validator("syndrome")
    @classmethod
    def validate_bits(cls, v: list[int]) -> list[int]:
        """0/1 값만 허용"""
        if any(bit not in (0, 1) for bit in v):
            raise ValueError("신드롬 비트는 0 또는 1이어야 합니다.")
        return v

    @field_validator("located")
    @classmethod
    def validate_located(cls, v: list[int]) -> list[int]:
        """중복 없는 음이 아닌 인덱스, 오름차순 정렬"""
        if len(set(v)) != len(v):
            raise ValueError("위치 인덱스가 중복되었습니다.")
        if any(index < 0 for index in v):
            raise ValueError("위치 인덱스는 0 이상이어야 합니다.")
        return sorted(v)


class DecodeResult(BaseModel):
    """디코딩 결과"""

    correction: list[int] = Field(..., description="n비트 교정 패턴")
    located_crash: bool = Field(..., description="동일 최대우도 후보가 논리 연산자만큼 다름")
