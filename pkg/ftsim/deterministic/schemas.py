"""
Deterministic 모듈 스키마

레벨 2 이상의 유효 잡음 모델(비위치 p, 위치 q)과 회로 큐비트 상태,
simulate-det 실행 설정을 정의합니다.
"""

from dataclasses import dataclass, field
from enum import IntFlag

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ftsim.core.config import settings
from ftsim.core.schemas import RunConfig
from ftsim.pauli.models import I, PauliBits


class EffNoiseParams(BaseModel):
    """유효 잡음 파라미터"""

    model_config = ConfigDict(frozen=True)

    p: float = Field(default=0.0, ge=0.0, le=1.0, description="비위치 잡음 확률")
    q: float = Field(default=0.0, ge=0.0, le=1.0, description="위치 잡음 확률")
    memory_noise: bool = Field(default=True, description="유휴 큐비트 메모리 잡음 적용 여부")
    meas_scale: float = Field(default=settings.MEAS_SCALE, ge=0.0, le=1.0, description="측정 잡음 배율")

    def as_dict(self) -> dict[str, float]:
        return {"p": self.p, "q": self.q}


class LocatedMark(IntFlag):
    """실험자가 아는 위치 잡음 표시 (섹터별)"""

    NONE = 0
    X = 1
    Z = 2
    BOTH = 3


@dataclass(slots=True)
class CircuitQubit:
    """회로 큐비트: 숨은 오류와 공개된 위치 표시"""

    err: PauliBits = I
    mark: LocatedMark = LocatedMark.NONE


@dataclass
class QubitRegister:
    """
    큐비트 레지스터 (섹터별 오류 비트와 위치 표시)

    오류 비트는 시뮬레이터만 보고, 위치 표시는 디코더에 전달됩니다.
    """

    x: npt.NDArray[np.uint8]
    z: npt.NDArray[np.uint8]
    x_mark: npt.NDArray[np.bool_] = field(default=None)  # type: ignore[assignment]
    z_mark: npt.NDArray[np.bool_] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.x_mark is None:
            self.x_mark = np.zeros(self.x.shape, dtype=np.bool_)
        if self.z_mark is None:
            self.z_mark = np.zeros(self.z.shape, dtype=np.bool_)

    @classmethod
    def zeros(cls, size: int) -> "QubitRegister":
        return cls(np.zeros(size, dtype=np.uint8), np.zeros(size, dtype=np.uint8))

    def __len__(self) -> int:
        return int(self.x.shape[0])

    def copy(self) -> "QubitRegister":
        return QubitRegister(self.x.copy(), self.z.copy(), self.x_mark.copy(), self.z_mark.copy())

    def qubit(self, index: int) -> CircuitQubit:
        mark = LocatedMark.NONE
        if self.x_mark[index]:
            mark |= LocatedMark.X
        if self.z_mark[index]:
            mark |= LocatedMark.Z
        return CircuitQubit(PauliBits(int(self.x[index]), int(self.z[index])), mark)


class DetSimulateConfig(RunConfig):
    """simulate-det 실행 설정"""

    points: list[tuple[float, float]] = Field(
        ...,
        min_length=1,
        description="(p, q) 격자점 목록",
        examples=[[[1e-3, 0.0], [2e-3, 0.01]]],
    )
    meas_scale: float = Field(default=settings.MEAS_SCALE, ge=0.0, le=1.0)
    warmup_rounds: int = Field(default=1, ge=0, description="통계에서 제외하는 예열 라운드 수")

    @model_validator(mode="after")
    def validate_points(self) -> "DetSimulateConfig":
        """격자점 범위 검증"""
        for p, q in self.points:
            if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
                raise ValueError(f"잡음 파라미터는 [0, 1] 범위여야 합니다: ({p}, {q})")
        return self
