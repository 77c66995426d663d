"""
Cluster 모듈 스키마

레벨 1 잡음 파라미터, 프로토콜 설정, 데이터 블록, simulate-cluster 실행 설정을 정의합니다.
"""

from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ftsim.core.schemas import RunConfig
from ftsim.pauli.models import NodeError

# ==========================================================================
# 잡음 / 프로토콜 설정
# ==========================================================================


class NoiseParams(BaseModel):
    """레벨 1 물리 잡음 (탈분극 ε, 광자 손실 γ)"""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(default=0.0, ge=0.0, le=1.0, description="연산당 탈분극 확률")
    gamma: float = Field(default=0.0, ge=0.0, le=1.0, description="큐비트/시간 단계당 손실 확률")
    memory_noise: bool = Field(default=True, description="유휴 큐비트 메모리 잡음 적용 여부")

    def as_dict(self) -> dict[str, float]:
        return {"epsilon": self.epsilon, "gamma": self.gamma}


class ProtocolConfig(BaseModel):
    """클러스터 텔레교정 프로토콜 설정"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    join_attempts: int = Field(default=5, ge=1, description="데이터-텔레교정기 병렬 융합 시도 수")
    build_attempts: int = Field(default=3, ge=1, description="앤실라 구성 병렬 융합 시도 수")
    data_leaves: int = Field(default=3, ge=1, description="초기 입력 데이터의 잎 수")
    warmup_rounds: int = Field(default=1, ge=0, description="통계에서 제외하는 예열 라운드 수")
    fusion_success: float = Field(default=0.5, gt=0.0, le=1.0, description="융합 성공 확률")


@dataclass
class DataBlock:
    """
    라운드 사이에 전달되는 데이터 블록

    roots는 부호화된 상태의 오류, leaves는 다음 라운드 병렬 융합에 쓰일 잎의 오류입니다.
    pending_located는 출력 쪽 손실로 다음 결합에서 위치 오류가 될 행입니다.
    """

    roots: list[NodeError]
    leaves: list[list[NodeError]]
    pending_located: set[int] = field(default_factory=set)

    @classmethod
    def noise_free(cls, n: int, leaves: int) -> "DataBlock":
        """오류 없는 입력 상태"""
        return cls(
            roots=[NodeError() for _ in range(n)],
            leaves=[[NodeError() for _ in range(leaves)] for _ in range(n)],
        )


# ==========================================================================
# 실행 설정
# ==========================================================================


class ClusterSimulateConfig(RunConfig):
    """simulate-cluster 실행 설정"""

    points: list[tuple[float, float]] = Field(
        ...,
        min_length=1,
        description="(epsilon, gamma) 격자점 목록",
        examples=[[[1e-4, 1e-3], [2e-4, 1e-3]]],
    )
    protocol: ProtocolConfig = Field(default_factory=ProtocolConfig)

    @model_validator(mode="after")
    def validate_points(self) -> "ClusterSimulateConfig":
        """격자점 범위 검증"""
        for epsilon, gamma in self.points:
            if not (0.0 <= epsilon <= 1.0 and 0.0 <= gamma <= 1.0):
                raise ValueError(f"잡음 파라미터는 [0, 1] 범위여야 합니다: ({epsilon}, {gamma})")
        return self
