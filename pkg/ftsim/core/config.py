"""
통합 설정 모듈

단일 설정 파일로 시뮬레이션/분석 기본값을 관리합니다.
환경 변수는 FTSIM_ 접두사를 사용합니다 (예: FTSIM_LOG=DEBUG).
"""

from functools import lru_cache

from pydantic import AliasChoices, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """통합 애플리케이션 설정"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="FTSIM_",
        case_sensitive=True,
        extra="ignore",
        populate_by_name=True,
    )

    # ==========================================================================
    # 애플리케이션 기본 설정
    # ==========================================================================
    APP_NAME: str = "ftsim"
    ENVIRONMENT: str = "development"
    LOG_LEVEL: str = Field(
        default="INFO",
        validation_alias=AliasChoices("FTSIM_LOG", "FTSIM_LOG_LEVEL", "LOG_LEVEL"),
    )
    LOG_JSON: bool = False
    PROGRESS: bool = True

    # ==========================================================================
    # 임계값 반복 설정
    # ==========================================================================
    CONV_TOL: float = 1e-12
    DIV_BOUND: float = 0.5
    MAX_K: int = 200

    # ==========================================================================
    # 샘플링 설정
    # ==========================================================================
    RETRY_CAP: int = 10**6
    RESAMPLE_COUNT: int = 20
    DEFAULT_WORKERS: int = 1
    CHUNK_TRIALS: int = 2000  # 시드 분할 단위 (워커 수와 무관)

    # ==========================================================================
    # 유효 잡음 모델 (레벨 2 이상)
    # ==========================================================================
    MEAS_SCALE: float = 0.1
    FOLDED_FULL_SITES: int = 3  # CZ(D,T) 입력 2곳 + B 메모리 1곳
    FOLDED_MEAS_SITES: int = 2  # D, T 측정

    # ==========================================================================
    # 디코더 설정
    # ==========================================================================
    LOCATED_CAP: int | None = None  # None이면 블록 길이

    # ==========================================================================
    # 앤실라 회로 깊이 탐색
    # ==========================================================================
    REORDER_TRIES: int = 0  # 0이면 항등 순열
    REORDER_SEED: int = 0

    # ==========================================================================
    # 헬퍼 프로퍼티
    # ==========================================================================
    @property
    def is_production(self) -> bool:
        """프로덕션 환경 여부"""
        return self.ENVIRONMENT.lower() == "production"

    @model_validator(mode="after")
    def validate_numeric_settings(self) -> "Settings":
        """반복/샘플링 설정 검증"""
        if not 0.0 < self.DIV_BOUND <= 1.0:
            raise ValueError("DIV_BOUND는 (0, 1] 범위여야 합니다.")
        if self.CONV_TOL <= 0.0:
            raise ValueError("CONV_TOL은 양수여야 합니다.")
        if self.MAX_K < 1 or self.RETRY_CAP < 1 or self.CHUNK_TRIALS < 1:
            raise ValueError("MAX_K, RETRY_CAP, CHUNK_TRIALS는 1 이상이어야 합니다.")
        return self


@lru_cache
def get_settings() -> Settings:
    """설정 싱글톤 인스턴스 반환"""
    return Settings()


settings = get_settings()
