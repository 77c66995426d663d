"""
Core 모듈

공통 설정, 예외 처리, 로깅, 실행 설정 스키마를 제공합니다.
"""

from ftsim.core.config import Settings, get_settings, settings
from ftsim.core.exceptions import (
    ERROR_BASE_URI,
    ConfigValidationError,
    InputFileError,
    ProblemDetail,
    RetryCapExceededError,
)
from ftsim.core.logging import get_logger, setup_logging
from ftsim.core.schemas import CodeName, RunConfig, RunMeta

__all__ = [
    # Config
    "Settings",
    "get_settings",
    "settings",
    # Exceptions
    "ERROR_BASE_URI",
    "ProblemDetail",
    "ConfigValidationError",
    "InputFileError",
    "RetryCapExceededError",
    # Logging
    "setup_logging",
    "get_logger",
    # Schemas
    "CodeName",
    "RunConfig",
    "RunMeta",
]
