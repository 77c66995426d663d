"""
CLI 공통 의존성

서브커맨드가 공유하는 플래그, 설정 파일 병합, 실행 컨텍스트 바인딩을 제공합니다.
"""

import argparse
import json
from pathlib import Path
from typing import Any, TypeVar

import structlog
from pydantic import BaseModel, ValidationError

from ftsim.core.exceptions import ConfigValidationError, InputFileError

ConfigT = TypeVar("ConfigT", bound=BaseModel)

# 플래그 이름 → 설정 필드 이름
OVERRIDE_FLAGS = ("seed", "workers", "out", "code", "memory_noise", "trials")


# ==========================================================================
# 공통 플래그
# ==========================================================================


def common_parser() -> argparse.ArgumentParser:
    """모든 서브커맨드가 상속하는 공통 플래그"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, default=None, help="JSON 설정 파일 경로")
    parser.add_argument("--seed", type=int, default=None, help="마스터 시드")
    parser.add_argument("--workers", type=int, default=None, help="워커 프로세스 수")
    parser.add_argument("--out", type=Path, default=None, help="출력 디렉토리")
    parser.add_argument("--code", choices=["steane7", "golay23"], default=None, help="CSS 코드")
    parser.add_argument("--memory-noise", dest="memory_noise", choices=["on", "off"], default=None)
    parser.add_argument("--trials", type=int, default=None, help="격자점당 시행 수")
    parser.add_argument("--log-level", dest="log_level", default=None, help="로그 레벨 (FTSIM_LOG 대체)")
    return parser


# ==========================================================================
# 설정 로드
# ==========================================================================


def read_config_file(path: Path | None) -> dict[str, Any]:
    """
    JSON 설정 파일 읽기

    Raises:
        InputFileError: 파일을 읽을 수 없거나 JSON 객체가 아닌 경우
    """
    if path is None:
        return {}
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InputFileError(str(path)) from e
    except json.JSONDecodeError as e:
        raise InputFileError(str(path), f"설정 파일이 JSON 형식이 아닙니다: {e.msg}") from e
    if not isinstance(data, dict):
        raise InputFileError(str(path), "설정 파일 최상위는 JSON 객체여야 합니다")
    return data


def validate_model(model: type[ConfigT], data: dict[str, Any]) -> ConfigT:
    """
    pydantic 검증 (실패 시 ConfigValidationError)

    Raises:
        ConfigValidationError: 필드 검증 실패
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        errors = [
            {"loc": ".".join(str(part) for part in err["loc"]), "msg": err["msg"]}
            for err in e.errors()
        ]
        raise ConfigValidationError(f"{model.__name__} 검증 실패 ({len(errors)}건)", errors) from e


def load_config(args: argparse.Namespace, model: type[ConfigT]) -> ConfigT:
    """
    설정 파일과 CLI 플래그 병합 후 검증

    플래그 값이 파일 값을 덮어씁니다. 모델에 없는 플래그는 무시합니다.
    """
    data = read_config_file(getattr(args, "config", None))
    for name in OVERRIDE_FLAGS:
        value = getattr(args, name, None)
        if value is not None and name in model.model_fields:
            data[name] = value
    return validate_model(model, data)


def bind_run_context(command: str, **fields: Any) -> None:
    """구조화 로그 컨텍스트에 실행 정보 바인딩"""
    structlog.contextvars.bind_contextvars(command=command, **fields)
