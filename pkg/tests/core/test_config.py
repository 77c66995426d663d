"""
설정 / 실행 설정 스키마 테스트
"""

import argparse
import json
import pickle

import pytest
from pydantic import ValidationError

from ftsim.core.config import Settings
from ftsim.core.dependencies import OVERRIDE_FLAGS, load_config, read_config_file
from ftsim.core.exceptions import (
    ConfigValidationError,
    InputFileError,
    ProblemDetail,
    RetryCapExceededError,
)
from ftsim.core.schemas import RunConfig


def _namespace(**overrides) -> argparse.Namespace:
    values = {name: None for name in OVERRIDE_FLAGS}
    values["config"] = None
    values.update(overrides)
    return argparse.Namespace(**values)


class TestSettings:
    """Settings 테스트"""

    def test_defaults(self):
        """기본값"""
        config = Settings()
        assert config.DIV_BOUND == 0.5
        assert config.LOCATED_CAP is None
        assert not config.is_production

    @pytest.mark.parametrize("field", [{"DIV_BOUND": 1.5}, {"CONV_TOL": 0.0}, {"MAX_K": 0}])
    def test_invalid_numeric(self, field: dict):
        """범위 밖 반복 설정"""
        with pytest.raises(ValidationError):
            Settings(**field)

    def test_environment_prefix(self, monkeypatch: pytest.MonkeyPatch):
        """FTSIM_ 접두사 환경 변수"""
        monkeypatch.setenv("FTSIM_RETRY_CAP", "7")
        monkeypatch.setenv("FTSIM_LOG", "DEBUG")
        config = Settings()
        assert config.RETRY_CAP == 7
        assert config.LOG_LEVEL == "DEBUG"


class TestRunConfig:
    """RunConfig 테스트"""

    @pytest.mark.parametrize(("raw", "expected"), [("on", True), ("OFF", False), (False, False)])
    def test_memory_noise_on_off(self, raw, expected: bool):
        """on/off 문자열 허용"""
        assert RunConfig(seed=1, memory_noise=raw).memory_noise is expected

    def test_seed_required(self):
        """시드 기본값 없음"""
        with pytest.raises(ValidationError):
            RunConfig()

    def test_hash_ignores_execution_fields(self, tmp_path):
        """workers/out은 해시에 영향 없음, seed는 영향 있음"""
        base = RunConfig(seed=1)
        assert base.config_hash() == RunConfig(seed=1, workers=8, out=tmp_path).config_hash()
        assert base.config_hash() != RunConfig(seed=2).config_hash()
        assert len(base.config_hash()) == 16

    def test_meta(self):
        """출력 메타데이터"""
        meta = RunConfig(seed=9).meta()
        assert meta.seed == 9
        assert meta.config_hash == RunConfig(seed=9).config_hash()


class TestLoadConfig:
    """load_config 테스트"""

    def test_flags_override_file(self, tmp_path):
        """플래그가 파일 값을 덮어씀"""
        # Given
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": 1, "trials": 10, "code": "golay23"}), encoding="utf-8")

        # When
        config = load_config(_namespace(config=path, seed=5, memory_noise="off"), RunConfig)

        # Then
        assert config.seed == 5
        assert config.trials == 10
        assert config.code == "golay23"
        assert config.memory_noise is False

    def test_validation_error(self, tmp_path):
        """검증 실패는 ConfigValidationError"""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": -1, "unknown": 1}), encoding="utf-8")

        with pytest.raises(ConfigValidationError) as exc_info:
            load_config(_namespace(config=path), RunConfig)

        locations = {err["loc"] for err in exc_info.value.extensions["errors"]}
        assert locations == {"seed", "unknown"}
        assert exc_info.value.status == 2

    def test_not_an_object(self, tmp_path):
        """최상위가 객체가 아닌 설정 파일"""
        path = tmp_path / "run.json"
        path.write_text("[]", encoding="utf-8")
        with pytest.raises(InputFileError):
            read_config_file(path)


class TestProblemDetail:
    """ProblemDetail 테스트"""

    def test_to_dict(self):
        """확장 필드 병합"""
        error = ProblemDetail(
            type_uri="https://ftsim.dev/errors/test",
            title="Test",
            status=3,
            detail="상세",
            instance="out/x.csv",
            extensions={"code": "TEST"},
        )
        assert error.to_dict() == {
            "type": "https://ftsim.dev/errors/test",
            "title": "Test",
            "status": 3,
            "detail": "상세",
            "instance": "out/x.csv",
            "code": "TEST",
        }

    def test_pickles_across_processes(self):
        """워커에서 발생한 예외는 같은 보고 내용의 ProblemDetail로 복원"""
        # Given
        error = RetryCapExceededError("ancilla", 10, {"epsilon": 0.1, "gamma": 0.0})

        # When
        restored = pickle.loads(pickle.dumps(error))

        # Then
        assert isinstance(restored, ProblemDetail)
        assert restored.status == 4
        assert restored.to_dict() == error.to_dict()
