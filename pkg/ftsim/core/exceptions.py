"""
실행 오류 보고

RFC 7807 Problem Details 형태로 오류를 표준 오류에 출력합니다.
status는 CLI 종료 코드 분류로 그대로 쓰입니다.
"""

from typing import Any


class ProblemDetail(Exception):
    """
    RFC 7807 문제 보고 예외

    표준 필드 다섯 개와 extensions를 가집니다. extensions는 보고서 최상위에 병합됩니다.
    """

    FIELDS = ("type", "title", "status", "detail", "instance")

    def __init__(
        self,
        type_uri: str,
        title: str,
        status: int,
        detail: str,
        instance: str | None = None,
        extensions: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(detail)
        self.type, self.title, self.status = type_uri, title, status
        self.detail, self.instance = detail, instance
        self.extensions = dict(extensions or {})

    def to_dict(self) -> dict[str, Any]:
        """None인 표준 필드를 뺀 보고 딕셔너리"""
        fields = {name: getattr(self, name) for name in self.FIELDS}
        return {key: value for key, value in fields.items() if value is not None} | self.extensions

    def __reduce__(self) -> tuple[Any, ...]:
        # 하위 클래스마다 생성자 인자가 달라 워커 프로세스 경계에서는 기본 클래스로 복원
        fields = (self.type, self.title, self.status, self.detail, self.instance, self.extensions)
        return ProblemDetail, fields


# 에러 타입 기본 URI
ERROR_BASE_URI = "https://ftsim.dev/errors"

# 종료 코드 분류
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_RETRY_CAP = 4


# ==========================================================================
# 일반 에러
# ==========================================================================


class ConfigValidationError(ProblemDetail):
    """설정 검증 에러"""

    def __init__(
        self,
        detail: str,
        errors: list[dict[str, Any]] | None = None,
        instance: str | None = None,
    ):
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/config/invalid",
            title="Invalid Configuration",
            status=EXIT_INPUT,
            detail=detail,
            instance=instance,
            extensions={"code": "CONFIG_INVALID", "errors": errors or []},
        )


class InputFileError(ProblemDetail):
    """입력 파일을 읽을 수 없음"""

    def __init__(self, path: str, detail: str | None = None):
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/input/unreadable",
            title="Input File Error",
            status=EXIT_INPUT,
            detail=detail or f"입력 파일을 읽을 수 없습니다: {path}",
            instance=path,
            extensions={"code": "INPUT_FILE_ERROR"},
        )


class RetryCapExceededError(ProblemDetail):
    """후선택 재시도 한도 초과"""

    def __init__(self, construction: str, attempts: int, noise: dict[str, float]):
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/sampling/retry-cap",
            title="Retry Cap Exceeded",
            status=EXIT_RETRY_CAP,
            detail=(
                f"{construction} 생성이 {attempts}회 재시도 후에도 수락되지 않았습니다. "
                "잡음 파라미터가 임계값보다 훨씬 큰 것으로 보입니다."
            ),
            extensions={
                "code": "RETRY_CAP_EXCEEDED",
                "construction": construction,
                "attempts": attempts,
                "noise": noise,
            },
        )
