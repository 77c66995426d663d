"""
Codes 모듈 예외
"""

from ftsim.core.exceptions import ERROR_BASE_URI, EXIT_INPUT, ProblemDetail


class UnknownCodeError(ProblemDetail):
    """지원하지 않는 코드 이름"""

    def __init__(self, name: str, supported: list[str]) -> None:
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/codes/unknown",
            title="Unknown Code",
            status=EXIT_INPUT,
            detail=f"지원하지 않는 코드입니다: {name} (지원: {', '.join(supported)})",
            extensions={"code": "UNKNOWN_CODE", "name": name, "supported": supported},
        )
