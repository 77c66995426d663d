"""
Decoder 모듈 예외
"""

from ftsim.core.exceptions import ERROR_BASE_URI, EXIT_INPUT, EXIT_NUMERIC, ProblemDetail


class LocatedCapExceededError(ProblemDetail):
    """위치 오류 집합이 열거 한도를 넘음"""

    def __init__(self, located: int, cap: int) -> None:
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/decoder/located-cap",
            title="Located Cap Exceeded",
            status=EXIT_NUMERIC,
            detail=f"위치 오류 {located}개는 열거 한도 {cap}개를 넘습니다",
            extensions={"code": "LOCATED_CAP_EXCEEDED", "located": located, "cap": cap},
        )


class InvalidSyndromeError(ProblemDetail):
    """신드롬 길이 또는 위치 인덱스가 코드와 맞지 않음"""

    def __init__(self, code: str, detail: str) -> None:
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/decoder/invalid-input",
            title="Invalid Decoder Input",
            status=EXIT_INPUT,
            detail=detail,
            extensions={"code": "INVALID_SYNDROME", "code_name": code},
        )
