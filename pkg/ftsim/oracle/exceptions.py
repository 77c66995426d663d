"""
Oracle 모듈 예외
"""

from ftsim.core.exceptions import ERROR_BASE_URI, EXIT_INPUT, ProblemDetail


class OracleCapacityError(ProblemDetail):
    """기준 시뮬레이터 큐비트 한도 초과"""

    def __init__(self, qubits: int, limit: int) -> None:
        super().__init__(
            type_uri=f"{ERROR_BASE_URI}/oracle/capacity",
            title="Oracle Capacity Exceeded",
            status=EXIT_INPUT,
            detail=f"큐비트 {qubits}개는 기준 시뮬레이터 한도 {limit}개를 넘습니다",
            extensions={"code": "ORACLE_CAPACITY", "qubits": qubits, "limit": limit},
        )
