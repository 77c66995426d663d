"""
인프라 모듈

병렬 실행기와 결과 파일 입출력을 제공합니다.
"""

from ftsim.infra.executor import close_executor, get_executor, map_tasks
from ftsim.infra.storage import format_value, read_csv, read_json, write_csv, write_json

__all__ = [
    # Executor
    "get_executor",
    "close_executor",
    "map_tasks",
    # Storage
    "format_value",
    "write_csv",
    "read_csv",
    "write_json",
    "read_json",
]
