"""
병렬 실행기 관리

격자점/시행 청크 작업을 프로세스 풀에 분배합니다.
결과는 항상 작업 순서대로 돌려주므로 병합 결과가 워커 수와 무관합니다.
"""

import logging
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import TypeVar, cast

from tqdm import tqdm

from ftsim.core.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# 전역 프로세스 풀
_executor: ProcessPoolExecutor | None = None
_workers: int = 0


def get_executor(workers: int) -> ProcessPoolExecutor:
    """프로세스 풀 생성 또는 반환 (워커 수가 바뀌면 재생성)"""
    global _executor, _workers
    if _executor is not None and _workers != workers:
        close_executor()
    if _executor is None:
        _executor = ProcessPoolExecutor(max_workers=workers)
        _workers = workers
        logger.debug("프로세스 풀 생성", extra={"workers": workers})
    return _executor


def close_executor() -> None:
    """프로세스 풀 종료"""
    global _executor, _workers
    if _executor is not None:
        _executor.shutdown(wait=True)
        _executor = None
        _workers = 0


def _progress_enabled() -> bool:
    return settings.PROGRESS and sys.stderr.isatty()


def map_tasks(
    fn: Callable[[T], R],
    tasks: Sequence[T],
    workers: int,
    desc: str = "tasks",
) -> list[R]:
    """
    작업 목록 실행

    워커가 1이면 현재 프로세스에서 순서대로 실행합니다.

    Args:
        fn: 피클 가능한 최상위 함수
        tasks: 작업 인자 목록
        workers: 워커 프로세스 수
        desc: 진행 표시줄 라벨

    Returns:
        tasks와 같은 순서의 결과 목록
    """
    if workers <= 1 or len(tasks) <= 1:
        progress = tqdm(tasks, desc=desc, unit="task", disable=not _progress_enabled())
        return [fn(task) for task in progress]

    executor = get_executor(workers)
    futures = {executor.submit(fn, task): index for index, task in enumerate(tasks)}
    results: list[R | None] = [None] * len(tasks)
    for future in tqdm(
        as_completed(futures),
        total=len(futures),
        desc=desc,
        unit="task",
        disable=not _progress_enabled(),
    ):
        results[futures[future]] = future.result()
    return cast(list[R], results)
