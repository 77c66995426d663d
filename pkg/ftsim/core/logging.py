"""
structlog 로깅 설정

CLI 라우터의 structlog 로그와 서비스 모듈의 표준 logging 로그를 같은 렌더러로 출력합니다.
표준 출력은 명령 결과 전용이므로 로그는 stderr로 보냅니다.
"""

import logging
import sys
from typing import Any

import structlog
from structlog.typing import EventDict, Processor


def _numpy_scalar_processor(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """numpy 스칼라를 파이썬 기본형으로 변환 (JSON 렌더러용)"""
    for key, value in list(event_dict.items()):
        item = getattr(value, "item", None)
        if callable(item) and getattr(value, "shape", None) == ():
            event_dict[key] = item()
    return event_dict


def setup_logging(
    service_name: str = "ftsim",
    log_level: str = "INFO",
    json_format: bool = False,
) -> None:
    """
    로깅 설정

    서비스 모듈의 `logger.info(..., extra={...})` 필드는 이벤트 키로 합쳐집니다.

    Args:
        service_name: 모든 로그에 붙는 service 값
        log_level: DEBUG, INFO, WARNING, ERROR, CRITICAL
        json_format: True면 한 줄 JSON, False면 콘솔 포맷
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    pre_chain: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        _numpy_scalar_processor,
    ]
    renderer: Processor = (
        structlog.processors.JSONRenderer()
        if json_format
        else structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())
    )
    exc_chain: list[Processor] = [structlog.processors.format_exc_info] if json_format else []

    structlog.configure(
        processors=[*pre_chain, structlog.processors.StackInfoRenderer(), *exc_chain, renderer],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        # main()이 같은 프로세스에서 반복 호출되므로 출력 스트림을 캐시하지 않음
        cache_logger_on_first_use=False,
    )
    structlog.contextvars.bind_contextvars(service=service_name)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            foreign_pre_chain=[
                *pre_chain,
                structlog.stdlib.add_logger_name,
                structlog.stdlib.ExtraAdder(),
            ],
            processors=[
                structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                *exc_chain,
                renderer,
            ],
        )
    )
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(level)


def get_logger(name: str | None = None) -> structlog.typing.FilteringBoundLogger:
    """structlog 로거 인스턴스 반환"""
    logger: structlog.typing.FilteringBoundLogger = structlog.get_logger(name)
    return logger
