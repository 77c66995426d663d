"""
ftsim 메인 진입점

모듈러 모놀리스 구조: 모듈별 router.register()가 서브커맨드를 등록합니다.
"""

import argparse
import json
import sys
from collections.abc import Sequence

from ftsim import __version__
from ftsim.core import get_logger, settings, setup_logging
from ftsim.core.dependencies import common_parser
from ftsim.core.exceptions import ProblemDetail
from ftsim.infra.executor import close_executor

logger = get_logger(__name__)


def create_parser() -> argparse.ArgumentParser:
    """argparse 파서 생성"""
    parser = argparse.ArgumentParser(
        prog="ftsim",
        description="광학 클러스터 상태 결함 허용 임계값 시뮬레이터",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_parser()]

    # 라우터 등록
    _include_routers(subparsers, parents)

    # 설정 스키마 출력
    _add_schema_command(subparsers)

    return parser


def _include_routers(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]",
    parents: list[argparse.ArgumentParser],
) -> None:
    """라우터 등록"""
    from ftsim.analysis import router as analysis_router
    from ftsim.cluster import router as cluster_router
    from ftsim.decoder import router as decoder_router
    from ftsim.deterministic import router as deterministic_router

    # Cluster 모듈 (레벨 1 광학 클러스터 텔레교정)
    cluster_router.register(subparsers, parents)

    # Deterministic 모듈 (레벨 2 이상 유효 잡음 모델)
    deterministic_router.register(subparsers, parents)

    # Analysis 모듈 (적합, 임계 영역, 자원)
    analysis_router.register(subparsers, parents)

    # Decoder 모듈 (디버그용)
    decoder_router.register(subparsers, parents)


def _add_schema_command(subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]") -> None:
    """schema 서브커맨드: 다른 서브커맨드의 설정 JSON 스키마 출력"""
    commands = {
        name: sub
        for name, sub in subparsers.choices.items()
        if sub.get_default("config_model") is not None
    }

    def show_schema(args: argparse.Namespace) -> int:
        model = commands[args.target].get_default("config_model")
        print(json.dumps(model.model_json_schema(), indent=2, ensure_ascii=False))
        return 0

    parser = subparsers.add_parser("schema", help="서브커맨드 설정 파일의 JSON 스키마 출력")
    parser.add_argument("target", choices=sorted(commands))
    parser.add_argument("--log-level", dest="log_level", default=None)
    parser.set_defaults(handler=show_schema, config_model=None)


def main(argv: Sequence[str] | None = None) -> int:
    """
    CLI 실행

    Returns:
        종료 코드 (0: 성공, 2: 설정/입력 오류, 3: 수치 오류, 4: 재시도 한도 초과)
    """
    args = create_parser().parse_args(argv)

    # 로깅 설정
    setup_logging(
        service_name=settings.APP_NAME,
        log_level=args.log_level or settings.LOG_LEVEL,
        json_format=settings.LOG_JSON or settings.is_production,
    )

    try:
        status: int = args.handler(args)
    except ProblemDetail as e:
        logger.error("실행 실패", command=args.command, type=e.type, status=e.status, detail=e.detail)
        sys.stderr.write(json.dumps(e.to_dict(), ensure_ascii=False, default=str) + "\n")
        return e.status
    finally:
        close_executor()
    logger.info("실행 완료", command=args.command)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
