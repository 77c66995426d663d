"""
Decoder CLI 라우터

- decode: {code, syndrome, located} JSON → DecodeResult JSON (디버그용)
"""

import argparse

from ftsim.codes.services import get_code
from ftsim.core.dependencies import load_config
from ftsim.decoder.schemas import DecodeInput
from ftsim.decoder.services import ml_decode


def decode(args: argparse.Namespace) -> int:
    """한 섹터를 디코딩해 결과를 표준 출력으로 출력"""
    data = load_config(args, DecodeInput)
    result = ml_decode(get_code(data.code), data)
    print(result.model_dump_json())
    return 0


def register(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]",
    parents: list[argparse.ArgumentParser],
) -> None:
    """서브커맨드 등록"""
    parser = subparsers.add_parser("decode", parents=parents, help="위치/비위치 최대우도 디코딩")
    parser.set_defaults(handler=decode, config_model=DecodeInput)
