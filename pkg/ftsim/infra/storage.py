"""
결과 파일 입출력

CSV는 표 데이터, JSON은 구조화된 산출물에 사용합니다.
모든 파일은 버전/설정 해시/시드 헤더를 포함해 실행을 스스로 설명합니다.
"""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from ftsim.core.exceptions import InputFileError
from ftsim.core.schemas import RunMeta

logger = logging.getLogger(__name__)

COMMENT = "#"


def format_value(value: object) -> str:
    """실수는 %.17g, 나머지는 str"""
    if isinstance(value, bool | np.bool_):
        return str(int(value))
    if isinstance(value, float | np.floating):
        return "%.17g" % float(value)
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def header_lines(meta: RunMeta) -> list[str]:
    return [
        f"{COMMENT} ftsim {meta.version}",
        f"{COMMENT} config_hash={meta.config_hash}",
        f"{COMMENT} seed={meta.seed}",
    ]


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[object]],
    meta: RunMeta,
) -> Path:
    """헤더 주석 + 정확한 열 이름의 CSV 저장"""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        for line in header_lines(meta):
            fh.write(line + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    logger.info("CSV 저장 완료", extra={"path": str(path), "rows": count})
    return path


def read_csv(path: Path) -> list[dict[str, str]]:
    """
    CSV 읽기 (# 주석 줄 무시)

    Raises:
        InputFileError: 파일이 없거나 헤더가 없는 경우
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(str(path)) from e
    lines = [line for line in text.splitlines() if line and not line.startswith(COMMENT)]
    if not lines:
        raise InputFileError(str(path), f"CSV 헤더가 없습니다: {path}")
    return list(csv.DictReader(lines))


def write_json(path: Path, payload: dict[str, Any], meta: RunMeta) -> Path:
    """최상위 "_meta" 객체를 포함한 JSON 저장"""
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"_meta": meta.model_dump(), **payload}
    path.write_text(json.dumps(document, indent=2, sort_keys=False) + "\n", encoding="utf-8")
    logger.info("JSON 저장 완료", extra={"path": str(path)})
    return path


def read_json(path: Path) -> dict[str, Any]:
    """
    JSON 읽기 ("_meta" 제거)

    Raises:
        InputFileError: 파일이 없거나 JSON 형식이 아닌 경우
    """
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InputFileError(str(path)) from e
    except json.JSONDecodeError as e:
        raise InputFileError(str(path), f"JSON 형식이 아닙니다: {path} ({e.msg})") from e
    if not isinstance(document, dict):
        raise InputFileError(str(path), f"JSON 객체가 아닙니다: {path}")
    document.pop("_meta", None)
    return document
