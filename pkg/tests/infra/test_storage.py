"""
결과 파일 입출력 테스트
"""

import json

import numpy as np
import pytest

from ftsim.core.exceptions import InputFileError
from ftsim.core.schemas import RunMeta
from ftsim.infra.storage import format_value, read_csv, read_json, write_csv, write_json

META = RunMeta(version="0.1.0", config_hash="abcdef0123456789", seed=42)


class TestCsv:
    """CSV 입출력 테스트"""

    def test_header_comments_and_columns(self, tmp_path):
        """주석 헤더 3줄 다음 열 이름"""
        # Given
        path = tmp_path / "nested" / "rates.csv"

        # When
        write_csv(path, ("u", "v", "n"), [(0.1, 1e-4, 3), (0.2, 2e-4, np.int64(4))], META)

        # Then
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[:3] == ["# ftsim 0.1.0", "# config_hash=abcdef0123456789", "# seed=42"]
        assert lines[3] == "u,v,n"
        rows = read_csv(path)
        assert [float(r["u"]) for r in rows] == [0.1, 0.2]
        assert [float(r["v"]) for r in rows] == [1e-4, 2e-4]
        assert [r["n"] for r in rows] == ["3", "4"]

    def test_missing_file(self, tmp_path):
        """없는 파일"""
        with pytest.raises(InputFileError) as exc_info:
            read_csv(tmp_path / "missing.csv")
        assert exc_info.value.status == 2

    def test_comment_only_file(self, tmp_path):
        """헤더가 없는 파일"""
        path = tmp_path / "empty.csv"
        path.write_text("# nothing\n", encoding="utf-8")
        with pytest.raises(InputFileError):
            read_csv(path)

    @pytest.mark.parametrize(
        ("value", "text"),
        [
            (True, "1"),
            (np.bool_(False), "0"),
            (np.int32(7), "7"),
            (0.5, "0.5"),
            ("steane7", "steane7"),
        ],
    )
    def test_format_value(self, value, text: str):
        """값 형식"""
        assert format_value(value) == text


class TestJson:
    """JSON 입출력 테스트"""

    def test_meta_round_trip(self, tmp_path):
        """_meta는 저장되고 읽을 때 제거됨"""
        # Given
        path = tmp_path / "fit_E.json"

        # When
        write_json(path, {"role": "E", "terms": []}, META)

        # Then
        raw = json.loads(path.read_text(encoding="utf-8"))
        assert raw["_meta"] == {"version": "0.1.0", "config_hash": "abcdef0123456789", "seed": 42}
        assert read_json(path) == {"role": "E", "terms": []}

    def test_not_json(self, tmp_path):
        """JSON 형식이 아닌 파일"""
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InputFileError):
            read_json(path)

    def test_not_object(self, tmp_path):
        """최상위가 객체가 아닌 JSON"""
        path = tmp_path / "list.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(InputFileError):
            read_json(path)
