"""
CLI 진입점 테스트
"""

import json

import pytest

from ftsim.infra.storage import read_csv
from ftsim.main import main

RATES = (
    "epsilon,gamma,E,sigma_E,Gamma,sigma_Gamma\n"
    "1e-4,1e-3,0.001,0.0001,0.010,0.001\n"
    "2e-4,1e-3,0.002,0.0001,0.012,0.001\n"
    "1e-4,2e-3,0.001,0.0001,0.020,0.001\n"
    "2e-4,2e-3,0.002,0.0001,0.023,0.001\n"
)


def _write(path, payload: dict):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


class TestCommands:
    """서브커맨드 테스트"""

    def test_schema(self, capsys):
        """설정 JSON 스키마 출력"""
        assert main(["schema", "decode"]) == 0
        schema = json.loads(capsys.readouterr().out)
        assert "syndrome" in schema["properties"]

    def test_decode(self, tmp_path, capsys):
        """decode 결과는 표준 출력 JSON"""
        # Given
        config = _write(tmp_path / "decode.json", {"code": "steane7", "syndrome": [1, 0, 0]})

        # When
        status = main(["decode", "--config", config])

        # Then
        assert status == 0
        result = json.loads(capsys.readouterr().out)
        assert result == {"correction": [1, 0, 0, 0, 0, 0, 0], "located_crash": False}

    def test_invalid_config_exit_code(self, tmp_path, capsys):
        """설정 오류는 종료 코드 2와 stderr 문제 보고"""
        config = _write(tmp_path / "decode.json", {"syndrome": [0, 2, 0]})

        assert main(["decode", "--config", config]) == 2
        assert '"CONFIG_INVALID"' in capsys.readouterr().err

    def test_unknown_command(self):
        """알 수 없는 서브커맨드"""
        with pytest.raises(SystemExit):
            main(["simulate-everything"])


class TestAnalysisPipeline:
    """fit → threshold → resources 파이프라인 테스트"""

    def test_pipeline(self, tmp_path, capsys):
        """적합 파일로 임계 영역과 자원 표 생성"""
        # Given
        rates = tmp_path / "rates.csv"
        rates.write_text(RATES, encoding="utf-8")
        out = str(tmp_path / "out")
        orders = {"input": str(rates), "unlocated_order": 1, "located_order": 1}

        # When
        cluster = _write(tmp_path / "fit_cluster.json", {**orders, "level": "cluster"})
        det = _write(tmp_path / "fit_det.json", {**orders, "level": "det"})
        assert main(["fit", "--config", cluster, "--seed", "1", "--out", out]) == 0
        assert main(["fit", "--config", det, "--seed", "1", "--out", out]) == 0
        printed = capsys.readouterr().out

        roles = ("E", "Gamma", "P", "Q")
        fits = {role: str(tmp_path / "out" / f"fit_{role}.json") for role in roles}
        threshold = _write(
            tmp_path / "threshold.json",
            {
                "f_unlocated": fits["E"],
                "f_located": fits["Gamma"],
                "g_unlocated": fits["P"],
                "g_located": fits["Q"],
                "grid": {"u_max": 2e-4, "u_steps": 3, "v_max": 2e-3, "v_steps": 3},
            },
        )
        resources = _write(
            tmp_path / "resources.json",
            {
                "g_unlocated": fits["P"],
                "g_located": fits["Q"],
                "p1": 1e-3,
                "q1": 1e-2,
                "level1_cost": 100.0,
                "levels": 2,
                "factors": [10.0],
            },
        )
        assert main(["threshold", "--config", threshold, "--seed", "1", "--out", out]) == 0
        assert main(["resources", "--config", resources, "--seed", "1", "--out", out]) == 0

        # Then
        assert "E: R/D =" in printed
        assert "Gamma: R/D =" in printed
        region = read_csv(tmp_path / "out" / "threshold_region.csv")
        assert len(region) == 9
        assert {row["status"] for row in region} <= {"converged", "diverged", "undecided"}
        table = read_csv(tmp_path / "out" / "resources.csv")
        assert [row["level"] for row in table] == ["1", "2"]
        assert float(table[1]["bell_pairs"]) == pytest.approx(1000.0)


class TestSimulationCommands:
    """시뮬레이션 / 덤프 서브커맨드 테스트"""

    def test_simulate_det(self, tmp_path):
        """잡음 없는 격자점의 P, Q는 0"""
        # Given
        config = _write(tmp_path / "det.json", {"points": [[0.0, 0.0]], "warmup_rounds": 0})

        # When
        status = main(
            ["simulate-det", "--config", config, "--seed", "3", "--trials", "2"]
            + ["--out", str(tmp_path)]
        )

        # Then
        assert status == 0
        (row,) = read_csv(tmp_path / "simulate_det.csv")
        assert float(row["P"]) == 0.0
        assert row["N_N"] == "2"
        assert (tmp_path / "simulate_det_report.json").exists()

    def test_simulate_cluster(self, tmp_path):
        """잡음 없고 융합이 항상 성공하면 E, Γ는 0"""
        config = _write(
            tmp_path / "cluster.json",
            {"points": [[0.0, 0.0]], "protocol": {"fusion_success": 1.0, "warmup_rounds": 0}},
        )

        status = main(
            ["simulate-cluster", "--config", config, "--seed", "3", "--trials", "1"]
            + ["--out", str(tmp_path)]
        )

        assert status == 0
        (row,) = read_csv(tmp_path / "simulate_cluster.csv")
        assert float(row["E"]) == 0.0
        assert float(row["Gamma"]) == 0.0

    def test_circuit_dump(self, capsys):
        """텔레교정기 연산 목록"""
        assert main(["circuit-det", "--code", "steane7"]) == 0
        assert json.loads(capsys.readouterr().out)["depth"] == 7

    def test_layout_dump(self, tmp_path):
        """배치와 실현 그래프 덤프"""
        path = tmp_path / "layout.json"
        assert main(["layout-cluster", "--which", "telemodule", "--path", str(path)]) == 0
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["layout"]["name"] == "telemodule"
        assert "graph" in payload
