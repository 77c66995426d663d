"""
Deterministic CLI 라우터

- simulate-det: (p, q) 격자점별 P, Q 붕괴율 CSV
- circuit-det: 텔레교정기/앤실라 연산 목록 감사 덤프
"""

import argparse
import logging
from pathlib import Path

from ftsim.analysis.services import estimate_rates
from ftsim.core.dependencies import bind_run_context, load_config
from ftsim.deterministic.schemas import DetSimulateConfig
from ftsim.deterministic.services import protocol_circuits, simulate_grid
from ftsim.infra.storage import write_csv, write_json

logger = logging.getLogger(__name__)

SIMULATE_HEADER = ("p", "q", "P", "sigma_P", "Q", "sigma_Q", "N_U", "N_L", "N_N")


def simulate_det(args: argparse.Namespace) -> int:
    """격자 시뮬레이션 후 CSV와 보고서 JSON 저장"""
    config = load_config(args, DetSimulateConfig)
    bind_run_context("simulate-det", seed=config.seed, config_hash=config.config_hash())

    points = simulate_grid(config)
    rows = []
    report = []
    for point in points:
        rates = estimate_rates(point.tally)
        rows.append(
            (
                point.p,
                point.q,
                rates.unlocated,
                rates.sigma_unlocated,
                rates.located,
                rates.sigma_located,
                point.tally.n_unlocated,
                point.tally.n_located,
                point.tally.n_none,
            )
        )
        report.append(
            {
                "p": point.p,
                "q": point.q,
                "discarded": point.tally.n_discarded,
                "operations_per_round": point.counter.per_round,
            }
        )

    meta = config.meta()
    write_csv(config.out / "simulate_det.csv", SIMULATE_HEADER, rows, meta)
    payload = {"code": config.code, "points": report}
    write_json(config.out / "simulate_det_report.json", payload, meta)
    return 0


def dump_circuit(args: argparse.Namespace) -> int:
    """연산 목록을 표준 출력 또는 파일로 내보냄"""
    circuits = protocol_circuits(args.code or "steane7")
    circuit = circuits.ancilla if args.which == "ancilla" else circuits.telecorrector
    text = circuit.to_json()
    if args.path is None:
        print(text)
    else:
        args.path.parent.mkdir(parents=True, exist_ok=True)
        args.path.write_text(text + "\n", encoding="utf-8")
        logger.info("회로 덤프 저장", extra={"path": str(args.path)})
    return 0


def register(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]",
    parents: list[argparse.ArgumentParser],
) -> None:
    """서브커맨드 등록"""
    parser = subparsers.add_parser("simulate-det", parents=parents, help="유효 잡음 모델 텔레교정 시뮬레이션")
    parser.set_defaults(handler=simulate_det, config_model=DetSimulateConfig)

    parser = subparsers.add_parser("circuit-det", parents=parents, help="텔레교정 회로 연산 목록 덤프")
    parser.add_argument("--which", choices=["telecorrector", "ancilla"], default="telecorrector")
    parser.add_argument("--path", type=Path, default=None, help="저장 경로 (없으면 표준 출력)")
    parser.set_defaults(handler=dump_circuit, config_model=None)
