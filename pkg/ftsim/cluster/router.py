"""
Cluster CLI 라우터

- simulate-cluster: (ε, γ) 격자점별 E, Γ 붕괴율 CSV
- layout-cluster: 앤실라/텔레모듈 배치와 실현 그래프 디버그 덤프
"""

import argparse
import json
import logging
from pathlib import Path

import numpy as np

from ftsim.analysis.services import estimate_rates
from ftsim.cluster.builder import ConstructionLedger, realize, stage_schedule
from ftsim.cluster.schemas import ClusterSimulateConfig, NoiseParams, ProtocolConfig
from ftsim.cluster.services import cluster_layouts, simulate_grid
from ftsim.core.dependencies import bind_run_context, load_config
from ftsim.infra.storage import write_csv, write_json
from ftsim.pauli.models import ClusterGraph

logger = logging.getLogger(__name__)

SIMULATE_HEADER = ("epsilon", "gamma", "E", "sigma_E", "Gamma", "sigma_Gamma", "N_U", "N_L", "N_N")


def simulate_cluster(args: argparse.Namespace) -> int:
    """격자 시뮬레이션 후 CSV와 보고서 JSON 저장"""
    config = load_config(args, ClusterSimulateConfig)
    bind_run_context("simulate-cluster", seed=config.seed, config_hash=config.config_hash())

    points = simulate_grid(config)
    rows = []
    report = []
    for point in points:
        rates = estimate_rates(point.tally)
        rows.append(
            (
                point.epsilon,
                point.gamma,
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
                "epsilon": point.epsilon,
                "gamma": point.gamma,
                "discarded": point.tally.n_discarded,
                "bell_pairs_per_round": point.counter.per_round,
                "ancilla_acceptance": point.counter.ancilla_acceptance,
                "telecorrector_acceptance": point.counter.telecorrector_acceptance,
            }
        )

    ancilla, telemodule = cluster_layouts(
        config.code, config.protocol.build_attempts, config.protocol.join_attempts
    )
    payload = {
        "code": config.code,
        "protocol": config.protocol.model_dump(),
        "schedule": {"ancilla": stage_schedule(ancilla), "telemodule": stage_schedule(telemodule)},
        "points": report,
    }
    meta = config.meta()
    write_csv(config.out / "simulate_cluster.csv", SIMULATE_HEADER, rows, meta)
    write_json(config.out / "simulate_cluster_report.json", payload, meta)
    return 0


def dump_layout(args: argparse.Namespace) -> int:
    """배치 JSON과 잡음 없는 실현 그래프의 인접 리스트를 내보냄"""
    protocol = ProtocolConfig()
    ancilla, telemodule = cluster_layouts(
        args.code or "steane7", protocol.build_attempts, protocol.join_attempts
    )
    layout = ancilla if args.which == "ancilla" else telemodule
    graph = ClusterGraph()
    rng = np.random.default_rng(args.seed or 0)
    realize(layout, graph, NoiseParams(), rng, ConstructionLedger(), protocol.fusion_success)
    payload = {
        "layout": layout.to_dict(),
        "schedule": stage_schedule(layout),
        "graph": graph.to_adjacency(),
    }
    text = json.dumps(payload, default=str)
    if args.path is None:
        print(text)
    else:
        args.path.parent.mkdir(parents=True, exist_ok=True)
        args.path.write_text(text + "\n", encoding="utf-8")
        logger.info("배치 덤프 저장", extra={"path": str(args.path), "nodes": len(graph)})
    return 0


def register(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]",
    parents: list[argparse.ArgumentParser],
) -> None:
    """서브커맨드 등록"""
    parser = subparsers.add_parser(
        "simulate-cluster", parents=parents, help="레벨 1 클러스터 텔레교정 시뮬레이션"
    )
    parser.set_defaults(handler=simulate_cluster, config_model=ClusterSimulateConfig)

    parser = subparsers.add_parser("layout-cluster", parents=parents, help="클러스터 배치 디버그 덤프")
    parser.add_argument("--which", choices=["ancilla", "telemodule"], default="ancilla")
    parser.add_argument("--path", type=Path, default=None, help="저장 경로 (없으면 표준 출력)")
    parser.set_defaults(handler=dump_layout, config_model=None)
