"""
Analysis CLI 라우터

- fit: 붕괴율 CSV → 역할별 다항식 JSON (R/D 출력)
- threshold: 다항식 JSON 4개 → 격자 분류 CSV, 경계 CSV (선택적으로 오차 띠)
- resources: 레벨별 자원 표 CSV
"""

import argparse
import logging

from ftsim.analysis.schemas import FitConfig, PolyRole, ResourcesConfig, ThresholdConfig
from ftsim.analysis.services import (
    fit_poly,
    load_fit,
    read_rate_samples,
    resource_table,
    term_sets,
    threshold_bands,
    threshold_boundary,
)
from ftsim.core.dependencies import bind_run_context, load_config
from ftsim.infra.storage import write_csv, write_json

logger = logging.getLogger(__name__)

LEVEL_ROLES = {
    "cluster": (PolyRole.E, PolyRole.GAMMA),
    "det": (PolyRole.P, PolyRole.Q),
}
REGION_HEADER = ("u", "v", "status")
BOUNDARY_HEADER = ("u", "v")
RESOURCE_HEADER = ("level", "p", "q", "max_length", "bell_pairs")


def fit(args: argparse.Namespace) -> int:
    """두 역할 다항식을 적합해 fit_<role>.json으로 저장"""
    config = load_config(args, FitConfig)
    bind_run_context("fit", seed=config.seed, config_hash=config.config_hash())

    unlocated_role, located_role = LEVEL_ROLES[config.level]
    jobs = (
        (unlocated_role, config.unlocated_order, True),
        (located_role, config.located_order, False),
    )
    meta = config.meta()
    for role, order, unlocated in jobs:
        samples = read_rate_samples(config.input, unlocated=unlocated)
        monomials = term_sets(role, config.code, order, config.drop_orders)
        result = fit_poly(samples, monomials, role)
        write_json(config.out / f"fit_{role}.json", result.model_dump(mode="json"), meta)
        print(f"{role}: R/D = {result.reduced:.4g} (R = {result.residual:.4g}, D = {result.dof})")
    return 0


def threshold(args: argparse.Namespace) -> int:
    """(g^(k-1) ∘ f) 반복으로 격자를 분류하고 경계를 저장"""
    config = load_config(args, ThresholdConfig)
    bind_run_context("threshold", seed=config.seed, config_hash=config.config_hash())

    f = (load_fit(config.f_unlocated, PolyRole.E), load_fit(config.f_located, PolyRole.GAMMA))
    g = (load_fit(config.g_unlocated, PolyRole.P), load_fit(config.g_located, PolyRole.Q))
    region = threshold_boundary(
        (f[0].poly, f[1].poly), (g[0].poly, g[1].poly), config.grid, config.iterate
    )

    us, vs = config.grid.axes()
    rows = [
        (u, v, str(region.status[iu][iv]))
        for iu, u in enumerate(us)
        for iv, v in enumerate(vs)
    ]
    meta = config.meta()
    write_csv(config.out / "threshold_region.csv", REGION_HEADER, rows, meta)
    write_csv(config.out / "threshold_boundary.csv", BOUNDARY_HEADER, region.boundary, meta)

    if config.bands:
        inner, outer = threshold_bands(f, g, config.grid, config.iterate, seed=config.seed)
        write_csv(config.out / "threshold_band_inner.csv", BOUNDARY_HEADER, inner, meta)
        write_csv(config.out / "threshold_band_outer.csv", BOUNDARY_HEADER, outer, meta)
    return 0


def resources(args: argparse.Namespace) -> int:
    """레벨별 (p, q, 최대 길이, Bell 쌍) 표 저장"""
    config = load_config(args, ResourcesConfig)
    bind_run_context("resources", seed=config.seed, config_hash=config.config_hash())

    g = (load_fit(config.g_unlocated, PolyRole.P).poly, load_fit(config.g_located, PolyRole.Q).poly)
    table = resource_table(
        config.levels, config.p1, config.q1, g, config.level1_cost, config.factors
    )
    rows = [(r.level, r.p, r.q, r.max_length, r.bell_pairs) for r in table]
    write_csv(config.out / "resources.csv", RESOURCE_HEADER, rows, config.meta())
    return 0


def register(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]",
    parents: list[argparse.ArgumentParser],
) -> None:
    """서브커맨드 등록"""
    parser = subparsers.add_parser("fit", parents=parents, help="붕괴율 다항식 적합")
    parser.set_defaults(handler=fit, config_model=FitConfig)

    parser = subparsers.add_parser("threshold", parents=parents, help="임계 영역 분류")
    parser.set_defaults(handler=threshold, config_model=ThresholdConfig)

    parser = subparsers.add_parser("resources", parents=parents, help="레벨별 자원 사용량 표")
    parser.set_defaults(handler=resources, config_model=ResourcesConfig)
