"""
Cluster 모듈 서비스

레벨 1 클러스터 텔레교정 시뮬레이션입니다.
앤실라와 텔레교정기 구성은 손실/융합 실패에 대해 후선택하고,
데이터 결합 단계의 손실과 융합 실패는 표본 추출해 위치 오류로 환원합니다.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from ftsim.analysis.schemas import CrashTally, TrialKind, TrialOutcome
from ftsim.cluster.builder import (
    ConstructionLedger,
    conditioned_outcomes,
    depolarize_nodes,
    depolarize_pair,
    measure_layout,
    parallel_fuse,
    realize,
    tick,
)
from ftsim.cluster.layout import (
    ATTACH,
    BOTTOM,
    EXTRACTIONS,
    JOIN,
    OUTPUT,
    TOP,
    ClusterLayout,
    ancilla_layout,
    telemodule_layout,
)
from ftsim.cluster.schemas import ClusterSimulateConfig, DataBlock, NoiseParams, ProtocolConfig
from ftsim.codes.models import CssCode, LogicalClass
from ftsim.codes.services import (
    best_standard_form,
    get_code,
    ideal_residual,
    logical_class,
    syndrome_index,
)
from ftsim.core.config import settings
from ftsim.core.exceptions import RetryCapExceededError
from ftsim.decoder.services import ml_decode_sector
from ftsim.infra.executor import map_tasks
from ftsim.pauli.models import BondKind, ClusterGraph, NodeRole, PauliBits
from ftsim.pauli.services import (
    add_frame,
    fuse,
    fuse_fail,
    random_pauli,
    sample_loss,
    x_measure,
    z_measure,
)
from shared.utils.seeding import chunk_bounds, trial_rng

logger = logging.getLogger(__name__)

# 같은 절반에서 반복되는 추출 쌍
TOP_EXTRACTIONS = ("x1", "x4")


@lru_cache(maxsize=16)
def cluster_layouts(
    code_name: str, build_attempts: int, join_attempts: int
) -> tuple[ClusterLayout, ClusterLayout]:
    """(앤실라 배치, 텔레모듈 배치)"""
    form = best_standard_form(code_name, settings.REORDER_TRIES, settings.REORDER_SEED)
    n = get_code(code_name).n
    return ancilla_layout(form, build_attempts), telemodule_layout(n, join_attempts, build_attempts)


# ==========================================================================
# 앤실라
# ==========================================================================


@dataclass
class AncillaState:
    """
    수락된 앤실라

    출력 노드와 그 attach 잎만 그래프에 남아 있습니다.
    cost는 모든 시도의 기대 Bell 쌍 수 합입니다.
    """

    graph: ClusterGraph
    outputs: list[int]
    attach: list[list[int]]
    cost: float
    attempts: int


def create_ancilla(
    code: CssCode,
    noise: NoiseParams,
    config: ProtocolConfig,
    rng: np.random.Generator,
) -> AncillaState:
    """
    검증된 앤실라 클러스터 생성

    모든 검증 노드의 반전 비트가 0일 때까지 다시 만듭니다.

    Raises:
        RetryCapExceededError: 재시도 한도 초과
    """
    layout, _ = cluster_layouts(code.name, config.build_attempts, config.join_attempts)
    cost = 0.0
    for attempt in range(1, settings.RETRY_CAP + 1):
        graph = ClusterGraph()
        ledger = ConstructionLedger()
        realized = realize(layout, graph, noise, rng, ledger, config.fusion_success)
        outputs = [realized.ids[key] for key in layout.outputs]
        attach = [realized.leaves[(key, ATTACH)] for key in layout.outputs]
        flips = measure_layout(graph, layout, realized, noise, rng, ledger)
        cost += ledger.cost(noise.gamma)
        if not any(flips.values()):
            return AncillaState(graph, outputs, attach, cost, attempt)
    raise RetryCapExceededError("verified ancilla", settings.RETRY_CAP, noise.as_dict())


# ==========================================================================
# 텔레교정기
# ==========================================================================


@dataclass
class Telecorrector:
    """
    수락된 텔레교정기

    top/bottom은 행별 T, B 루트, join_leaves는 데이터 결합용 T 잎,
    output_leaves는 다음 라운드로 넘어갈 B 잎입니다.
    flips는 추출 라벨("1".."4")별 연결 노드 반전 비트입니다.
    """

    graph: ClusterGraph
    top: list[int]
    bottom: list[int]
    join_leaves: list[list[int]]
    output_leaves: list[list[int]]
    flips: dict[str, npt.NDArray[np.uint8]]
    cost: float = 0.0
    attempts: int = 1
    ancilla_attempts: int = 0


def assemble_telecorrector(
    code: CssCode,
    ancillas: Sequence[AncillaState],
    noise: NoiseParams,
    config: ProtocolConfig,
    rng: np.random.Generator,
) -> Telecorrector:
    """
    텔레모듈에 앤실라 4개를 붙이고 음영 노드를 측정 (한 번의 시도)

    앤실라 1, 4는 T에, 2, 3은 B에 병렬 융합으로 붙습니다.
    """
    assert len(ancillas) == len(EXTRACTIONS)
    _, layout = cluster_layouts(code.name, config.build_attempts, config.join_attempts)
    graph = ClusterGraph()
    ledger = ConstructionLedger()
    realized = realize(layout, graph, noise, rng, ledger, config.fusion_success)
    top = [realized.ids[(TOP, i, 0)] for i in range(code.n)]
    bottom = [realized.ids[(BOTTOM, i, 0)] for i in range(code.n)]

    outputs: list[int] = []
    links: dict[str, list[int]] = {}
    busy: set[int] = set()
    for name, ancilla in zip(EXTRACTIONS, ancillas, strict=True):
        mapping = graph.absorb(ancilla.graph)
        outputs.extend(mapping[node] for node in ancilla.outputs)
        half = TOP if name in TOP_EXTRACTIONS else BOTTOM
        row_links = []
        for i in range(code.n):
            left = [mapping[leaf] for leaf in ancilla.attach[i]]
            right = realized.leaves.pop(((half, i, 0), name))
            attempts = min(len(left), len(right))
            outcomes = conditioned_outcomes(rng, attempts, config.fusion_success)
            ledger.acceptance *= 1.0 - (1.0 - config.fusion_success) ** attempts
            busy.update(left[:attempts])
            link = parallel_fuse(graph, left, right, outcomes, noise, rng)
            assert link is not None
            row_links.append(link)
        links[name] = row_links
    tick(graph, busy, noise, rng, ledger)

    shaded = outputs + [link for name in EXTRACTIONS for link in links[name]]
    depolarize_nodes(graph, shaded, noise, rng)
    tick(graph, set(shaded), noise, rng, ledger)
    for node in outputs:
        assert x_measure(graph, node) is None, "앤실라 출력은 연결 노드로 전송되어야 합니다"
    flips = {}
    for name in EXTRACTIONS:
        bits = [x_measure(graph, link) for link in links[name]]
        flips[name[1:]] = np.array(bits, dtype=np.uint8)

    return Telecorrector(
        graph=graph,
        top=top,
        bottom=bottom,
        join_leaves=[realized.leaves[((TOP, i, 0), JOIN)] for i in range(code.n)],
        output_leaves=[realized.leaves[((BOTTOM, i, 0), OUTPUT)] for i in range(code.n)],
        flips=flips,
        cost=ledger.cost(noise.gamma) + sum(a.cost for a in ancillas),
        ancilla_attempts=sum(a.attempts for a in ancillas),
    )


def preagrees(code: CssCode, flips: dict[str, npt.NDArray[np.uint8]]) -> bool:
    """
    같은 절반의 반복 신드롬이 일치하는지

    1과 4는 Z 섹터, 2와 3은 X 섹터 추출입니다 (deterministic.circuit.SYNDROME_LABELS).
    """
    s = {label: syndrome_index(code, bits) for label, bits in flips.items()}
    return s["1"] == s["4"] and s["2"] == s["3"]


def create_telecorrector(
    code: CssCode,
    noise: NoiseParams,
    config: ProtocolConfig,
    rng: np.random.Generator,
) -> Telecorrector:
    """
    반복 신드롬이 일치하는 텔레교정기 생성

    Raises:
        RetryCapExceededError: 재시도 한도 초과
    """
    cost = 0.0
    ancilla_attempts = 0
    for attempt in range(1, settings.RETRY_CAP + 1):
        ancillas = [create_ancilla(code, noise, config, rng) for _ in EXTRACTIONS]
        tele = assemble_telecorrector(code, ancillas, noise, config, rng)
        cost += tele.cost
        ancilla_attempts += tele.ancilla_attempts
        if preagrees(code, tele.flips):
            tele.cost = cost
            tele.attempts = attempt
            tele.ancilla_attempts = ancilla_attempts
            return tele
    raise RetryCapExceededError("telecorrector", settings.RETRY_CAP, noise.as_dict())


# ==========================================================================
# 데이터 결합 / 교정
# ==========================================================================


class JoinResult(NamedTuple):
    """한 라운드 결과"""

    data: DataBlock
    outcome: TrialOutcome
    located: frozenset[int]


def _attach_data(graph: ClusterGraph, data: DataBlock) -> tuple[list[int], list[list[int]]]:
    roots: list[int] = []
    leaves: list[list[int]] = []
    for root_error, leaf_errors in zip(data.roots, data.leaves, strict=True):
        root = graph.add_node(NodeRole.ROOT, root_error.copy())
        row = []
        for err in leaf_errors:
            leaf = graph.add_node(NodeRole.LEAF, err.copy())
            graph.add_bond(root, leaf, BondKind.HORIZONTAL, origin=root)
            row.append(leaf)
        roots.append(root)
        leaves.append(row)
    return roots, leaves


def _join_row(
    graph: ClusterGraph,
    left: list[int],
    right: list[int],
    noise: NoiseParams,
    config: ProtocolConfig,
    rng: np.random.Generator,
) -> tuple[int | None, bool]:
    """
    한 행의 병렬 융합 (입력 손실과 융합 실패를 표본 추출)

    Returns:
        (연결 노드 또는 None, 손실 검출 여부)
    """
    attempts = min(len(left), len(right))
    link: int | None = None
    lost = False
    for a, b in zip(left[:attempts], right[:attempts], strict=True):
        lost_a, lost_b = sample_loss(rng, noise.gamma), sample_loss(rng, noise.gamma)
        if lost_a or lost_b:
            lost = True
            for node, gone in ((a, lost_a), (b, lost_b)):
                if gone:
                    graph.remove(node)
                else:
                    z_measure(graph, node)
            continue
        depolarize_pair(graph, a, b, noise, rng)
        if rng.random() < config.fusion_success:
            merged = fuse(graph, keep=a, other=b)
            if link is None:
                link = merged
                graph.set_role(link, NodeRole.AUX)
            else:
                z_measure(graph, merged)
        else:
            fuse_fail(graph, a, b)
    for leftover in [*left[attempts:], *right[attempts:]]:
        z_measure(graph, leftover)
    return link, lost


def _sample_output_loss(n: int, noise: NoiseParams, rng: np.random.Generator) -> set[int]:
    """유휴 B 루트 손실 (다음 라운드 위치 행)"""
    if not noise.memory_noise:
        return set()
    return {i for i in range(n) if sample_loss(rng, noise.gamma)}


def effective_root_errors(
    code: CssCode, data: DataBlock
) -> tuple[npt.NDArray[np.uint8], npt.NDArray[np.uint8]]:
    """
    다음 측정에 도달하는 루트 오류 (x = 프레임 X, z = 물리 Z + 프레임 Z)

    루트의 물리 X는 X 측정에 흡수되므로 제외하고, 손실 행은 0으로 둡니다.
    """
    x = np.zeros(code.n, dtype=np.uint8)
    z = np.zeros(code.n, dtype=np.uint8)
    for i, err in enumerate(data.roots):
        if i in data.pending_located:
            continue
        x[i] = err.frame.x
        z[i] = err.phys.z ^ err.frame.z
    return x, z


def classify_block(
    code: CssCode,
    data: DataBlock,
    x_located_crash: bool,
    z_located_crash: bool,
) -> TrialOutcome:
    """위치 붕괴 우선, 그다음 루트 오류의 완전 교정 잔여로 비위치 붕괴 판정 (잎은 제외)"""
    if x_located_crash or z_located_crash:
        return TrialOutcome(
            TrialKind.LOCATED_CRASH,
            x_located_crash=x_located_crash,
            z_located_crash=z_located_crash,
        )
    x, z = effective_root_errors(code, data)
    logical = logical_class(code, ideal_residual(code, x), ideal_residual(code, z))
    if logical is not LogicalClass.I:
        return TrialOutcome(TrialKind.UNLOCATED_CRASH, logical=str(logical))
    return TrialOutcome(TrialKind.NONE)


def join_and_correct(
    code: CssCode,
    data: DataBlock,
    tele: Telecorrector,
    noise: NoiseParams,
    config: ProtocolConfig,
    rng: np.random.Generator,
) -> JoinResult:
    """
    데이터를 텔레교정기에 결합하고 측정/디코딩

    모든 결합 시도가 실패하거나 손실이 검출된 행은 데이터 루트의 프레임을
    균등 무작위 Pauli로 바꾸고 위치 행으로 기록합니다.
    교정은 B 루트의 프레임 기록에만 반영합니다.
    """
    assert len(data.roots) == code.n == len(tele.top)
    graph = tele.graph
    roots, data_leaves = _attach_data(graph, data)
    located = set(data.pending_located)

    # 결합 단계
    links: list[int] = []
    busy: set[int] = set()
    for i in range(code.n):
        busy.update(data_leaves[i])
        link, lost = _join_row(graph, data_leaves[i], tele.join_leaves[i], noise, config, rng)
        if lost or link is None or (noise.memory_noise and sample_loss(rng, noise.gamma)):
            located.add(i)
        if i in located:
            add_frame(graph, roots[i], random_pauli(rng))
            if link is None:
                link = graph.add_node(NodeRole.AUX)
                graph.add_bond(roots[i], link, BondKind.HORIZONTAL, origin=roots[i])
                graph.add_bond(link, tele.top[i], BondKind.VERTICAL)
        links.append(link)
    tick(graph, busy, noise, rng, ConstructionLedger())
    pending = _sample_output_loss(code.n, noise, rng)

    # 측정 단계
    measured = [*roots, *links, *tele.top]
    depolarize_nodes(graph, measured, noise, rng)
    tick(graph, set(measured), noise, rng, ConstructionLedger())
    pending |= _sample_output_loss(code.n, noise, rng)
    for root in roots:
        assert x_measure(graph, root) is None, "데이터 루트는 연결 노드로 전송되어야 합니다"
    f_data = np.array([x_measure(graph, link) for link in links], dtype=np.uint8)
    f_top = np.array([x_measure(graph, node) for node in tele.top], dtype=np.uint8)

    rows = sorted(located)
    z_syndrome = syndrome_index(code, f_data) ^ syndrome_index(code, tele.flips["1"])
    x_syndrome = syndrome_index(code, f_top) ^ syndrome_index(code, tele.flips["2"])
    z_decode = ml_decode_sector(code, z_syndrome, rows)
    x_decode = ml_decode_sector(code, x_syndrome, rows)
    x_bits = f_top ^ x_decode.correction
    z_bits = f_data ^ z_decode.correction
    for i, node in enumerate(tele.bottom):
        add_frame(graph, node, PauliBits(int(x_bits[i]), int(z_bits[i])))

    block = DataBlock(
        roots=[graph.error(node).copy() for node in tele.bottom],
        leaves=[[graph.error(leaf).copy() for leaf in row] for row in tele.output_leaves],
        pending_located=pending,
    )
    outcome = classify_block(code, block, x_decode.located_crash, z_decode.located_crash)
    return JoinResult(block, outcome, frozenset(located))


# ==========================================================================
# 시행
# ==========================================================================


@dataclass
class ClusterCounter:
    """라운드당 Bell 쌍 수와 구성 수락률 누계"""

    bell_pairs: float = 0.0
    rounds: int = 0
    ancilla_attempts: int = 0
    ancillas_accepted: int = 0
    telecorrector_attempts: int = 0
    telecorrectors_accepted: int = 0

    def add_round(self, tele: Telecorrector) -> None:
        self.bell_pairs += tele.cost
        self.rounds += 1
        self.ancilla_attempts += tele.ancilla_attempts
        self.ancillas_accepted += len(EXTRACTIONS) * tele.attempts
        self.telecorrector_attempts += tele.attempts
        self.telecorrectors_accepted += 1

    def merge(self, other: "ClusterCounter") -> "ClusterCounter":
        return ClusterCounter(
            self.bell_pairs + other.bell_pairs,
            self.rounds + other.rounds,
            self.ancilla_attempts + other.ancilla_attempts,
            self.ancillas_accepted + other.ancillas_accepted,
            self.telecorrector_attempts + other.telecorrector_attempts,
            self.telecorrectors_accepted + other.telecorrectors_accepted,
        )

    @property
    def per_round(self) -> float:
        return self.bell_pairs / self.rounds if self.rounds else 0.0

    @property
    def ancilla_acceptance(self) -> float:
        return self.ancillas_accepted / self.ancilla_attempts if self.ancilla_attempts else 0.0

    @property
    def telecorrector_acceptance(self) -> float:
        if not self.telecorrector_attempts:
            return 0.0
        return self.telecorrectors_accepted / self.telecorrector_attempts


def run_trial(
    code: CssCode,
    noise: NoiseParams,
    config: ProtocolConfig,
    rng: np.random.Generator,
    counter: ClusterCounter | None = None,
) -> TrialOutcome:
    """
    노이즈 없는 입력에서 warmup_rounds + 1 라운드 실행

    예열 라운드에서 붕괴하면 DISCARDED를 돌려줍니다.
    """
    data = DataBlock.noise_free(code.n, config.data_leaves)
    result: JoinResult | None = None
    for round_index in range(config.warmup_rounds + 1):
        tele = create_telecorrector(code, noise, config, rng)
        result = join_and_correct(code, data, tele, noise, config, rng)
        if counter is not None:
            counter.add_round(tele)
        if round_index < config.warmup_rounds and result.outcome.crashed:
            return TrialOutcome(TrialKind.DISCARDED)
        data = result.data
    assert result is not None
    return result.outcome


# ==========================================================================
# 격자 실행
# ==========================================================================


class ClusterChunkTask(NamedTuple):
    """프로세스 풀 작업 단위 (시행 청크)"""

    code_name: str
    epsilon: float
    gamma: float
    memory_noise: bool
    protocol: ProtocolConfig
    seed: int
    point_index: int
    start: int
    stop: int


def run_chunk(task: ClusterChunkTask) -> tuple[CrashTally, ClusterCounter]:
    """청크 내 시행 실행 (시행별 독립 난수 스트림)"""
    code = get_code(task.code_name)
    noise = NoiseParams(epsilon=task.epsilon, gamma=task.gamma, memory_noise=task.memory_noise)
    tally = CrashTally()
    counter = ClusterCounter()
    for trial in range(task.start, task.stop):
        rng = trial_rng(task.seed, task.point_index, trial)
        tally.record(run_trial(code, noise, task.protocol, rng, counter))
    return tally, counter


@dataclass
class ClusterPointResult:
    """격자점 하나의 집계"""

    epsilon: float
    gamma: float
    tally: CrashTally = field(default_factory=CrashTally)
    counter: ClusterCounter = field(default_factory=ClusterCounter)


def simulate_grid(config: ClusterSimulateConfig) -> list[ClusterPointResult]:
    """
    격자 전체 시뮬레이션

    청크 경계와 시드는 워커 수와 무관하므로 결과가 항상 같습니다.
    """
    tasks = [
        ClusterChunkTask(
            config.code,
            epsilon,
            gamma,
            config.memory_noise,
            config.protocol,
            config.seed,
            index,
            start,
            stop,
        )
        for index, (epsilon, gamma) in enumerate(config.points)
        for start, stop in chunk_bounds(config.trials, settings.CHUNK_TRIALS)
    ]
    results = map_tasks(run_chunk, tasks, config.workers, desc="simulate-cluster")

    points = [ClusterPointResult(epsilon, gamma) for epsilon, gamma in config.points]
    for task, (tally, counter) in zip(tasks, results, strict=True):
        point = points[task.point_index]
        point.tally = point.tally.merge(tally)
        point.counter = point.counter.merge(counter)

    for point in points:
        logger.info(
            "격자점 완료",
            extra={
                "epsilon": point.epsilon,
                "gamma": point.gamma,
                "n_unlocated": point.tally.n_unlocated,
                "n_located": point.tally.n_located,
                "n_none": point.tally.n_none,
                "discarded": point.tally.n_discarded,
                "bell_pairs_per_round": point.counter.per_round,
            },
        )
    return points
