"""
Deterministic 모듈 서비스

유효 잡음 모델 위에서 회로 모델 텔레교정을 시뮬레이션합니다.
생성 구간의 위치 잡음은 표본 추출하지 않고(후선택), 라운드 중 후선택할 수
없는 위치 잡음은 라운드 시작 시점의 위치 오류로 접어 넣습니다.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from ftsim.analysis.schemas import CrashTally, TrialKind, TrialOutcome
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
from ftsim.deterministic.circuit import (
    ANCILLAS,
    BOTTOM,
    CODE,
    CREATION_STEPS,
    DATA,
    PREPARATIONS,
    ROUND_STEPS,
    TOP,
    VERIFY,
    CircuitOp,
    GateKind,
    OpCounts,
    TelecorrectorCircuit,
    ancilla_circuit_det,
    telecorrector_circuit,
)
from ftsim.deterministic.schemas import (
    CircuitQubit,
    DetSimulateConfig,
    EffNoiseParams,
    LocatedMark,
    QubitRegister,
)
from ftsim.infra.executor import map_tasks
from ftsim.pauli.models import PauliBits, X, Z
from shared.utils.seeding import chunk_bounds, trial_rng

logger = logging.getLogger(__name__)

Indices = npt.NDArray[np.intp]


# ==========================================================================
# 잡음 / 전파 규칙
# ==========================================================================


def sector_rate(prob: float) -> float:
    """섹터별 독립 확률 r = 1 - sqrt(1 - prob) (둘 중 하나라도 일어날 확률이 prob)"""
    return 1.0 - math.sqrt(1.0 - prob)


def apply_unlocated(rng: np.random.Generator, qubit: CircuitQubit, prob: float) -> CircuitQubit:
    """X, Z를 각각 확률 r로 독립 적용"""
    r = sector_rate(prob)
    flip = PauliBits(int(rng.random() < r), int(rng.random() < r))
    return CircuitQubit(qubit.err ^ flip, qubit.mark)


def apply_located(rng: np.random.Generator, qubit: CircuitQubit, prob: float) -> CircuitQubit:
    """
    위치 잡음: 섹터별 확률 r로 표시하고, 표시된 섹터의 Pauli는 확률 1/2로 적용
    """
    r = sector_rate(prob)
    err, mark = qubit.err, qubit.mark
    if rng.random() < r:
        mark |= LocatedMark.X
        if rng.random() < 0.5:
            err = err ^ X
    if rng.random() < r:
        mark |= LocatedMark.Z
        if rng.random() < 0.5:
            err = err ^ Z
    return CircuitQubit(err, mark)


def propagate_cnot(control: PauliBits, target: PauliBits) -> tuple[PauliBits, PauliBits]:
    """CNOT 켤레: X는 제어→대상, Z는 대상→제어"""
    return PauliBits(control.x, control.z ^ target.z), PauliBits(target.x ^ control.x, target.z)


def propagate_cphase(q1: PauliBits, q2: PauliBits) -> tuple[PauliBits, PauliBits]:
    """CZ 켤레: 한쪽 X가 상대쪽 Z를 만듦"""
    return PauliBits(q1.x, q1.z ^ q2.x), PauliBits(q2.x, q2.z ^ q1.x)


def unlocated_noise(
    rng: np.random.Generator, register: QubitRegister, idx: Indices, prob: float
) -> None:
    """레지스터 인덱스(중복 없음)에 비위치 잡음"""
    if prob <= 0.0 or idx.size == 0:
        return
    r = sector_rate(prob)
    register.x[idx] ^= (rng.random(idx.size) < r).astype(np.uint8)
    register.z[idx] ^= (rng.random(idx.size) < r).astype(np.uint8)


def located_noise(rng: np.random.Generator, register: QubitRegister, rate: float) -> None:
    """레지스터 전체에 섹터별 확률 rate의 위치 표시 (표시된 섹터는 1/2로 반전)"""
    if rate <= 0.0:
        return
    n = len(register)
    for bits, marks in ((register.x, register.x_mark), (register.z, register.z_mark)):
        hit = rng.random(n) < rate
        marks |= hit
        bits ^= (hit & (rng.random(n) < 0.5)).astype(np.uint8)


def folded_located_rate(params: EffNoiseParams) -> float:
    """라운드 중 후선택할 수 없는 위치 잡음을 접어 넣은 섹터별 확률"""
    keep = (1.0 - sector_rate(params.q)) ** settings.FOLDED_FULL_SITES
    keep *= (1.0 - sector_rate(params.q * params.meas_scale)) ** settings.FOLDED_MEAS_SITES
    return 1.0 - keep


# ==========================================================================
# 회로 실행
# ==========================================================================


def _apply_op(
    op: CircuitOp,
    registers: dict[str, QubitRegister],
    params: EffNoiseParams,
    rng: np.random.Generator,
    flips: dict[str, npt.NDArray[np.uint8]],
) -> None:
    reg = registers[op.register]
    t = np.asarray(op.targets, dtype=np.intp)
    if op.kind in PREPARATIONS:
        reg.x[t] = 0
        reg.z[t] = 0
        unlocated_noise(rng, reg, t, params.p)
    elif op.kind is GateKind.H:
        reg.x[t], reg.z[t] = reg.z[t].copy(), reg.x[t].copy()
        unlocated_noise(rng, reg, t, params.p)
    elif op.kind is GateKind.CNOT or op.kind is GateKind.CZ:
        assert op.other is not None
        ctrl = registers[op.other]
        c = np.asarray(op.controls, dtype=np.intp)
        x_c = ctrl.x[c].copy()
        if op.kind is GateKind.CNOT:
            z_t = reg.z[t].copy()
            reg.x[t] ^= x_c
            ctrl.z[c] ^= z_t
        else:
            x_t = reg.x[t].copy()
            reg.z[t] ^= x_c
            ctrl.z[c] ^= x_t
        unlocated_noise(rng, ctrl, c, params.p)
        unlocated_noise(rng, reg, t, params.p)
    elif op.kind is GateKind.MEASURE_X:
        unlocated_noise(rng, reg, t, params.p * params.meas_scale)
        assert op.label is not None
        flips[op.label] = reg.z[t].copy()
    else:
        unlocated_noise(rng, reg, t, params.p)


def run_circuit(
    circuit: TelecorrectorCircuit,
    registers: dict[str, QubitRegister],
    params: EffNoiseParams,
    rng: np.random.Generator,
    steps: range | None = None,
) -> dict[str, npt.NDArray[np.uint8]]:
    """
    회로 구간 실행

    Returns:
        측정 라벨별 X 측정 반전 비트
    """
    flips: dict[str, npt.NDArray[np.uint8]] = {}
    for step in range(circuit.depth) if steps is None else steps:
        for op in circuit.steps[step]:
            _apply_op(op, registers, params, rng, flips)
        if params.memory_noise:
            for name, idx in circuit.idle[step].items():
                if name in registers:
                    unlocated_noise(rng, registers[name], idx, params.p)
    return flips


@dataclass(frozen=True, eq=False)
class ProtocolCircuits:
    """코드별 앤실라/텔레교정기 회로와 연산 수"""

    code: CssCode
    ancilla: TelecorrectorCircuit
    telecorrector: TelecorrectorCircuit

    def ancilla_counts(self, memory_noise: bool) -> OpCounts:
        return _counts(self, "ancilla", memory_noise)

    def creation_counts(self, memory_noise: bool) -> OpCounts:
        return _counts(self, "creation", memory_noise)

    def round_counts(self, memory_noise: bool) -> OpCounts:
        return _counts(self, "round", memory_noise)


@lru_cache(maxsize=16)
def _counts(circuits: ProtocolCircuits, section: str, memory_noise: bool) -> OpCounts:
    if section == "ancilla":
        return circuits.ancilla.counts(memory_noise)
    window = CREATION_STEPS if section == "creation" else ROUND_STEPS
    return circuits.telecorrector.counts(memory_noise, window)


@lru_cache(maxsize=4)
def protocol_circuits(code_name: str) -> ProtocolCircuits:
    """열 재배열된 표준형으로 회로 구성 (코드별 캐시)"""
    code = get_code(code_name)
    form = best_standard_form(code_name, settings.REORDER_TRIES, settings.REORDER_SEED)
    circuits = ProtocolCircuits(code, ancilla_circuit_det(form), telecorrector_circuit(code.n))
    logger.debug(
        "텔레교정 회로 구성",
        extra={
            "code": code_name,
            "ancilla_depth": circuits.ancilla.depth,
            "permutation": form.permutation,
        },
    )
    return circuits


# ==========================================================================
# 텔레교정기 생성
# ==========================================================================


@dataclass
class ScaleUpCounter:
    """
    라운드당 하위 레벨 연산 수 (기댓값)

    후선택 재시도와 생성 중 위치 잡음 배제를 포함합니다.
    """

    operations: float = 0.0
    rounds: int = 0

    def add_round(self, operations: float) -> None:
        self.operations += operations
        self.rounds += 1

    def merge(self, other: "ScaleUpCounter") -> "ScaleUpCounter":
        return ScaleUpCounter(self.operations + other.operations, self.rounds + other.rounds)

    @property
    def per_round(self) -> float:
        return self.operations / self.rounds if self.rounds else 0.0


@dataclass
class CreationStats:
    """한 텔레교정기 생성의 연산 수와 수락된 구성의 잡음 위치 수"""

    operations: int = 0
    full_sites: int = 0
    meas_sites: int = 0
    ancilla_attempts: int = 0
    telecorrector_attempts: int = 0

    def located_acceptance(self, params: EffNoiseParams) -> float:
        """수락된 구성에 위치 잡음이 하나도 없을 확률"""
        full = (1.0 - params.q) ** self.full_sites
        return full * (1.0 - params.q * params.meas_scale) ** self.meas_sites


@dataclass
class Telecorrector:
    """수락된 텔레교정기: 두 절반의 오류와 신드롬 측정 반전 비트"""

    top: QubitRegister
    bottom: QubitRegister
    flips: dict[str, npt.NDArray[np.uint8]]
    stats: CreationStats


def create_verified_zero(
    circuits: ProtocolCircuits,
    params: EffNoiseParams,
    rng: np.random.Generator,
    stats: CreationStats,
) -> QubitRegister:
    """
    검증된 |0_L> 앤실라 (모든 검증 결과가 0일 때까지 재시도)

    Raises:
        RetryCapExceededError: 재시도 한도 초과
    """
    circuit = circuits.ancilla
    counts = circuits.ancilla_counts(params.memory_noise)
    for _ in range(settings.RETRY_CAP):
        registers = {
            CODE: QubitRegister.zeros(circuit.registers[CODE]),
            VERIFY: QubitRegister.zeros(circuit.registers[VERIFY]),
        }
        flips = run_circuit(circuit, registers, params, rng)
        stats.operations += counts.operations
        stats.ancilla_attempts += 1
        if not flips["verify"].any():
            stats.full_sites += counts.full_sites
            stats.meas_sites += counts.meas_sites
            return registers[CODE]
    raise RetryCapExceededError("verified ancilla", settings.RETRY_CAP, params.as_dict())


def create_telecorrector(
    code: CssCode,
    params: EffNoiseParams,
    rng: np.random.Generator,
) -> Telecorrector:
    """
    텔레교정기 생성

    같은 절반의 반복 신드롬(1과 4, 2와 3)이 일치할 때만 수락합니다.

    Raises:
        RetryCapExceededError: 재시도 한도 초과
    """
    circuits = protocol_circuits(code.name)
    creation = circuits.creation_counts(params.memory_noise)
    stats = CreationStats()
    for _ in range(settings.RETRY_CAP):
        accepted = CreationStats()
        registers = {
            name: create_verified_zero(circuits, params, rng, accepted)
            for name in (TOP, BOTTOM, *ANCILLAS)
        }
        flips = run_circuit(circuits.telecorrector, registers, params, rng, CREATION_STEPS)
        stats.operations += accepted.operations + creation.operations
        stats.ancilla_attempts += accepted.ancilla_attempts
        stats.telecorrector_attempts += 1
        syndromes = {label: syndrome_index(code, flips[label]) for label in ("1", "2", "3", "4")}
        if syndromes["1"] == syndromes["4"] and syndromes["2"] == syndromes["3"]:
            stats.full_sites = accepted.full_sites + creation.full_sites
            stats.meas_sites = accepted.meas_sites + creation.meas_sites
            return Telecorrector(registers[TOP], registers[BOTTOM], flips, stats)
    raise RetryCapExceededError("telecorrector", settings.RETRY_CAP, params.as_dict())


# ==========================================================================
# 라운드 / 시행
# ==========================================================================


class RoundResult(NamedTuple):
    """라운드 결과와 다음 라운드로 넘어갈 출력"""

    outcome: TrialOutcome
    output: QubitRegister
    operations: float


def classify_output(
    code: CssCode,
    output: QubitRegister,
    x_located_crash: bool,
    z_located_crash: bool,
) -> TrialOutcome:
    """위치 붕괴 우선, 그다음 완전 교정 후 논리 잔여로 비위치 붕괴 판정"""
    if x_located_crash or z_located_crash:
        return TrialOutcome(
            TrialKind.LOCATED_CRASH,
            x_located_crash=x_located_crash,
            z_located_crash=z_located_crash,
        )
    logical = logical_class(code, ideal_residual(code, output.x), ideal_residual(code, output.z))
    if logical is not LogicalClass.I:
        return TrialOutcome(TrialKind.UNLOCATED_CRASH, logical=str(logical))
    return TrialOutcome(TrialKind.NONE)


def run_round_det(
    code: CssCode,
    params: EffNoiseParams,
    rng: np.random.Generator,
    data: QubitRegister | None = None,
) -> RoundResult:
    """
    텔레교정 한 라운드

    D의 X 측정 결과는 B의 Z 부산물, T의 결과는 X 부산물이 됩니다.
    신드롬 1, 2로 T, B의 기존 X 오류 기여를 빼고 디코딩하며, 교정은 추적만 합니다.
    """
    circuits = protocol_circuits(code.name)
    tele = create_telecorrector(code, params, rng)

    d = QubitRegister.zeros(code.n) if data is None else QubitRegister(data.x.copy(), data.z.copy())
    located_noise(rng, d, folded_located_rate(params))
    registers = {DATA: d, TOP: tele.top, BOTTOM: tele.bottom}
    flips = run_circuit(circuits.telecorrector, registers, params, rng, ROUND_STEPS)

    f_data, f_top = flips["data"], flips["top"]
    z_decode = ml_decode_sector(
        code,
        syndrome_index(code, f_data) ^ syndrome_index(code, tele.flips["1"]),
        np.nonzero(d.z_mark)[0].tolist(),
    )
    x_decode = ml_decode_sector(
        code,
        syndrome_index(code, f_top) ^ syndrome_index(code, tele.flips["2"]),
        np.nonzero(d.x_mark)[0].tolist(),
    )
    output = QubitRegister(
        tele.bottom.x ^ f_top ^ x_decode.correction,
        tele.bottom.z ^ f_data ^ z_decode.correction,
    )
    outcome = classify_output(code, output, x_decode.located_crash, z_decode.located_crash)

    acceptance = tele.stats.located_acceptance(params)
    operations = tele.stats.operations / acceptance if acceptance > 0.0 else math.inf
    operations += circuits.round_counts(params.memory_noise).operations
    return RoundResult(outcome, output, operations)


def run_trial(
    code: CssCode,
    params: EffNoiseParams,
    rng: np.random.Generator,
    warmup_rounds: int = 1,
    counter: ScaleUpCounter | None = None,
) -> TrialOutcome:
    """
    노이즈 없는 입력에서 warmup_rounds + 1 라운드 실행

    예열 라운드에서 붕괴하면 DISCARDED를 돌려줍니다.
    """
    data: QubitRegister | None = None
    result: RoundResult | None = None
    for round_index in range(warmup_rounds + 1):
        result = run_round_det(code, params, rng, data)
        if counter is not None:
            counter.add_round(result.operations)
        if round_index < warmup_rounds and result.outcome.crashed:
            return TrialOutcome(TrialKind.DISCARDED)
        data = result.output
    assert result is not None
    return result.outcome


# ==========================================================================
# 격자 실행
# ==========================================================================


class DetChunkTask(NamedTuple):
    """프로세스 풀 작업 단위 (시행 청크)"""

    code_name: str
    p: float
    q: float
    memory_noise: bool
    meas_scale: float
    warmup_rounds: int
    seed: int
    point_index: int
    start: int
    stop: int


def run_chunk(task: DetChunkTask) -> tuple[CrashTally, ScaleUpCounter]:
    """청크 내 시행 실행 (시행별 독립 난수 스트림)"""
    code = get_code(task.code_name)
    params = EffNoiseParams(
        p=task.p, q=task.q, memory_noise=task.memory_noise, meas_scale=task.meas_scale
    )
    tally = CrashTally()
    counter = ScaleUpCounter()
    for trial in range(task.start, task.stop):
        rng = trial_rng(task.seed, task.point_index, trial)
        tally.record(run_trial(code, params, rng, task.warmup_rounds, counter))
    return tally, counter


@dataclass
class DetPointResult:
    """격자점 하나의 집계"""

    p: float
    q: float
    tally: CrashTally
    counter: ScaleUpCounter


def simulate_grid(config: DetSimulateConfig) -> list[DetPointResult]:
    """
    격자 전체 시뮬레이션

    청크 경계와 시드는 워커 수와 무관하므로 결과가 항상 같습니다.
    """
    tasks = [
        DetChunkTask(
            config.code,
            p,
            q,
            config.memory_noise,
            config.meas_scale,
            config.warmup_rounds,
            config.seed,
            index,
            start,
            stop,
        )
        for index, (p, q) in enumerate(config.points)
        for start, stop in chunk_bounds(config.trials, settings.CHUNK_TRIALS)
    ]
    results = map_tasks(run_chunk, tasks, config.workers, desc="simulate-det")

    points = [DetPointResult(p, q, CrashTally(), ScaleUpCounter()) for p, q in config.points]
    for task, (tally, counter) in zip(tasks, results, strict=True):
        point = points[task.point_index]
        point.tally = point.tally.merge(tally)
        point.counter = point.counter.merge(counter)

    for point in points:
        logger.info(
            "격자점 완료",
            extra={
                "p": point.p,
                "q": point.q,
                "n_unlocated": point.tally.n_unlocated,
                "n_located": point.tally.n_located,
                "n_none": point.tally.n_none,
                "discarded": point.tally.n_discarded,
                "ops_per_round": point.counter.per_round,
            },
        )
    return points
