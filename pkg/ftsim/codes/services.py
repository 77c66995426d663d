"""
Codes 모듈 서비스

Steane-7/Golay-23 코드 구성, 신드롬 계산, 논리 클래스 판정,
회로 깊이 최소화를 위한 열 재배열을 담당합니다.
"""

import logging
from collections import defaultdict
from collections.abc import Hashable, Sequence
from functools import lru_cache
from itertools import combinations
from typing import TypeVar

import numpy as np
import numpy.typing as npt

from ftsim.codes.exceptions import UnknownCodeError
from ftsim.codes.models import CssCode, LogicalClass, StandardForm, Syndrome
from shared.utils.gf2 import as_bits, bits_to_int, in_row_space, mat_vec, row_echelon

logger = logging.getLogger(__name__)

L = TypeVar("L", bound=Hashable)
R = TypeVar("R", bound=Hashable)

# ==========================================================================
# 검사 행렬 상수
# ==========================================================================

# Hamming(7,4): 이미 기약 행사다리꼴 (피벗 0, 1, 3)
STEANE_CHECKS = (
    (1, 0, 1, 0, 1, 0, 1),
    (0, 1, 1, 0, 0, 1, 1),
    (0, 0, 0, 1, 1, 1, 1),
)
STEANE_LOGICAL = (0, 1, 2)

# [I_11 | M]: M의 i < 11 열은 (j - i) mod 11 ∈ {0} ∪ QR(11), 마지막 열은 모두 1
GOLAY_RESIDUES = frozenset({0, 1, 3, 4, 5, 9})
GOLAY_LOGICAL = (0, 1, 3, 4, 5, 9, 11)


def _golay_checks() -> npt.NDArray[np.uint8]:
    identity = np.eye(11, dtype=np.uint8)
    block = np.zeros((11, 12), dtype=np.uint8)
    for j in range(11):
        for i in range(11):
            block[j, i] = 1 if (j - i) % 11 in GOLAY_RESIDUES else 0
        block[j, 11] = 1
    return np.hstack([identity, block])


# ==========================================================================
# 코드 구성
# ==========================================================================


def build_code(name: str, checks: npt.ArrayLike, logical_support: Sequence[int]) -> CssCode:
    """
    검사 행렬과 논리 대표로 CSS 코드 구성

    디코딩 배열은 무게 오름차순으로 오류를 열거해 각 신드롬에 처음 도달한
    패턴을 기록합니다. 같은 무게에서는 사전식 첫 조합이 선택됩니다.
    """
    matrix = as_bits(checks)
    r, n = matrix.shape
    logical = np.zeros(n, dtype=np.uint8)
    logical[list(logical_support)] = 1
    assert not mat_vec(matrix, logical).any(), "논리 대표가 검사 행렬과 교환하지 않습니다"

    column_syndromes = tuple(bits_to_int(matrix[:, q]) for q in range(n))
    decode_array = np.zeros((1 << r, n), dtype=np.uint8)
    filled = np.zeros(1 << r, dtype=bool)
    filled[0] = True
    remaining = (1 << r) - 1
    weight = 0
    while remaining:
        weight += 1
        for support in combinations(range(n), weight):
            s = 0
            for q in support:
                s ^= column_syndromes[q]
            if not filled[s]:
                filled[s] = True
                decode_array[s, list(support)] = 1
                remaining -= 1
                if not remaining:
                    break

    code = CssCode(
        name=name,
        checks=matrix,
        logical_rep=logical,
        decode_array=decode_array,
        row_space=row_echelon(matrix),
        column_syndromes=column_syndromes,
    )
    assert not in_row_space(code.row_space, logical), "논리 대표가 안정자 행 공간에 속합니다"
    logger.debug("코드 구성 완료", extra={"code": name, "n": n, "r": r, "t": code.t})
    return code


@lru_cache
def steane_code() -> CssCode:
    """Steane 7큐비트 코드"""
    return build_code("steane7", STEANE_CHECKS, STEANE_LOGICAL)


@lru_cache
def golay_code() -> CssCode:
    """[23,12,7] Golay 코드 기반 CSS 코드"""
    return build_code("golay23", _golay_checks(), GOLAY_LOGICAL)


CODE_FACTORIES = {"steane7": steane_code, "golay23": golay_code}


def get_code(name: str) -> CssCode:
    """
    이름으로 코드 조회

    Raises:
        UnknownCodeError: 지원하지 않는 코드 이름
    """
    factory = CODE_FACTORIES.get(name)
    if factory is None:
        raise UnknownCodeError(name, sorted(CODE_FACTORIES))
    return factory()


# ==========================================================================
# 신드롬 / 논리 클래스
# ==========================================================================


def syndrome(code: CssCode, error_bits: npt.ArrayLike) -> Syndrome:
    """GF(2) 행렬-벡터 곱"""
    return mat_vec(code.checks, as_bits(error_bits))


def syndrome_index(code: CssCode, error_bits: npt.ArrayLike) -> int:
    """신드롬 정수 (decode_array 인덱스)"""
    s = 0
    for q in np.nonzero(as_bits(error_bits))[0]:
        s ^= code.column_syndromes[int(q)]
    return s


def is_logical(code: CssCode, residual: npt.ArrayLike) -> bool:
    """신드롬 0인 잔여가 안정자 행 공간 밖이면 논리 오류"""
    bits = as_bits(residual)
    assert not syndrome(code, bits).any(), "신드롬이 0이 아닌 잔여입니다"
    return not in_row_space(code.row_space, bits)


def logical_class(
    code: CssCode,
    residual_x_bits: npt.ArrayLike,
    residual_z_bits: npt.ArrayLike,
) -> LogicalClass:
    """섹터별 논리 여부를 I/X/Z/Y로 결합"""
    return LogicalClass.from_sectors(
        is_logical(code, residual_x_bits),
        is_logical(code, residual_z_bits),
    )


def ideal_residual(code: CssCode, error_bits: npt.ArrayLike) -> npt.NDArray[np.uint8]:
    """완전한 비위치 디코딩 후 남는 잔여 (error XOR decode_array[s])"""
    bits = as_bits(error_bits)
    return bits ^ code.decode_array[syndrome_index(code, bits)]


# ==========================================================================
# 회로 스케줄 / 깊이
# ==========================================================================


def edge_coloring(pairs: list[tuple[L, R]]) -> list[list[tuple[L, R]]]:
    """
    이분 그래프 간선 색칠 (최대 차수만큼의 색)

    교대 경로 뒤집기로 각 간선에 양 끝에서 비어 있는 색을 배정합니다.
    색 하나가 한 시간 단계(큐비트당 게이트 하나)에 해당합니다.

    Returns:
        색 순서대로의 간선 층
    """
    at: dict[tuple[int, Hashable], dict[int, tuple[int, Hashable]]] = defaultdict(dict)

    def free(vertex: tuple[int, Hashable]) -> int:
        color = 0
        while color in at[vertex]:
            color += 1
        return color

    for left, right in pairs:
        u, v = (0, left), (1, right)
        a, b = free(u), free(v)
        if a in at[v]:
            path = []
            node, color = v, a
            while color in at[node]:
                nxt = at[node][color]
                path.append((node, nxt, color))
                node, color = nxt, (b if color == a else a)
            for x, y, c in path:
                del at[x][c]
                del at[y][c]
            for x, y, c in path:
                swapped = b if c == a else a
                at[x][swapped] = y
                at[y][swapped] = x
        at[u][a] = v
        at[v][a] = u

    layers: dict[int, list[tuple[L, R]]] = defaultdict(list)
    for (side, left), colors in at.items():
        if side == 0:
            for color, (_, right) in colors.items():
                layers[color].append((left, right))  # type: ignore[arg-type]
    return [sorted(layers[c], key=repr) for c in sorted(layers)]


def _max_degree(pairs: Sequence[tuple[int, int]]) -> int:
    if not pairs:
        return 0
    left: dict[int, int] = defaultdict(int)
    right: dict[int, int] = defaultdict(int)
    for a, b in pairs:
        left[a] += 1
        right[b] += 1
    return max(max(left.values()), max(right.values()))


def standard_form(code: CssCode, permutation: Sequence[int] | None = None) -> StandardForm:
    """
    열 순열 후 재표준화

    순열된 행렬을 행 축약해 피벗을 정하고, 결과를 원래 좌표로 되돌립니다.
    깊이는 간선 색칠이 달성하는 최대 차수로 계산합니다.
    """
    n = code.n
    perm = tuple(range(n)) if permutation is None else tuple(int(p) for p in permutation)
    echelon = row_echelon(code.checks[:, list(perm)])
    basis = np.zeros_like(echelon.matrix)
    basis[:, list(perm)] = echelon.matrix
    pivots = tuple(perm[c] for c in echelon.pivots)

    encoder_pairs = tuple(
        (pivots[k], int(q))
        for k in range(len(pivots))
        for q in np.nonzero(basis[k])[0]
        if int(q) != pivots[k]
    )
    supports = [np.nonzero(row)[0] for row in [*basis, code.logical_rep]]
    verifier_pairs = [(k, int(q)) for k, support in enumerate(supports) for q in support]
    return StandardForm(
        permutation=perm,
        basis=basis,
        pivots=pivots,
        logical_rep=code.logical_rep.copy(),
        encoder_depth=_max_degree(encoder_pairs),
        verifier_depth=_max_degree(verifier_pairs),
        encoder_pairs=encoder_pairs,
    )


def reorder_for_depth(code: CssCode, rng: np.random.Generator, tries: int) -> StandardForm:
    """
    무작위 열 순열 탐색으로 앤실라 회로 깊이 최소화

    tries=0이면 항등 순열을 돌려줍니다. 같은 깊이면 먼저 찾은 것을 유지합니다.

    Returns:
        최소 깊이 표준형 (permutation, depth 포함)
    """
    best = standard_form(code)
    for _ in range(tries):
        candidate = standard_form(code, rng.permutation(code.n))
        if candidate.depth < best.depth:
            best = candidate
    logger.info(
        "열 재배열 탐색 완료",
        extra={"code": code.name, "tries": tries, "depth": best.depth},
    )
    return best


@lru_cache
def best_standard_form(name: str, tries: int, seed: int) -> StandardForm:
    """프로토콜용 표준형 (코드/탐색 횟수/시드별 캐시)"""
    code = get_code(name)
    if tries <= 0:
        return standard_form(code)
    return reorder_for_depth(code, np.random.default_rng(seed), tries)
