"""
Codes 모듈 모델

CSS 코드, 논리 클래스, 표준형(인코더/검증 스케줄)을 정의합니다.
두 코드 모두 X/Z 섹터에 같은 검사 행렬을 쓰는 자기 쌍대 CSS 코드입니다.
"""

from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

import numpy as np
import numpy.typing as npt

from shared.utils.gf2 import BitMatrix, BitVector, RowEchelon

Syndrome = npt.NDArray[np.uint8]


class LogicalClass(StrEnum):
    """잔여 오류의 논리 클래스"""

    I = "I"  # noqa: E741
    X = "X"
    Z = "Z"
    Y = "Y"

    @classmethod
    def from_sectors(cls, x_logical: bool, z_logical: bool) -> "LogicalClass":
        return (cls.I, cls.Z, cls.X, cls.Y)[(int(x_logical) << 1) | int(z_logical)]


@dataclass(frozen=True, eq=False)
class CssCode:
    """
    CSS 코드

    decode_array[s]는 신드롬 정수 s(비트 k가 2^k 자리)의 최소 무게 오류 패턴입니다.
    """

    name: str
    checks: BitMatrix  # r x n 패리티 검사 행렬
    logical_rep: BitVector  # 논리 연산자 대표 (X/Z 공통 지지집합)
    decode_array: BitMatrix  # 2^r x n
    row_space: RowEchelon  # 안정자 행 공간 기저
    column_syndromes: tuple[int, ...]  # 각 큐비트 단일 오류의 신드롬 정수

    @property
    def n(self) -> int:
        return int(self.checks.shape[1])

    @property
    def r(self) -> int:
        return int(self.checks.shape[0])

    @property
    def t(self) -> int:
        """교정 가능한 비위치 오류 수 (거리 2t+1)"""
        return int(self.decode_array.sum(axis=1).max())

    def __repr__(self) -> str:
        return f"CssCode(name={self.name!r}, n={self.n}, r={self.r})"


@dataclass(frozen=True, eq=False)
class StandardForm:
    """
    열 순열로 재표준화한 검사 행렬과 회로 스케줄

    basis는 원래 좌표계의 행 공간 기저로, pivots 열에서 단위 행렬입니다.
    인코더는 피벗 |+>에서 대상 |0>으로 CNOT을 걸고, 검증은 basis 각 행과
    논리 대표의 지지집합에 CZ를 겁니다.
    """

    permutation: tuple[int, ...]
    basis: BitMatrix
    pivots: tuple[int, ...]
    logical_rep: BitVector
    encoder_depth: int
    verifier_depth: int
    encoder_pairs: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def depth(self) -> int:
        """인코딩 + 검증 + 준비/측정 2단계"""
        return self.encoder_depth + self.verifier_depth + 2

    @property
    def targets(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.basis.shape[1]) if q not in self.pivots)

    @property
    def verifier_supports(self) -> tuple[tuple[int, ...], ...]:
        rows = [*self.basis, self.logical_rep]
        return tuple(tuple(int(q) for q in np.nonzero(row)[0]) for row in rows)

    @cached_property
    def encoder_layers(self) -> list[list[tuple[int, int]]]:
        """(피벗, 대상) CNOT 층 (층마다 큐비트당 게이트 하나)"""
        from ftsim.codes.services import edge_coloring

        return edge_coloring(list(self.encoder_pairs))

    @cached_property
    def verifier_layers(self) -> list[list[tuple[int, int]]]:
        """(검증 행 인덱스, 큐비트) CZ 층"""
        from ftsim.codes.services import edge_coloring

        pairs = [(k, q) for k, support in enumerate(self.verifier_supports) for q in support]
        return edge_coloring(pairs)
