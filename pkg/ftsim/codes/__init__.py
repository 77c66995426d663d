"""
Codes 모듈

Steane-7, Golay-23 CSS 코드와 신드롬/논리 클래스/회로 스케줄 도구입니다.
"""

from ftsim.codes.exceptions import UnknownCodeError
from ftsim.codes.models import CssCode, LogicalClass, StandardForm, Syndrome
from ftsim.codes.services import (
    best_standard_form,
    build_code,
    edge_coloring,
    get_code,
    golay_code,
    ideal_residual,
    is_logical,
    logical_class,
    reorder_for_depth,
    standard_form,
    steane_code,
    syndrome,
    syndrome_index,
)

__all__ = [
    # Models
    "CssCode",
    "LogicalClass",
    "StandardForm",
    "Syndrome",
    # Services
    "build_code",
    "steane_code",
    "golay_code",
    "get_code",
    "syndrome",
    "syndrome_index",
    "is_logical",
    "logical_class",
    "ideal_residual",
    "edge_coloring",
    "standard_form",
    "reorder_for_depth",
    "best_standard_form",
    # Exceptions
    "UnknownCodeError",
]
