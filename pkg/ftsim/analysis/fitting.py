"""
가중 최소제곱 다항식 적합

열 스케일링한 설계 행렬을 열 피벗 QR로 풉니다.
단항식 크기 차이가 수십 자릿수여도 정규방정식보다 안정적입니다.
"""

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ftsim.analysis.exceptions import InsufficientPointsError, RankDeficientFitError

Monomial = tuple[int, int]
FloatArray = npt.NDArray[np.float64]


def design_matrix(u: npt.ArrayLike, v: npt.ArrayLike, monomials: Sequence[Monomial]) -> FloatArray:
    """열 k = u^i_k v^j_k"""
    uu = np.asarray(u, dtype=np.float64)
    vv = np.asarray(v, dtype=np.float64)
    columns = np.empty((uu.size, len(monomials)), dtype=np.float64)
    for k, (i, j) in enumerate(monomials):
        columns[:, k] = uu**i * vv**j
    return columns


def weighted_lstsq(
    design: FloatArray,
    values: npt.ArrayLike,
    sigma: npt.ArrayLike,
    monomials: Sequence[Monomial],
) -> tuple[FloatArray, FloatArray]:
    """
    Σ ((design @ c - values) / sigma)^2 최소화

    Returns:
        (계수, 계수 표준오차)

    Raises:
        InsufficientPointsError: 점 수 < 항 수
        RankDeficientFitError: 결정되지 않는 단항식이 있는 경우
    """
    rows, cols = design.shape
    if rows < cols:
        raise InsufficientPointsError(rows, cols)
    weights = 1.0 / np.asarray(sigma, dtype=np.float64)
    a = design * weights[:, None]
    b = np.asarray(values, dtype=np.float64) * weights

    scale = np.linalg.norm(a, axis=0)
    scale[scale == 0.0] = 1.0
    q, r, perm = scipy.linalg.qr(a / scale, mode="economic", pivoting=True)

    diag = np.abs(np.diag(r))
    tol = diag[0] * max(rows, cols) * np.finfo(np.float64).eps if diag.size else 0.0
    rank = int(np.count_nonzero(diag > tol))
    if rank < cols:
        raise RankDeficientFitError([monomials[k] for k in perm[rank:]], rank)

    solution = scipy.linalg.solve_triangular(r, q.T @ b)
    r_inv = scipy.linalg.solve_triangular(r, np.eye(cols))
    spread = np.sqrt(np.sum(r_inv**2, axis=1))

    coeffs = np.empty(cols, dtype=np.float64)
    stderr = np.empty(cols, dtype=np.float64)
    coeffs[perm] = solution
    stderr[perm] = spread
    return coeffs / scale, stderr / scale
