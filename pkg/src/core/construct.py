"""
Explicit states attaining the realignment bounds

extremal_flat: realignment spectrum (1/m^2, ..., 1/m^2) when n >= m^3
extremal_spike: realignment spectrum (alpha, beta, ..., beta) when feasible
separable_witness: the m = n spike state (I + x x^t)/(n(n+1))
diagonal_witness: 0/1 vectors certifying s_1 >= 1/sqrt(mn)
"""

import logging
from dataclasses import dataclass, asdict
from math import sqrt
from typing import Dict, Optional, Tuple

import numpy as np

from src.core.bounds import construction_feasible
from src.linalg.bipartite import (
    BipartiteDims,
    DensityMatrix,
    basis_matrix,
    realign,
    tensor,
)
from src.utils.config import config
from src.utils.errors import BadDims, InfeasibleConstruction, RegimeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters of the spike-flat construction, n = mq + r"""
    m: int
    n: int
    q: int
    r: int
    alpha: float
    beta: float
    s1: float
    s2: float
    s3: float

    @property
    def feasible(self) -> bool:
        return self.s2 >= -config.TOL_FEASIBLE

    def as_dict(self) -> Dict:
        return asdict(self)


def _block_f(k: int, l: int, m: int, copies: int, pad: int) -> np.ndarray:
    """F_kl = (E_kl (x) I_copies) (+) O_pad"""
    inner = tensor(basis_matrix(k, l, m), np.eye(copies))
    size = m * copies + pad
    f = np.zeros((size, size), dtype=complex)
    f[: m * copies, : m * copies] = inner
    return f


def _sum_ekl_fkl(m: int, copies: int, pad: int) -> np.ndarray:
    """sum_kl E_kl (x) F_kl; a 0/1 matrix"""
    n = m * copies + pad
    total = np.zeros((m * n, m * n), dtype=complex)
    for k in range(m):
        for l in range(m):
            total += tensor(basis_matrix(k, l, m), _block_f(k, l, m, copies, pad))
    return total


def extremal_flat(m: int, n: int) -> DensityMatrix:
    """
    State whose realignment has m^2 singular values equal to 1/m^2

    rho = (1/m^3) sum_kl E_kl (x) F_kl with F_kl = (E_kl (x) I_{m^2}) (+) O_{n - m^3}

    Raises:
        RegimeError: If n < m^3
    """
    if m < 1 or n < m ** 3:
        raise RegimeError(f"extremal_flat needs n >= m^3, got (m, n) = ({m}, {n})")
    mat = _sum_ekl_fkl(m, m * m, n - m ** 3) / m ** 3
    return DensityMatrix(mat, BipartiteDims(m, n))


def construction_params(m: int, n: int) -> ConstructionParams:
    """Mixing weights s1 = beta/sqrt(q), s2 = alpha^2 - beta/(m sqrt(q)), s3 = alpha^2"""
    report = construction_feasible(m, n)
    return ConstructionParams(m=m, n=n, q=report.q, r=report.r,
                              alpha=report.alpha, beta=report.beta,
                              s1=report.s1, s2=report.s2, s3=report.s3)


def extremal_spike(m: int, n: int) -> Tuple[DensityMatrix, ConstructionParams]:
    """
    State whose realignment has singular values (alpha, beta, ..., beta)

    rho = s1 rho1 + s2 rho2 + s3 rho3 with
    rho1 = sum_kl E_kl (x) F_kl, F_kl = (E_kl (x) I_q) (+) O_r,
    rho2 = I_m (x) (I_mq (+) O_r), rho3 = I_m (x) (O_mq (+) I_r).

    Raises:
        BadDims: If not 2 <= m <= n
        InfeasibleConstruction: If s2 < 0
    """
    report = construction_feasible(m, n)
    if not report.feasible:
        raise InfeasibleConstruction(
            f"Spike-flat construction infeasible for (m, n) = ({m}, {n}): s2 = {report.s2:.6g}",
            diagnostics=report.as_dict(),
        )
    params = construction_params(m, n)
    q, r = params.q, params.r

    rho1 = _sum_ekl_fkl(m, q, r)
    upper = np.zeros((n, n), dtype=complex)
    upper[: m * q, : m * q] = np.eye(m * q)
    lower = np.zeros((n, n), dtype=complex)
    lower[m * q:, m * q:] = np.eye(r)
    rho2 = tensor(np.eye(m), upper)
    rho3 = tensor(np.eye(m), lower)

    mat = params.s1 * rho1 + params.s2 * rho2 + params.s3 * rho3
    logger.debug("extremal_spike(%d, %d): q=%d r=%d s2=%.3e", m, n, q, r, params.s2)
    return DensityMatrix(mat, BipartiteDims(m, n)), params


def separable_witness(n: int) -> DensityMatrix:
    """
    (I_{n^2} + x x^t)/(n(n+1)) with x_i = 1 at i = k(n+1)+1 (1-based)

    Equal to extremal_spike(n, n). Its PPT property is checked by
    criteria.ppt_test; for n = 2 that certifies separability.
    """
    if n < 2:
        raise BadDims(f"Need n >= 2, got {n}")
    x, _ = diagonal_witness(n, n)
    mat = (np.eye(n * n) + np.outer(x, x)) / (n * (n + 1))
    return DensityMatrix(mat.astype(complex), BipartiteDims(n, n))


def _diagonal_indicator(d: int) -> np.ndarray:
    # 1-based positions k(d+1)+1, k = 0..d-1
    v = np.zeros(d * d, dtype=int)
    v[[k * (d + 1) for k in range(d)]] = 1
    return v


def diagonal_witness(m: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    0/1 vectors x (length m^2) and y (length n^2) with ones at the
    diagonal positions, so that x^t rho^R y = trace(rho)

    Returns:
        Tuple (x, y) of integer arrays
    """
    if m < 1 or n < 1:
        raise BadDims(f"Need m, n >= 1, got ({m}, {n})")
    return _diagonal_indicator(m), _diagonal_indicator(n)


def witness_lower_bound(rho: DensityMatrix) -> float:
    """
    (x^t rho^R y)/(sqrt(m) sqrt(n)); a lower bound on the top realignment
    singular value, equal to 1/sqrt(mn) for every state
    """
    m, n = rho.dims.m, rho.dims.n
    x, y = diagonal_witness(m, n)
    value = x @ realign(rho) @ y
    return float(np.real(value)) / (sqrt(m) * sqrt(n))


def state_for_regime(m: int, n: int) -> Optional[DensityMatrix]:
    """
    The construction attaining B~_ell(m, n), or None inside the open gap
    """
    if n >= m ** 3:
        return extremal_flat(m, n)
    if construction_feasible(m, n).feasible:
        return extremal_spike(m, n)[0]
    return None
