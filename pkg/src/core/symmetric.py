"""
Elementary symmetric functions and majorization
"""

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from src.utils.config import config
from src.utils.errors import BadOrder, LengthMismatch, NegativeEntry


@dataclass(frozen=True)
class SpikeFlat:
    """The vector (spike, flat, ..., flat) of length count"""
    spike: float
    flat: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise BadOrder(f"SpikeFlat needs count >= 1, got {self.count}")
        if self.spike < 0 or self.flat < 0:
            raise NegativeEntry("SpikeFlat entries must be nonnegative")
        if not np.isfinite(self.spike + (self.count - 1) * self.flat):
            raise NegativeEntry("SpikeFlat entries must be finite")

    def expand(self) -> np.ndarray:
        values = np.full(self.count, float(self.flat))
        values[0] = self.spike
        return values

    @property
    def total(self) -> float:
        return self.spike + (self.count - 1) * self.flat


def _check_nonnegative(s: Sequence[float]) -> np.ndarray:
    values = np.asarray(s, dtype=float).reshape(-1)
    if np.any(values < 0):
        raise NegativeEntry(f"Entries must be nonnegative, min is {values.min():.3e}")
    return values


def esf_all(s: Sequence[float]) -> np.ndarray:
    """
    All elementary symmetric functions e_0..e_N of a nonnegative vector

    Uses e_l^(k) = e_l^(k-1) + s_k e_(l-1)^(k-1); every term is nonnegative,
    so there is no cancellation.

    Returns:
        Array of length N + 1 with e[0] = 1
    """
    values = _check_nonnegative(s)
    e = np.zeros(values.size + 1)
    e[0] = 1.0
    for k, x in enumerate(values, start=1):
        # right-hand side is evaluated on the previous stage
        e[1:k + 1] = e[1:k + 1] + x * e[0:k]
    return e


def esf(s: Sequence[float], ell: int) -> float:
    """
    The ell-th elementary symmetric function f_ell(s)

    Args:
        s: Nonnegative reals
        ell: Order, 1 <= ell <= len(s)

    Returns:
        Sum over all ell-subsets of the products of their entries

    Raises:
        BadOrder: If ell is out of range
        NegativeEntry: If any entry is negative
    """
    values = _check_nonnegative(s)
    if not 1 <= ell <= values.size:
        raise BadOrder(f"Order ell={ell} outside 1..{values.size}")
    return float(esf_all(values)[ell])


def majorizes(y: Sequence[float], x: Sequence[float], tol: Optional[float] = None) -> bool:
    """
    True iff x is majorized by y (x < y)

    Both vectors are sorted descending internally; prefix sums of x must not
    exceed those of y and the totals must agree, each within tol.

    Raises:
        LengthMismatch: If the vectors differ in length
    """
    tol = config.TOL_MAJORIZATION if tol is None else tol
    x = np.sort(np.asarray(x, dtype=float).reshape(-1))[::-1]
    y = np.sort(np.asarray(y, dtype=float).reshape(-1))[::-1]
    if x.size != y.size:
        raise LengthMismatch(f"Lengths differ: {x.size} vs {y.size}")

    px = np.cumsum(x)
    py = np.cumsum(y)
    if abs(px[-1] - py[-1]) > tol:
        return False
    return bool(np.all(px <= py + tol))


def spike_esf(v: SpikeFlat, ell: int) -> float:
    """
    Closed form of f_ell(spike, flat, ..., flat)

    C(N-1, ell) flat^ell + spike C(N-1, ell-1) flat^(ell-1)

    Raises:
        BadOrder: If ell is outside 1..N
    """
    n = v.count
    if not 1 <= ell <= n:
        raise BadOrder(f"Order ell={ell} outside 1..{n}")
    return float(comb(n - 1, ell) * v.flat ** ell
                 + v.spike * comb(n - 1, ell - 1) * v.flat ** (ell - 1))
