"""
Closed-form bounds on elementary symmetric functions of realignment spectra

B~_ell(m, n): max of f_ell over realignment spectra of states whose
realignment trace norm is at most 1. B_ell(n, n): the same max over
separable states. Dimensions follow m <= n.
"""

from dataclasses import dataclass, asdict
from enum import Enum
from math import comb, sqrt
from typing import Dict, Optional, Tuple

from src.core.symmetric import SpikeFlat, spike_esf
from src.utils.config import config
from src.utils.errors import BadDims, BadOrder


class Regime(Enum):
    """Which closed form applies to B~_ell(m, n)"""
    SPIKE_FLAT = "SpikeFlat"    # m <= n <= m^3 - m/2
    FLAT = "Flat"               # n >= m^3
    UNKNOWN_GAP = "UnknownGap"  # m^3 - m/2 < n < m^3, value open


@dataclass
class BoundResult:
    """Value of a bound together with the regime that produced it"""
    m: int
    n: int
    ell: int
    regime: Regime
    value: Optional[float]
    alpha: float
    beta: float
    upper_bound: float
    ell_one_convention: bool = False

    @property
    def known(self) -> bool:
        return self.value is not None

    def as_dict(self) -> Dict:
        data = asdict(self)
        data["regime"] = self.regime.value
        return data


@dataclass
class FeasibilityReport:
    """Diagnostics of the spike-flat construction for given (m, n)"""
    m: int
    n: int
    q: int
    r: int
    alpha: float
    beta: float
    s1: float
    s2: float
    s3: float
    f_qr: float
    threshold: int
    feasible: bool

    def as_dict(self) -> Dict:
        return asdict(self)


def _check_dims(m: int, n: int):
    if m < 2 or m > n:
        raise BadDims(f"Bounds need 2 <= m <= n, got (m, n) = ({m}, {n})")


def _check_order(ell: int, size: int):
    if not 1 <= ell <= size:
        raise BadOrder(f"Order ell={ell} outside 1..{size}")


def regime_for(m: int, n: int) -> Regime:
    """
    Classify (m, n) by exact integer comparison

    n <= m^3 - m/2 is tested as 2n <= 2m^3 - m since the bound is
    half-integral for odd m.
    """
    _check_dims(m, n)
    if 2 * n <= 2 * m ** 3 - m:
        return Regime.SPIKE_FLAT
    if n >= m ** 3:
        return Regime.FLAT
    return Regime.UNKNOWN_GAP


def alpha_beta(m: int, n: int) -> Tuple[float, float]:
    """
    alpha = 1/sqrt(mn) and beta = (1 - alpha)/(m^2 - 1)

    Raises:
        BadDims: If m < 2 or m > n
    """
    _check_dims(m, n)
    alpha = 1.0 / sqrt(m * n)
    beta = (1.0 - alpha) / (m * m - 1)
    return alpha, beta


def universal_cap(m: int, ell: int) -> float:
    """C(m^2, ell) / m^(2 ell), the value of f_ell at the uniform vector"""
    if m < 2:
        raise BadDims(f"Need m >= 2, got {m}")
    _check_order(ell, m * m)
    return comb(m * m, ell) / m ** (2 * ell)


def certified_cap(m: int, n: int, ell: int) -> float:
    """
    Upper bound on f_ell for any realignment spectrum with sum <= 1

    f_ell(alpha, beta, ..., beta) when n <= m^3 (this covers the open gap),
    otherwise the uniform value.
    """
    _check_dims(m, n)
    _check_order(ell, m * m)
    if ell == 1:
        return 1.0
    if n <= m ** 3:
        alpha, beta = alpha_beta(m, n)
        return spike_esf(SpikeFlat(alpha, beta, m * m), ell)
    return universal_cap(m, ell)


def b_tilde(m: int, n: int, ell: int) -> BoundResult:
    """
    B~_ell(m, n) with its regime

    Args:
        m, n: Subsystem dimensions, 2 <= m <= n
        ell: Order, 1 <= ell <= m^2 (ell = 1 gives 1 by the trace-norm constraint)

    Returns:
        BoundResult; value is None in the UnknownGap regime

    Raises:
        BadDims, BadOrder
    """
    regime = regime_for(m, n)
    _check_order(ell, m * m)

    if regime == Regime.FLAT:
        alpha = beta = 1.0 / (m * m)
    else:
        alpha, beta = alpha_beta(m, n)

    result = BoundResult(m=m, n=n, ell=ell, regime=regime, value=None,
                         alpha=alpha, beta=beta, upper_bound=certified_cap(m, n, ell))

    if regime == Regime.UNKNOWN_GAP:
        return result
    if ell == 1:
        result.value = 1.0
        result.ell_one_convention = True
    elif regime == Regime.SPIKE_FLAT:
        result.value = spike_esf(SpikeFlat(alpha, beta, m * m), ell)
    else:
        result.value = universal_cap(m, ell)
    return result


def b_sep(n: int, ell: int) -> float:
    """
    B_ell(n, n) for separable states

    f_ell(1/n, beta, ..., beta) with beta = (n - 1)/(n(n^2 - 1)).
    """
    if n < 2:
        raise BadDims(f"Need n >= 2, got {n}")
    _check_order(ell, n * n)
    alpha = 1.0 / n
    beta = (n - 1) / (n * (n * n - 1))
    return spike_esf(SpikeFlat(alpha, beta, n * n), ell)


def separable_envelope(m: int, n: int, ell: int) -> Tuple[float, bool]:
    """
    Best certified cap on f_ell for separable states

    Returns:
        Tuple of (cap, is_exact); exact only when m == n
    """
    if m == n:
        return b_sep(n, ell), True
    # separable states satisfy the realignment criterion
    return certified_cap(m, n, ell), False


def construction_feasible(m: int, n: int) -> FeasibilityReport:
    """
    Check whether the spike-flat construction is a density matrix

    With n = mq + r (0 <= r < m) the mixing weight
    s2 = alpha^2 - beta/(m sqrt(q)) must be nonnegative; equivalently
    f(q, r) = sqrt((mq + r)^2 / q) - sqrt((mq + r)/(mq)) <= m^2 - 1.

    Returns:
        FeasibilityReport with q, r, the weights, f(q, r) and the threshold
    """
    _check_dims(m, n)
    q, r = divmod(n, m)
    alpha, beta = alpha_beta(m, n)
    s1 = beta / sqrt(q)
    s2 = alpha ** 2 - beta / (m * sqrt(q))
    s3 = alpha ** 2
    f_qr = sqrt((m * q + r) ** 2 / q) - sqrt((m * q + r) / (m * q))
    return FeasibilityReport(
        m=m, n=n, q=q, r=r, alpha=alpha, beta=beta,
        s1=s1, s2=s2, s3=s3, f_qr=f_qr, threshold=m * m - 1,
        feasible=s2 >= -config.TOL_FEASIBLE,
    )
