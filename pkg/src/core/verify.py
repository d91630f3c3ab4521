"""
Property suites on sampled states
Checks the top-singular-value lower bound, the majorization chain and the
PPT trace-norm bridge over Hilbert-Schmidt samples
"""

import logging
from dataclasses import dataclass, asdict
from math import sqrt
from typing import Iterable, List, Tuple

import numpy as np
import pandas as pd

from src.core.bounds import alpha_beta
from src.core.construct import witness_lower_bound
from src.core.criteria import ppt_test
from src.core.explore import candidate_rng, mix64, sample_density
from src.core.symmetric import SpikeFlat, esf, majorizes, spike_esf
from src.linalg.bipartite import BipartiteDims, DensityMatrix, maximally_mixed, realign
from src.linalg.matcore import singular_values
from src.utils.config import config

logger = logging.getLogger(__name__)

DEFAULT_DIMS = [(2, 2), (2, 3), (3, 3), (2, 4)]

# Independent sample streams per suite
TOP_SINGULAR_STREAM = 1
MAJORIZATION_STREAM = 2
BRIDGE_STREAM = 3


@dataclass
class SuiteReport:
    """Outcome of one property suite on one pair of dimensions"""
    suite: str
    m: int
    n: int
    samples: int
    violations: int
    worst_margin: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> dict:
        return asdict(self)


def _stream(seed: int, stream: int, m: int, n: int) -> int:
    return mix64(mix64(seed, stream), m * 1000 + n)


def top_singular_suite(m: int, n: int, samples: int, seed: int) -> SuiteReport:
    """
    s_1 >= 1/sqrt(mn) on sampled states, with the witness bilinear form equal
    to 1/sqrt(mn) as the certificate

    worst_margin is the smallest s_1 - 1/sqrt(mn) observed.
    """
    base = _stream(seed, TOP_SINGULAR_STREAM, m, n)
    floor = 1.0 / sqrt(m * n)
    violations = 0
    worst = float("inf")
    for i in range(samples):
        rho = sample_density(m, n, candidate_rng(base, i))
        s1 = float(singular_values(realign(rho))[0])
        certificate = witness_lower_bound(rho)
        worst = min(worst, s1 - floor)
        if s1 < floor - 1e-10 or abs(certificate - floor) > 1e-12 or s1 < certificate - 1e-10:
            violations += 1
    return SuiteReport("top_singular", m, n, samples, violations, worst)


def _constrained_state(m: int, n: int, rng: np.random.Generator) -> Tuple[DensityMatrix, np.ndarray]:
    """
    A Hilbert-Schmidt sample, mixed with white noise when its realignment
    trace norm exceeds 1; returns the state and its realignment spectrum
    """
    rho = sample_density(m, n, rng)
    spectrum = singular_values(realign(rho))
    total = spectrum.sum()
    if total <= 1.0:
        return rho, spectrum

    # trace norm is convex and the noise term contributes 1/sqrt(mn) < 1
    noise_norm = 1.0 / sqrt(m * n)
    t_min = (total - 1.0) / (total - noise_norm)
    t = t_min + (1.0 - t_min) * 0.5 * rng.random()
    mat = (1.0 - t) * rho.mat + t * maximally_mixed(m, n).mat
    mixed = DensityMatrix(mat, BipartiteDims(m, n), validate=False)
    return mixed, singular_values(realign(mixed))


def majorization_suite(m: int, n: int, samples: int, seed: int) -> SuiteReport:
    """
    For states with realignment trace norm at most 1 (n <= m^3):
    uniform < (alpha, beta, ..., beta) < s / sum(s), and
    f_ell(s) <= f_ell(alpha, beta, ..., beta) + 1e-9 for ell >= 2

    States whose mixed spectrum still sums above 1 are skipped, not counted.
    worst_margin is the smallest f_ell(alpha, beta, ...) - f_ell(s) observed.
    """
    base = _stream(seed, MAJORIZATION_STREAM, m, n)
    alpha, beta = alpha_beta(m, n)
    size = m * m
    spike = SpikeFlat(alpha, beta, size)
    uniform = np.full(size, 1.0 / size)
    caps = [spike_esf(spike, ell) for ell in range(2, size + 1)]

    violations = 0
    accepted = 0
    worst = float("inf")
    for i in range(samples):
        _, s = _constrained_state(m, n, candidate_rng(base, i))
        if s.sum() > 1.0:
            continue
        accepted += 1
        ok = majorizes(spike.expand(), uniform) and majorizes(s / s.sum(), spike.expand())
        for ell, cap in zip(range(2, size + 1), caps):
            margin = cap - esf(s, ell)
            worst = min(worst, margin)
            ok = ok and margin >= -1e-9
        if not ok:
            violations += 1
    if accepted < samples:
        logger.info("majorization suite (%d, %d): %d of %d samples accepted",
                    m, n, accepted, samples)
    return SuiteReport("majorization", m, n, accepted, violations, worst)


def ppt_bridge_suite(m: int, n: int, samples: int, seed: int) -> SuiteReport:
    """
    (min eig of rho^T2 >= -tol) iff (trace norm of rho^T2 <= 1 + tol)

    worst_margin is the smallest |min eig| seen, i.e. the closest call. A
    non-finite statistic counts as a violation and makes worst_margin NaN.
    """
    base = _stream(seed, BRIDGE_STREAM, m, n)
    tol = config.TOL_CRIT
    violations = 0
    worst = float("inf")
    for i in range(samples):
        report = ppt_test(sample_density(m, n, candidate_rng(base, i)))
        if not (np.isfinite(report.statistic) and np.isfinite(report.pt_trace_norm)):
            violations += 1
            worst = float("nan")
            continue
        psd = report.statistic >= -tol
        small_norm = report.pt_trace_norm <= 1.0 + tol
        if not np.isnan(worst):
            worst = min(worst, abs(report.statistic))
        if psd != small_norm:
            violations += 1
    return SuiteReport("ppt_bridge", m, n, samples, violations, worst)


SUITES = {
    "top_singular": top_singular_suite,
    "majorization": majorization_suite,
    "ppt_bridge": ppt_bridge_suite,
}


def run_all(samples: int, seed: int,
            dims: Iterable[Tuple[int, int]] = DEFAULT_DIMS,
            suites: Iterable[str] = tuple(SUITES)) -> pd.DataFrame:
    """
    Run the selected suites on every pair of dimensions

    Returns:
        DataFrame with one row per (suite, dims)
    """
    reports: List[SuiteReport] = []
    for name in suites:
        suite = SUITES[name]
        for m, n in dims:
            if name == "majorization" and n > m ** 3:
                continue
            reports.append(suite(m, n, samples, seed))
            logger.debug("suite %s (%d, %d) done", name, m, n)
    return pd.DataFrame([r.as_dict() for r in reports])
