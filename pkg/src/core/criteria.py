"""
Separability tests: CCNR (realignment) and PPT (partial transpose)

Passing either test is only a necessary condition for separability, so the
verdicts never say "separable".
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

from src.linalg.bipartite import DensityMatrix, partial_transpose, realign
from src.linalg.matcore import hermitian_eigenvalues, trace_norm
from src.utils.config import config
from src.utils.errors import SpectralFailure


class Criterion(Enum):
    """Available separability criteria"""
    CCNR = "CCNR"
    PPT = "PPT"


class Verdict(Enum):
    """Outcome of a necessary-condition test"""
    PASSES = "PassesNecessaryCondition"
    ENTANGLED = "CertifiedEntangled"


@dataclass
class CriterionReport:
    """Result of a single criterion on a state"""
    criterion: Criterion
    statistic: float
    verdict: Verdict
    m: int
    n: int
    ppt_is_sufficient: bool
    swapped: bool = False
    pt_trace_norm: Optional[float] = None

    @property
    def entangled(self) -> bool:
        return self.verdict == Verdict.ENTANGLED

    def as_dict(self) -> Dict:
        data = {
            "criterion": self.criterion.value,
            "statistic": self.statistic,
            "verdict": self.verdict.value,
            "dims": [self.m, self.n],
            "ppt_is_sufficient": self.ppt_is_sufficient,
            "swapped": self.swapped,
        }
        if self.pt_trace_norm is not None:
            data["pt_trace_norm"] = self.pt_trace_norm
        return data


def _finite(statistic: float, criterion: Criterion) -> float:
    if not math.isfinite(statistic):
        raise SpectralFailure(f"{criterion.value} statistic is not finite")
    return statistic


def _ppt_is_sufficient(rho: DensityMatrix) -> bool:
    # PPT is necessary and sufficient when m + n <= 5
    return rho.dims.m + rho.dims.n <= 5


def ccnr_test(rho: DensityMatrix) -> CriterionReport:
    """
    Realignment criterion: separable states have trace_norm(rho^R) <= 1

    Returns:
        CriterionReport with statistic = trace_norm(realign(rho))
    """
    statistic = _finite(trace_norm(realign(rho)), Criterion.CCNR)
    verdict = Verdict.ENTANGLED if statistic > 1.0 + config.TOL_CRIT else Verdict.PASSES
    return CriterionReport(
        criterion=Criterion.CCNR, statistic=statistic, verdict=verdict,
        m=rho.dims.m, n=rho.dims.n, ppt_is_sufficient=_ppt_is_sufficient(rho),
        swapped=rho.swapped,
    )


def ppt_test(rho: DensityMatrix) -> CriterionReport:
    """
    PPT criterion: separable states have a positive semidefinite rho^T2

    Returns:
        CriterionReport with statistic = min eigenvalue of rho^T2, and the
        trace norm of rho^T2 (at most 1 exactly when rho^T2 is PSD)
    """
    pt = partial_transpose(rho)
    eigenvalues = hermitian_eigenvalues(pt)
    statistic = _finite(float(eigenvalues[-1]), Criterion.PPT)
    verdict = Verdict.ENTANGLED if statistic < -config.TOL_CRIT else Verdict.PASSES
    return CriterionReport(
        criterion=Criterion.PPT, statistic=statistic, verdict=verdict,
        m=rho.dims.m, n=rho.dims.n, ppt_is_sufficient=_ppt_is_sufficient(rho),
        swapped=rho.swapped, pt_trace_norm=trace_norm(pt),
    )


CRITERIA = {
    "ccnr": [ccnr_test],
    "ppt": [ppt_test],
    "both": [ccnr_test, ppt_test],
}


def run_criteria(rho: DensityMatrix, which: str = "both") -> List[CriterionReport]:
    """
    Run one or both criteria

    Args:
        rho: State to test
        which: "ccnr", "ppt" or "both"
    """
    try:
        tests = CRITERIA[which.lower()]
    except KeyError:
        raise ValueError(f"Unknown criterion {which!r}; choose from {sorted(CRITERIA)}")
    return [test(rho) for test in tests]


def is_certified_entangled(reports: List[CriterionReport]) -> bool:
    """True if any report certifies entanglement"""
    return any(report.entangled for report in reports)
