"""
Random sampling and constrained search for large f_ell of realignment spectra

The search gives lower-bound evidence for B~_ell(m, n) (all states with
realignment trace norm <= 1) and B_ell(m, n) (separable states). Results
are reproducible for a given seed and independent of the worker count:
each candidate index draws from its own generator seeded by mix64(seed, index),
and candidates of a round only depend on the best state of earlier rounds.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.bounds import b_tilde, separable_envelope
from src.core.construct import separable_witness, state_for_regime
from src.core.symmetric import esf
from src.linalg.bipartite import BipartiteDims, DensityMatrix, realign
from src.linalg.matcore import singular_values
from src.utils.config import config

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(seed: int, index: int) -> int:
    """
    SplitMix64 finaliser applied to seed + (index + 1) * golden gamma (mod 2^64)

    Args:
        seed: Master seed, 0 <= seed < 2^64
        index: Candidate index, >= 0

    Returns:
        64-bit unsigned integer
    """
    z = (seed + (index + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def candidate_rng(seed: int, index: int) -> np.random.Generator:
    """Generator dedicated to one candidate index"""
    return np.random.default_rng(mix64(seed, index))


class SearchMode(str, Enum):
    """Which bound the search estimates"""
    ALL_STATES = "AllStatesConstrained"
    SEPARABLE = "SeparableStates"


class SearchConfig(BaseModel):
    """Parameters of one maximize_esf run"""
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    n: int = Field(ge=2)
    ell: int = Field(ge=1)
    budget: int = Field(ge=0)
    seed: int = Field(ge=0, le=MASK64)
    mode: SearchMode = SearchMode.ALL_STATES
    seed_with_constructions: bool = True

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.m > self.n:
            raise ValueError(f"search expects m <= n, got ({self.m}, {self.n})")
        if self.ell > self.m * self.m:
            raise ValueError(f"ell must be at most m^2 = {self.m * self.m}")
        return self


@dataclass
class SearchResult:
    """Best candidate found and the closed-form reference values"""
    cfg: SearchConfig
    best_value: Optional[float]
    best_state: Optional[DensityMatrix]
    best_index: Optional[int]
    evaluations: int
    rejected: int
    seeded: bool
    closed_form: Optional[float]
    envelope: Optional[float]
    gap: Optional[float]

    def as_dict(self) -> dict:
        return {
            "mode": self.cfg.mode.value,
            "m": self.cfg.m,
            "n": self.cfg.n,
            "ell": self.cfg.ell,
            "budget": self.cfg.budget,
            "seed": self.cfg.seed,
            "best_value": self.best_value,
            "best_index": self.best_index,
            "evaluations": self.evaluations,
            "rejected": self.rejected,
            "seeded": self.seeded,
            "closed_form": self.closed_form,
            "envelope": self.envelope,
            "gap": self.gap,
        }


# ===== SAMPLING =====

def _hilbert_schmidt_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    w = g @ g.conj().T
    w = (w + w.conj().T) / 2
    return w / np.trace(w).real


def sample_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector of length d (normalised complex Gaussian)"""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def _separable_matrix(m: int, n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    weights = rng.dirichlet(np.ones(k))
    mat = np.zeros((m * n, m * n), dtype=complex)
    for p in weights:
        psi = np.kron(sample_pure(m, rng), sample_pure(n, rng))
        mat += p * np.outer(psi, psi.conj())
    mat = (mat + mat.conj().T) / 2
    return mat / np.trace(mat).real


def sample_density(m: int, n: int, rng: np.random.Generator) -> DensityMatrix:
    """
    Random state from the Hilbert-Schmidt measure: G G^dagger / trace(G G^dagger)
    with G an mn x mn matrix of independent complex normal entries
    """
    return DensityMatrix(_hilbert_schmidt_matrix(m * n, rng), BipartiteDims(m, n))


def sample_separable(m: int, n: int, k: int, rng: np.random.Generator) -> DensityMatrix:
    """
    Convex combination of k Haar-random pure product states with weights
    drawn uniformly from the simplex
    """
    if k < 1:
        raise ValueError(f"Need at least one product term, got k={k}")
    return DensityMatrix(_separable_matrix(m, n, k, rng), BipartiteDims(m, n))


# ===== SEARCH =====

def _separable_terms(cfg: SearchConfig) -> int:
    return config.SEPARABLE_TERMS or cfg.m * cfg.n


def _draw(cfg: SearchConfig, index: int, rng: np.random.Generator) -> np.ndarray:
    if cfg.mode == SearchMode.SEPARABLE:
        return _separable_matrix(cfg.m, cfg.n, _separable_terms(cfg), rng)
    if index % 2 == 1:
        psi = sample_pure(cfg.m * cfg.n, rng)
        return np.outer(psi, psi.conj())
    return _hilbert_schmidt_matrix(cfg.m * cfg.n, rng)


def _candidate(cfg: SearchConfig, index: int, parent: Optional[np.ndarray]) -> np.ndarray:
    """Fresh sample, or (1 - eps) parent + eps sigma against the previous round's best"""
    rng = candidate_rng(cfg.seed, index)
    sigma = _draw(cfg, index, rng)
    if parent is None or index % 4 == 0:
        return sigma
    eps = config.REFINE_EPSILONS[index % len(config.REFINE_EPSILONS)]
    return (1.0 - eps) * parent + eps * sigma


def _evaluate(cfg: SearchConfig, mat: np.ndarray) -> Optional[float]:
    """f_ell of the realignment spectrum, or None if the constraint is violated"""
    rho = DensityMatrix(mat, BipartiteDims(cfg.m, cfg.n), validate=False)
    spectrum = singular_values(realign(rho))
    if cfg.mode == SearchMode.ALL_STATES and spectrum.sum() > 1.0 + config.TOL_CONSTRAINT:
        return None
    return esf(spectrum, cfg.ell)


Outcome = Tuple[Optional[float], Optional[int], Optional[np.ndarray], int]


def _better(value: float, index: int, best_value: Optional[float],
            best_index: Optional[int]) -> bool:
    if best_value is None:
        return True
    return value > best_value or (value == best_value and index < best_index)


def _evaluate_indices(cfg: SearchConfig, indices: List[int],
                      parent: Optional[np.ndarray]) -> Outcome:
    """Best (value, index, matrix) over the given indices plus a rejection count"""
    best_value, best_index, best_mat = None, None, None
    rejected = 0
    for index in indices:
        mat = _candidate(cfg, index, parent)
        value = _evaluate(cfg, mat)
        if value is None:
            rejected += 1
            continue
        if _better(value, index, best_value, best_index):
            best_value, best_index, best_mat = value, index, mat
    return best_value, best_index, best_mat, rejected


def _seed_state(cfg: SearchConfig) -> Optional[DensityMatrix]:
    if cfg.mode == SearchMode.SEPARABLE:
        return separable_witness(cfg.n) if cfg.m == cfg.n else None
    return state_for_regime(cfg.m, cfg.n)


def _reference_values(cfg: SearchConfig) -> Tuple[Optional[float], float]:
    """(closed form or None, certified envelope)"""
    if cfg.mode == SearchMode.SEPARABLE:
        cap, exact = separable_envelope(cfg.m, cfg.n, cfg.ell)
        return (cap if exact else None), cap
    bound = b_tilde(cfg.m, cfg.n, cfg.ell)
    return bound.value, bound.upper_bound


def maximize_esf(cfg: SearchConfig, workers: int = 1) -> SearchResult:
    """
    Maximise f_ell of the realignment spectrum by random search

    Index 0 is the attaining construction when seeding is enabled and one
    exists; the remaining indices run in rounds of config.SEARCH_ROUND_SIZE.
    Worker w evaluates the indices congruent to w mod workers; the round's
    winner is the largest value, lowest index on ties.

    Args:
        cfg: Search configuration
        workers: Number of worker processes (does not change the result)

    Returns:
        SearchResult
    """
    closed_form, envelope = _reference_values(cfg)
    best_value, best_index, best_mat = None, None, None
    evaluations = rejected = 0
    next_index = 0
    seeded = False

    if cfg.seed_with_constructions and cfg.budget > 0:
        state = _seed_state(cfg)
        if state is not None:
            seeded = True
            evaluations += 1
            next_index = 1
            value = _evaluate(cfg, state.mat)
            if value is None:
                rejected += 1
            else:
                best_value, best_index, best_mat = value, 0, state.mat

    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while next_index < cfg.budget:
            stop = min(next_index + config.SEARCH_ROUND_SIZE, cfg.budget)
            indices = list(range(next_index, stop))
            parent = best_mat

            if executor is None:
                outcomes = [_evaluate_indices(cfg, indices, parent)]
            else:
                slices = [indices[w::workers] for w in range(workers)]
                futures = [executor.submit(_evaluate_indices, cfg, part, parent)
                           for part in slices if part]
                outcomes = [future.result() for future in futures]

            for value, index, mat, round_rejected in outcomes:
                rejected += round_rejected
                if value is not None and _better(value, index, best_value, best_index):
                    best_value, best_index, best_mat = value, index, mat

            evaluations += len(indices)
            next_index = stop
            logger.debug("search round up to %d: best %.12g at %s", stop,
                         best_value if best_value is not None else float("nan"), best_index)
    finally:
        if executor is not None:
            executor.shutdown()

    if rejected:
        logger.info("%d of %d candidates violated the trace-norm constraint",
                    rejected, evaluations)

    best_state = None
    if best_mat is not None:
        best_state = DensityMatrix(best_mat, BipartiteDims(cfg.m, cfg.n))

    gap = None
    if closed_form is not None and best_value is not None:
        gap = closed_form - best_value

    return SearchResult(
        cfg=cfg, best_value=best_value, best_state=best_state,
        best_index=best_index, evaluations=evaluations, rejected=rejected,
        seeded=seeded, closed_form=closed_form, envelope=envelope, gap=gap,
    )
