"""
Dense complex matrix routines
Hermitian eigenvalues, singular values and trace norm by cyclic Jacobi rotations
"""

import logging
from typing import Optional

import numpy as np

from src.utils.config import config
from src.utils.errors import MalformedMatrix, NotHermitian, NotSquare, SpectralFailure

logger = logging.getLogger(__name__)

# A ComplexMatrix is a 2-D complex128 array; a SingularSpectrum is a 1-D
# float64 array sorted descending with nonnegative entries.
ComplexMatrix = np.ndarray
SingularSpectrum = np.ndarray


def as_complex_matrix(a) -> ComplexMatrix:
    """
    Coerce input to a finite, nonempty 2-D complex matrix

    Args:
        a: Array-like input

    Returns:
        complex128 ndarray (a copy is only made when needed)

    Raises:
        MalformedMatrix: If the input is ragged, not 2-D, empty or non-finite
    """
    try:
        arr = np.asarray(a, dtype=complex)
    except (TypeError, ValueError) as e:
        raise MalformedMatrix(f"Cannot read matrix: {e}")

    if arr.ndim != 2 or arr.size == 0:
        raise MalformedMatrix(f"Expected a nonempty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MalformedMatrix("Matrix has NaN or infinite entries")
    return arr


def frobenius_norm(a: ComplexMatrix) -> float:
    """Frobenius norm ||A||_F"""
    return float(np.linalg.norm(as_complex_matrix(a)))


def is_hermitian(h: ComplexMatrix, rel_tol: Optional[float] = None) -> bool:
    """
    Check Hermiticity relative to the largest entry

    Args:
        h: Square matrix
        rel_tol: Relative tolerance (default config.TOL_HERM_REL)

    Returns:
        True if max|h - h^dagger| <= rel_tol * max|h|
    """
    h = as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        return False
    rel_tol = config.TOL_HERM_REL if rel_tol is None else rel_tol
    scale = float(np.max(np.abs(h)))
    return float(np.max(np.abs(h - h.conj().T))) <= rel_tol * scale


def _resolve_method(method: Optional[str]) -> str:
    method = (method or config.SPECTRAL_METHOD).lower()
    if method not in config.SPECTRAL_METHODS:
        raise ValueError(f"Unknown spectral method {method!r}")
    return method


def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """
    Unitary 2x2 rotation J with (J^dagger [[app, apq], [conj(apq), aqq]] J)
    diagonal. The phase of apq is absorbed first, then a real Jacobi
    rotation zeroes the off-diagonal entry.
    """
    mag = abs(apq)
    phase = np.exp(1j * np.angle(apq))
    theta = (aqq - app) / (2.0 * mag)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)


def _offdiag_norm(a: np.ndarray) -> float:
    return float(np.sqrt(max(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2), 0.0)))


def _negligible(apq: complex, app: float, aqq: float, floor: float) -> bool:
    # Entries below floor cannot hold the off-diagonal mass above the stopping threshold
    mag = abs(apq)
    return mag <= floor or mag < abs(app - aqq) * 1e-36


def _check_finite(values: np.ndarray, what: str):
    if not np.all(np.isfinite(values)):
        raise SpectralFailure(f"Spectral routine returned non-finite {what}")


def _jacobi_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Two-sided cyclic Jacobi on a Hermitian matrix; returns unsorted eigenvalues"""
    a = np.array(h, dtype=complex, copy=True)
    n = a.shape[0]
    threshold = config.JACOBI_TOL * float(np.linalg.norm(a))
    floor = threshold / n

    for _ in range(config.JACOBI_MAX_SWEEPS):
        if _offdiag_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if _negligible(a[p, q], a[p, p].real, a[q, q].real, floor):
                    continue
                j = _rotation(a[p, p].real, a[q, q].real, a[p, q])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = j.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        off = _offdiag_norm(a)
        if off > threshold:
            logger.warning("Jacobi eigenvalue iteration hit %d sweeps (off-diagonal %.3e)",
                           config.JACOBI_MAX_SWEEPS, off)

    return np.real(np.diag(a)).copy()


def _jacobi_singular_values(a: np.ndarray) -> np.ndarray:
    """
    One-sided cyclic Jacobi on the Gram matrix of the smaller side.

    Rotations are built from Gram entries and applied to the rows of the
    working matrix W, so W W^dagger is driven to diagonal form and the squared
    row norms are its eigenvalues.
    """
    w = a if a.shape[0] <= a.shape[1] else a.T
    w = np.array(w, dtype=complex, copy=True)
    k = w.shape[0]

    frob2 = float(np.sum(np.abs(w) ** 2))
    if frob2 == 0.0:
        return np.zeros(k)
    threshold = config.JACOBI_TOL * frob2
    floor = threshold / k

    for _ in range(config.JACOBI_MAX_SWEEPS):
        if _offdiag_norm(w @ w.conj().T) <= threshold:
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                gpq = np.vdot(w[q], w[p])
                gpp = float(np.vdot(w[p], w[p]).real)
                gqq = float(np.vdot(w[q], w[q]).real)
                if _negligible(gpq, gpp, gqq, floor):
                    continue
                j = _rotation(gpp, gqq, gpq)
                idx = [p, q]
                w[idx, :] = j.conj().T @ w[idx, :]
    else:
        off = _offdiag_norm(w @ w.conj().T)
        if off > threshold:
            logger.warning("Jacobi singular value iteration hit %d sweeps (off-diagonal %.3e)",
                           config.JACOBI_MAX_SWEEPS, off)

    gram_diag = np.sum(np.abs(w) ** 2, axis=1)
    return np.sqrt(np.clip(gram_diag, 0.0, None))


def hermitian_eigenvalues(h, method: Optional[str] = None) -> np.ndarray:
    """
    Eigenvalues of a Hermitian matrix

    Args:
        h: Square Hermitian matrix (within config.TOL_HERM_REL * max|entry|)
        method: "jacobi" or "lapack" (default config.SPECTRAL_METHOD)

    Returns:
        Real eigenvalues sorted descending

    Raises:
        NotSquare: If h is not square
        NotHermitian: If the symmetry check fails
        SpectralFailure: If the computed eigenvalues are not finite
    """
    h = as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotSquare(f"Expected a square matrix, got shape {h.shape}")
    if not is_hermitian(h):
        raise NotHermitian(
            f"Matrix deviates from Hermitian by {np.max(np.abs(h - h.conj().T)):.3e}"
        )

    if _resolve_method(method) == "lapack":
        values = np.linalg.eigvalsh(h)
    else:
        values = _jacobi_eigenvalues(h)
    _check_finite(values, "eigenvalues")
    return np.sort(values)[::-1]


def singular_values(a, method: Optional[str] = None) -> SingularSpectrum:
    """
    Singular values of a matrix

    Args:
        a: Nonempty matrix
        method: "jacobi" or "lapack" (default config.SPECTRAL_METHOD)

    Returns:
        min(rows, cols) nonnegative values sorted descending
    """
    a = as_complex_matrix(a)
    if _resolve_method(method) == "lapack":
        values = np.linalg.svd(a, compute_uv=False)
    else:
        values = _jacobi_singular_values(a)
    _check_finite(values, "singular values")
    return np.sort(values)[::-1]


def trace_norm(a, method: Optional[str] = None) -> float:
    """Trace (nuclear) norm: the sum of the singular values"""
    return float(np.sum(singular_values(a, method=method)))
