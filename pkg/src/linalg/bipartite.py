"""
Bipartite structure maps
vec, realignment, partial transpose, tensor product and subsystem swap.

Index convention: the composite row index (r, i) has r in 0..m-1 as the
coarse (first subsystem) index and i in 0..n-1 as the fine index, so
rho[(r, i), (s, j)] is rho[r * n + i, s * n + j] and rho = [X_rs] in blocks.
`_as_blocks` is the only place that converts between the two views.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.linalg.matcore import (
    ComplexMatrix,
    as_complex_matrix,
    hermitian_eigenvalues,
    is_hermitian,
)
from src.utils.config import config
from src.utils.errors import BadDims, DimsMismatch, NotSquare, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BipartiteDims:
    """Dimensions (m, n) of the two subsystems"""
    m: int
    n: int

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n or self.m < 1 or self.n < 1:
            raise BadDims(f"Subsystem dimensions must be positive integers, got ({self.m}, {self.n})")

    @property
    def total(self) -> int:
        return self.m * self.n

    @property
    def is_canonical(self) -> bool:
        """True when m <= n"""
        return self.m <= self.n

    def swapped(self) -> "BipartiteDims":
        return BipartiteDims(self.n, self.m)


def _as_blocks(mat: np.ndarray, dims: BipartiteDims) -> np.ndarray:
    """View an mn x mn matrix as a 4-index array [r, i, s, j]"""
    if mat.shape != (dims.total, dims.total):
        raise DimsMismatch(
            f"Matrix shape {mat.shape} does not match dims ({dims.m}, {dims.n})"
        )
    return mat.reshape(dims.m, dims.n, dims.m, dims.n)


class DensityMatrix:
    """
    A bipartite density matrix: Hermitian, trace one, positive semidefinite.

    Validation happens once, here; every other operation assumes a valid state.
    """

    def __init__(self, mat, dims: BipartiteDims, swapped: bool = False,
                 validate: bool = True):
        """
        Args:
            mat: mn x mn complex matrix
            dims: Bipartite dimensions
            swapped: True if this state was produced by normalising an m > n input
            validate: Skip validation only for states known valid by construction

        Raises:
            DimsMismatch: If the matrix size is not mn x mn
            ValidationError: If the matrix is not a density matrix within tolerance
        """
        self.mat = as_complex_matrix(mat)
        self.dims = dims
        self.swapped = swapped
        _as_blocks(self.mat, dims)
        if validate:
            self._validate()

    def _validate(self):
        if not is_hermitian(self.mat):
            raise ValidationError("Matrix is not Hermitian")

        trace = float(np.trace(self.mat).real)
        eigenvalues = hermitian_eigenvalues(self.mat)
        min_eig = float(eigenvalues[-1])

        if not np.isfinite(min_eig):
            raise ValidationError(
                f"Not a density matrix: non-finite min eigenvalue (trace {trace:.12g})",
                trace=trace, min_eigenvalue=min_eig,
            )

        if abs(trace - 1.0) > config.TOL_TRACE:
            raise ValidationError(
                f"Not a density matrix: trace {trace:.12g} (min eigenvalue {min_eig:.6g})",
                trace=trace, min_eigenvalue=min_eig,
            )
        if min_eig < -config.TOL_PSD:
            raise ValidationError(
                f"Not a density matrix: min eigenvalue {min_eig:.6g} (trace {trace:.12g})",
                trace=trace, min_eigenvalue=min_eig,
            )

    @classmethod
    def create(cls, mat, m: int, n: int) -> "DensityMatrix":
        """
        Validate a state and normalise it to the m <= n orientation

        Inputs with m > n are swapped; the returned state has swapped=True.
        """
        rho = cls(mat, BipartiteDims(m, n))
        return rho.canonical()

    def canonical(self) -> "DensityMatrix":
        """Return this state in m <= n orientation, swapping if needed"""
        if self.dims.is_canonical:
            return self
        logger.warning("Input dims (%d, %d) have m > n; swapping subsystems",
                       self.dims.m, self.dims.n)
        result = swap_subsystems(self)
        result.swapped = True
        return result

    @classmethod
    def from_product(cls, rho1, rho2) -> "DensityMatrix":
        """Product state rho1 (x) rho2 of two single-system density matrices"""
        rho1 = as_complex_matrix(rho1)
        rho2 = as_complex_matrix(rho2)
        return cls(tensor(rho1, rho2), BipartiteDims(rho1.shape[0], rho2.shape[0]))

    @property
    def trace(self) -> float:
        return float(np.trace(self.mat).real)

    def min_eigenvalue(self) -> float:
        return float(hermitian_eigenvalues(self.mat)[-1])

    def __repr__(self) -> str:
        return f"DensityMatrix(dims=({self.dims.m}, {self.dims.n}), swapped={self.swapped})"


def vec_row(x) -> np.ndarray:
    """
    Row-major flattening (x11, x12, ..., x1n, x21, ..., xnn)

    Raises:
        NotSquare: If x is not square
    """
    x = as_complex_matrix(x)
    if x.shape[0] != x.shape[1]:
        raise NotSquare(f"vec expects a square matrix, got shape {x.shape}")
    return x.reshape(-1).copy()


def realign(rho: DensityMatrix) -> ComplexMatrix:
    """
    Realignment rho^R: the m^2 x n^2 matrix whose row (r, s) is vec(X_rs)

    Entrywise rho^R[(r, s), (i, j)] = rho[(r, i), (s, j)].
    """
    dims = rho.dims
    blocks = _as_blocks(rho.mat, dims)
    return blocks.transpose(0, 2, 1, 3).reshape(dims.m ** 2, dims.n ** 2).copy()


def partial_transpose(rho: DensityMatrix) -> ComplexMatrix:
    """Transpose each n x n block X_rs (transpose on the second subsystem)"""
    dims = rho.dims
    blocks = _as_blocks(rho.mat, dims)
    return blocks.transpose(0, 3, 2, 1).reshape(dims.total, dims.total).copy()


def tensor(a, b) -> ComplexMatrix:
    """Kronecker product; the first factor indexes the coarse blocks"""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def swap_subsystems(rho: DensityMatrix) -> DensityMatrix:
    """
    Exchange the two subsystems: rho'[(i, r), (j, s)] = rho[(r, i), (s, j)]

    realign(rho') is the transpose of realign(rho).
    """
    dims = rho.dims
    blocks = _as_blocks(rho.mat, dims)
    swapped = blocks.transpose(1, 0, 3, 2).reshape(dims.total, dims.total).copy()
    return DensityMatrix(swapped, dims.swapped(), swapped=not rho.swapped, validate=False)


def pure_state(psi, m: int, n: int) -> DensityMatrix:
    """Density matrix |psi><psi| of a (normalised here) vector of length mn"""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != m * n:
        raise DimsMismatch(f"Vector length {psi.size} does not match dims ({m}, {n})")
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()), BipartiteDims(m, n))


def maximally_entangled(n: int) -> DensityMatrix:
    """(1/n) sum_kl |kk><ll|; the Bell state for n = 2"""
    psi = np.zeros(n * n, dtype=complex)
    psi[:: n + 1] = 1.0
    return pure_state(psi, n, n)


def maximally_mixed(m: int, n: int) -> DensityMatrix:
    """I_mn / mn"""
    return DensityMatrix(np.eye(m * n, dtype=complex) / (m * n), BipartiteDims(m, n))


def basis_matrix(k: int, l: int, size: int) -> np.ndarray:
    """Matrix unit E_kl (0-based) of the given size"""
    e = np.zeros((size, size), dtype=complex)
    e[k, l] = 1.0
    return e
