"""
Error hierarchy for RealignBound
All errors are ValueErrors so callers can catch them broadly
"""

from typing import Any, Dict, Optional


class RealignBoundError(ValueError):
    """Base class for every error raised by the library"""


class ConfigError(RealignBoundError):
    """Invalid configuration value"""


class MalformedMatrix(RealignBoundError):
    """Input is not a finite, nonempty 2-D matrix"""


class NotSquare(RealignBoundError):
    """A square matrix was required"""


class NotHermitian(RealignBoundError):
    """Hermiticity check failed"""


class DimsMismatch(RealignBoundError):
    """Matrix size does not match the bipartite dimensions"""


class ValidationError(RealignBoundError):
    """Matrix is not a density matrix within tolerance"""

    def __init__(self, message: str, trace: Optional[float] = None,
                 min_eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.trace = trace
        self.min_eigenvalue = min_eigenvalue


class BadOrder(RealignBoundError):
    """Order of a symmetric function out of range"""


class NegativeEntry(RealignBoundError):
    """Negative entry where nonnegative reals were required"""


class LengthMismatch(RealignBoundError):
    """Vectors of different lengths"""


class BadDims(RealignBoundError):
    """Dimensions outside the supported range"""


class RegimeError(RealignBoundError):
    """Construction requested outside its regime"""


class InfeasibleConstruction(RealignBoundError):
    """Mixing weight s2 is negative, so the construction is not a state"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ParseError(RealignBoundError):
    """Malformed matrix file"""


class SpectralFailure(RealignBoundError):
    """A spectral routine produced non-finite values"""
