"""
Configuration management for RealignBound
Numerical tolerances are fixed; only diagnostics come from the environment
"""

import os
from pathlib import Path
from dotenv import load_dotenv

from src.utils.errors import ConfigError

# Load environment variables from .env file
env_path = Path(__file__).parent.parent.parent / ".env"
load_dotenv(dotenv_path=env_path)


class Config:
    """Application configuration"""

    # Diagnostics
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
    SPECTRAL_METHOD = os.getenv("SPECTRAL_METHOD", "jacobi").lower()

    # Density matrix validation
    TOL_HERM_REL = 1e-12     # relative to max |entry|
    TOL_TRACE = 1e-10
    TOL_PSD = 1e-9           # absolute, on the minimum eigenvalue

    # Criteria
    TOL_CRIT = 1e-9

    # Symmetric functions / bounds
    TOL_MAJORIZATION = 1e-12
    TOL_FEASIBLE = 1e-15

    # Spectral routines
    JACOBI_TOL = 1e-14
    JACOBI_MAX_SWEEPS = 60

    # Search
    TOL_CONSTRAINT = 1e-12
    REFINE_EPSILONS = (0.2, 0.05, 0.01)
    SEARCH_ROUND_SIZE = 64
    SEPARABLE_TERMS = None   # None -> m * n product terms per sample

    # Reports
    REPORT_SIGNIFICANT_DIGITS = 12

    SPECTRAL_METHODS = ("jacobi", "lapack")

    @classmethod
    def validate(cls):
        """Validate configuration values"""
        if cls.SPECTRAL_METHOD not in cls.SPECTRAL_METHODS:
            raise ConfigError(
                f"SPECTRAL_METHOD must be one of {cls.SPECTRAL_METHODS}, "
                f"got {cls.SPECTRAL_METHOD!r}"
            )
        if cls.SEARCH_ROUND_SIZE < 1:
            raise ConfigError("SEARCH_ROUND_SIZE must be positive")
        if not all(0.0 < eps < 1.0 for eps in cls.REFINE_EPSILONS):
            raise ConfigError("REFINE_EPSILONS must lie in (0, 1)")
        return True


# Singleton instance
config = Config()
