"""
Matrix file I/O
JSON files with keys "dims", "re" and "im" holding a bipartite density matrix
"""

import json
import logging
from pathlib import Path
from typing import List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError as PydanticValidationError, model_validator

from src.linalg.bipartite import BipartiteDims, DensityMatrix
from src.utils.errors import ParseError

logger = logging.getLogger(__name__)


class MatrixFile(BaseModel):
    """On-disk form of a density matrix: real and imaginary parts, row-major"""
    model_config = ConfigDict(extra="forbid")

    dims: List[int]
    re: List[List[float]]
    im: List[List[float]]

    @model_validator(mode="after")
    def _check_shapes(self):
        if len(self.dims) != 2 or min(self.dims) < 1:
            raise ValueError(f"dims must be two positive integers, got {self.dims}")
        size = self.dims[0] * self.dims[1]
        for name, rows in (("re", self.re), ("im", self.im)):
            if len(rows) != size or any(len(row) != size for row in rows):
                raise ValueError(f"'{name}' must be a {size} x {size} array")
        return self

    def to_matrix(self) -> np.ndarray:
        return np.array(self.re, dtype=float) + 1j * np.array(self.im, dtype=float)

    @classmethod
    def from_state(cls, rho: DensityMatrix) -> "MatrixFile":
        return cls(
            dims=[rho.dims.m, rho.dims.n],
            re=rho.mat.real.tolist(),
            im=rho.mat.imag.tolist(),
        )


def parse_matrix_file(path: Union[str, Path]) -> DensityMatrix:
    """
    Read and validate a matrix file

    States with m > n are swapped to m <= n (with a logged warning).

    Args:
        path: JSON file path

    Returns:
        Validated DensityMatrix

    Raises:
        ParseError: If the file is missing or malformed
        ValidationError: If the matrix is not a density matrix
    """
    path = Path(path)
    try:
        with open(path, "r") as f:
            raw = json.load(f)
    except FileNotFoundError:
        raise ParseError(f"Matrix file not found: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}")

    try:
        record = MatrixFile.model_validate(raw)
    except PydanticValidationError as e:
        raise ParseError(f"Malformed matrix file {path}: {e.errors()[0]['msg']}")

    mat = record.to_matrix()
    if not np.all(np.isfinite(mat)):
        raise ParseError(f"Matrix file {path} has non-finite entries")

    m, n = record.dims
    rho = DensityMatrix(mat, BipartiteDims(m, n))
    return rho.canonical()


def write_matrix_file(rho: DensityMatrix, path: Union[str, Path]) -> Path:
    """
    Write a state as a matrix file

    Floats are written with Python's shortest round-trip representation, so
    parse_matrix_file reproduces the entries exactly.
    """
    path = Path(path)
    record = MatrixFile.from_state(rho)
    with open(path, "w") as f:
        json.dump(record.model_dump(), f)
    logger.debug("wrote %s (dims %s)", path, record.dims)
    return path
