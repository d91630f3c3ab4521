"""Tests for matrix file parsing and writing"""

import json

import numpy as np
import pytest

from src.core.construct import extremal_spike
from src.core.criteria import ccnr_test
from src.data.matrix_file import MatrixFile, parse_matrix_file, write_matrix_file
from src.linalg.bipartite import BipartiteDims
from src.utils.errors import ParseError, ValidationError


def _dump(path, payload):
    path.write_text(json.dumps(payload))
    return path


def _payload(mat, dims):
    mat = np.asarray(mat, dtype=complex)
    return {"dims": list(dims), "re": mat.real.tolist(), "im": mat.imag.tolist()}


def test_maximally_mixed(tmp_path):
    rho = parse_matrix_file(_dump(tmp_path / "mixed.json", _payload(np.eye(4) / 4, (2, 2))))
    assert rho.dims == BipartiteDims(2, 2)
    assert not rho.swapped


def test_bell_has_ccnr_two(tmp_path, bell):
    path = write_matrix_file(bell, tmp_path / "bell.json")
    assert ccnr_test(parse_matrix_file(path)).statistic == pytest.approx(2.0, abs=1e-9)


def test_trace_reported(tmp_path):
    path = _dump(tmp_path / "short.json", _payload(np.eye(4) * 0.9 / 4, (2, 2)))
    with pytest.raises(ValidationError) as excinfo:
        parse_matrix_file(path)
    assert excinfo.value.trace == pytest.approx(0.9)
    assert "trace" in str(excinfo.value)


def test_swaps_wide_first_subsystem(tmp_path, rng):
    g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    w = g @ g.conj().T
    rho = parse_matrix_file(_dump(tmp_path / "wide.json", _payload(w / np.trace(w).real, (3, 2))))
    assert rho.dims == BipartiteDims(2, 3)
    assert rho.swapped


def test_write_then_parse_is_exact(tmp_path):
    rho, _ = extremal_spike(2, 3)
    parsed = parse_matrix_file(write_matrix_file(rho, tmp_path / "spike.json"))
    np.testing.assert_array_equal(parsed.mat, rho.mat)


@pytest.mark.parametrize("payload, fragment", [
    ({"dims": [2, 2], "re": [[1]]}, "Malformed"),
    ({"dims": [2], "re": [[1]], "im": [[0]]}, "Malformed"),
    ({"dims": [2, 2], "re": [[0.25] * 4] * 3, "im": [[0] * 4] * 3}, "Malformed"),
    ({"dims": [2, 2], "re": [[0.25] * 4] * 4, "im": [[0] * 4] * 4, "extra": 1}, "Malformed"),
])
def test_malformed(tmp_path, payload, fragment):
    with pytest.raises(ParseError) as excinfo:
        parse_matrix_file(_dump(tmp_path / "bad.json", payload))
    assert fragment in str(excinfo.value)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_matrix_file(tmp_path / "absent.json")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        parse_matrix_file(path)


def test_model_round_trip_fields(bell):
    record = MatrixFile.from_state(bell)
    assert record.dims == [2, 2]
    np.testing.assert_array_equal(record.to_matrix(), bell.mat)
