"""Tests for the Jacobi spectral routines"""

import logging

import numpy as np
import pytest

from src.linalg.bipartite import DensityMatrix, partial_transpose, pure_state, realign
from src.linalg.matcore import (
    as_complex_matrix,
    frobenius_norm,
    hermitian_eigenvalues,
    is_hermitian,
    singular_values,
    trace_norm,
)
from src.utils.config import config
from src.utils.errors import MalformedMatrix, NotHermitian, NotSquare, SpectralFailure


def _random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


class TestHermitianEigenvalues:

    def test_identity(self):
        np.testing.assert_allclose(hermitian_eigenvalues(np.eye(2)), [1.0, 1.0], atol=1e-14)

    def test_pauli_x(self):
        np.testing.assert_allclose(hermitian_eigenvalues([[0, 1], [1, 0]]), [1.0, -1.0], atol=1e-14)

    def test_bell_partial_transpose(self, bell):
        values = hermitian_eigenvalues(partial_transpose(bell))
        np.testing.assert_allclose(values, [0.5, 0.5, 0.5, -0.5], atol=1e-12)

    def test_sorted_descending(self, rng):
        values = hermitian_eigenvalues(_random_hermitian(rng, 6))
        assert np.all(np.diff(values) <= 0)

    @pytest.mark.parametrize("d", [1, 2, 3, 5, 9, 16])
    def test_matches_lapack(self, rng, d):
        h = _random_hermitian(rng, d)
        expected = np.sort(np.linalg.eigvalsh(h))[::-1]
        np.testing.assert_allclose(hermitian_eigenvalues(h), expected, atol=1e-12)
        np.testing.assert_allclose(hermitian_eigenvalues(h, method="lapack"), expected, atol=1e-12)

    def test_diagonal_input_needs_no_rotation(self):
        values = hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0]))
        np.testing.assert_allclose(values, [3.0, 2.0, -1.0])

    def test_not_square(self):
        with pytest.raises(NotSquare):
            hermitian_eigenvalues(np.zeros((2, 3)))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigenvalues([[0, 1], [0, 0]])

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            hermitian_eigenvalues(np.eye(2), method="qr")


class TestSingularValues:

    def test_scaled_identity(self):
        np.testing.assert_allclose(singular_values(np.eye(4) / 2), [0.5] * 4, atol=1e-14)

    def test_jordan_block(self):
        np.testing.assert_allclose(singular_values([[0, 1], [0, 0]]), [1.0, 0.0], atol=1e-14)

    @pytest.mark.parametrize("shape", [(4, 9), (9, 4), (4, 16), (9, 9), (1, 5)])
    def test_matches_lapack(self, rng, shape):
        a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        expected = np.linalg.svd(a, compute_uv=False)
        np.testing.assert_allclose(singular_values(a), expected, atol=1e-12)

    def test_zero_singular_values_are_accurate(self):
        # rank one: the remaining values must be near zero, not near sqrt(eps)
        u = np.array([1.0, 2.0, -1.0, 0.5])
        v = np.array([0.3, 1.0j, 0.0, 2.0, -1.0])
        s = singular_values(np.outer(u, v))
        assert s[0] == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v), rel=1e-13)
        assert np.all(s[1:] < 1e-12)

    def test_nonnegative_and_descending(self, rng):
        s = singular_values(rng.standard_normal((5, 7)))
        assert np.all(s >= 0)
        assert np.all(np.diff(s) <= 0)

    def test_malformed(self):
        with pytest.raises(MalformedMatrix):
            singular_values([[1, 2], [3]])
        with pytest.raises(MalformedMatrix):
            singular_values([[np.nan, 0], [0, 1]])
        with pytest.raises(MalformedMatrix):
            singular_values(np.zeros((0, 0)))


class TestTraceNorm:

    def test_identity(self):
        assert trace_norm(np.eye(3)) == pytest.approx(3.0, abs=1e-14)

    def test_bell_realignment(self, bell):
        assert trace_norm(realign(bell)) == pytest.approx(2.0, abs=1e-12)

    def test_pure_product_state_realignment(self, rng):
        a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        rho = pure_state(np.kron(a, b), 2, 3)
        assert trace_norm(realign(rho)) == pytest.approx(1.0, abs=1e-12)

    def test_mixed_product_is_product_of_frobenius_norms(self):
        rho1 = np.diag([0.75, 0.25])
        rho2 = np.diag([0.5, 0.3, 0.2])
        rho = DensityMatrix.from_product(rho1, rho2)
        expected = np.linalg.norm(rho1) * np.linalg.norm(rho2)
        assert trace_norm(realign(rho)) == pytest.approx(expected, abs=1e-12)


def test_helpers():
    assert frobenius_norm(np.eye(4)) == pytest.approx(2.0)
    assert is_hermitian([[1, 1j], [-1j, 2]])
    assert not is_hermitian([[1, 1j], [1j, 2]])
    assert not is_hermitian(np.zeros((2, 3)))
    assert as_complex_matrix([[1, 2], [3, 4]]).dtype == complex


class TestNumericalEdges:

    SUBNORMAL = 9.59e-318 - 1.54e-317j

    def _with_subnormal(self):
        return np.array([[0.3, self.SUBNORMAL, 0.2],
                         [np.conj(self.SUBNORMAL), 0.1, 0.05j],
                         [0.2, -0.05j, 0.6]])

    def test_subnormal_offdiagonal_is_skipped(self):
        h = self._with_subnormal()
        values = hermitian_eigenvalues(h, method="jacobi")
        assert np.all(np.isfinite(values))
        np.testing.assert_allclose(values, np.sort(np.linalg.eigvalsh(h))[::-1], atol=1e-12)
        expected = np.sort(np.abs(values))[::-1]
        np.testing.assert_allclose(singular_values(h, method="jacobi"), expected, atol=1e-12)

    def test_hilbert_schmidt_samples_match_lapack(self, rng):
        for _ in range(2000):
            g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
            rho = g @ g.conj().T
            rho /= np.trace(rho).real
            values = hermitian_eigenvalues(rho, method="jacobi")
            assert np.all(np.isfinite(values))
            np.testing.assert_allclose(values, np.sort(np.linalg.eigvalsh(rho))[::-1], atol=1e-10)
            assert values.sum() == pytest.approx(1.0, abs=1e-10)

    def test_nonfinite_eigenvalues_raise(self, monkeypatch):
        monkeypatch.setattr("src.linalg.matcore._jacobi_eigenvalues",
                            lambda h: np.full(h.shape[0], np.nan))
        with pytest.raises(SpectralFailure):
            hermitian_eigenvalues(np.eye(3), method="jacobi")

    def test_nonfinite_singular_values_raise(self, monkeypatch):
        monkeypatch.setattr("src.linalg.matcore._jacobi_singular_values",
                            lambda a: np.array([1.0, np.inf]))
        with pytest.raises(SpectralFailure):
            singular_values(np.eye(2), method="jacobi")

    def test_no_warning_when_last_sweep_converges(self, monkeypatch, caplog):
        monkeypatch.setattr(config, "JACOBI_MAX_SWEEPS", 1)
        with caplog.at_level(logging.WARNING, logger="src.linalg.matcore"):
            hermitian_eigenvalues([[1.0, 0.5], [0.5, 2.0]], method="jacobi")
            singular_values([[1.0, 2.0, 0.0], [0.5, 1.0j, 3.0]], method="jacobi")
        assert "sweeps" not in caplog.text

    def test_warning_when_sweeps_run_out(self, monkeypatch, caplog, rng):
        monkeypatch.setattr(config, "JACOBI_MAX_SWEEPS", 1)
        with caplog.at_level(logging.WARNING, logger="src.linalg.matcore"):
            hermitian_eigenvalues(_random_hermitian(rng, 6), method="jacobi")
        assert "hit 1 sweeps" in caplog.text


class TestSpectralIdentities:

    def test_frobenius_consistency(self, rng):
        a = rng.standard_normal((4, 7)) + 1j * rng.standard_normal((4, 7))
        s = singular_values(a)
        assert np.sum(s ** 2) == pytest.approx(frobenius_norm(a) ** 2, rel=1e-12)

    def test_hermitian_singular_values_are_absolute_eigenvalues(self, rng):
        h = _random_hermitian(rng, 5)
        expected = np.sort(np.abs(hermitian_eigenvalues(h)))[::-1]
        np.testing.assert_allclose(singular_values(h), expected, atol=1e-12)

    def test_permutation_invariance(self, rng):
        a = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
        rows, cols = rng.permutation(4), rng.permutation(6)
        np.testing.assert_allclose(singular_values(a[rows][:, cols]), singular_values(a), atol=1e-12)

        h = _random_hermitian(rng, 5)
        p = rng.permutation(5)
        np.testing.assert_allclose(hermitian_eigenvalues(h[np.ix_(p, p)]),
                                   hermitian_eigenvalues(h), atol=1e-12)
