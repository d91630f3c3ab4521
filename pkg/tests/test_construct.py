"""Tests for the extremal constructions and the top-singular-value witness"""

from math import comb, sqrt

import numpy as np
import pytest

from src.core.bounds import b_tilde
from src.core.construct import (
    construction_params,
    extremal_flat,
    extremal_spike,
    diagonal_witness,
    separable_witness,
    state_for_regime,
    witness_lower_bound,
)
from src.core.criteria import Verdict, ppt_test
from src.core.symmetric import esf
from src.linalg.bipartite import maximally_mixed, realign
from src.linalg.matcore import hermitian_eigenvalues, singular_values, trace_norm
from src.utils.errors import InfeasibleConstruction, RegimeError


def _spectrum(rho):
    return singular_values(realign(rho))


class TestExtremalFlat:

    def test_two_by_eight(self):
        rho = extremal_flat(2, 8)
        np.testing.assert_allclose(_spectrum(rho), [0.25] * 4, atol=1e-10)
        assert trace_norm(realign(rho)) == pytest.approx(1.0, abs=1e-12)
        for ell in range(1, 5):
            assert esf(_spectrum(rho), ell) == pytest.approx(comb(4, ell) / 4 ** ell, abs=1e-10)

    def test_padded(self):
        rho = extremal_flat(2, 9)
        assert rho.mat.shape == (18, 18)
        np.testing.assert_allclose(_spectrum(rho), [0.25] * 4, atol=1e-10)

    def test_is_state(self):
        rho = extremal_flat(2, 8)
        assert rho.trace == pytest.approx(1.0, abs=1e-12)
        assert rho.min_eigenvalue() >= -1e-12

    def test_regime_error(self):
        with pytest.raises(RegimeError):
            extremal_flat(2, 7)


class TestExtremalSpike:

    def test_two_by_three_spectrum(self):
        rho, params = extremal_spike(2, 3)
        alpha = 1 / sqrt(6)
        beta = (1 - alpha) / 3
        np.testing.assert_allclose(_spectrum(rho), [alpha, beta, beta, beta], atol=1e-10)
        assert rho.trace == pytest.approx(1.0, abs=1e-12)
        assert rho.min_eigenvalue() >= -1e-12
        assert (params.q, params.r) == (1, 1)
        assert params.feasible

    @pytest.mark.parametrize("ell", [2, 3, 4])
    def test_attains_bound(self, ell):
        rho, _ = extremal_spike(2, 3)
        assert esf(_spectrum(rho), ell) == pytest.approx(b_tilde(2, 3, ell).value, abs=1e-9)

    def test_two_by_two_is_separable_witness(self):
        rho, _ = extremal_spike(2, 2)
        x = np.array([1, 0, 0, 1])
        np.testing.assert_allclose(rho.mat, (np.eye(4) + np.outer(x, x)) / 6, atol=1e-12)
        assert ppt_test(rho).verdict == Verdict.PASSES

    @pytest.mark.parametrize("m, n", [(2, 5), (2, 7), (3, 4), (3, 10)])
    def test_spectrum_is_spike_flat(self, m, n):
        rho, params = extremal_spike(m, n)
        s = _spectrum(rho)
        np.testing.assert_allclose(s[0], params.alpha, atol=1e-10)
        np.testing.assert_allclose(s[1:], params.beta, atol=1e-10)
        assert s.sum() == pytest.approx(1.0, abs=1e-10)

    def test_infeasible(self):
        with pytest.raises(InfeasibleConstruction) as excinfo:
            extremal_spike(3, 26)
        assert excinfo.value.diagnostics["s2"] < 0
        assert excinfo.value.diagnostics["q"] == 8

    def test_params(self):
        params = construction_params(2, 2)
        assert params.as_dict()["s1"] == pytest.approx(1 / 6)


class TestSeparableWitness:

    def test_qubits(self):
        rho = separable_witness(2)
        np.testing.assert_allclose(_spectrum(rho), [0.5, 1 / 6, 1 / 6, 1 / 6], atol=1e-12)
        report = ppt_test(rho)
        assert report.verdict == Verdict.PASSES
        assert report.ppt_is_sufficient

    def test_qutrits(self):
        rho = separable_witness(3)
        assert rho.trace == pytest.approx(1.0, abs=1e-12)
        eigenvalues = hermitian_eigenvalues(rho.mat)
        assert eigenvalues[-1] == pytest.approx(1 / 12, abs=1e-12)
        assert eigenvalues[0] == pytest.approx(4 / 12, abs=1e-12)


class TestWitness:

    def test_vectors(self):
        x, y = diagonal_witness(2, 2)
        np.testing.assert_array_equal(x, [1, 0, 0, 1])
        np.testing.assert_array_equal(y, [1, 0, 0, 1])
        x, y = diagonal_witness(2, 3)
        np.testing.assert_array_equal(x, [1, 0, 0, 1])
        np.testing.assert_array_equal(y, [1, 0, 0, 0, 1, 0, 0, 0, 1])

    def test_lower_bound_is_constant(self, bell):
        assert witness_lower_bound(bell) == pytest.approx(0.5, abs=1e-15)
        assert witness_lower_bound(maximally_mixed(2, 3)) == pytest.approx(1 / sqrt(6), abs=1e-15)

    def test_maximally_mixed_attains_equality(self):
        for m, n in [(2, 2), (2, 3), (3, 3), (2, 4)]:
            s1 = _spectrum(maximally_mixed(m, n))[0]
            assert s1 == pytest.approx(1 / sqrt(m * n), abs=1e-12)


class TestStateForRegime:

    def test_picks_construction(self):
        assert state_for_regime(2, 3).dims.n == 3
        np.testing.assert_allclose(_spectrum(state_for_regime(2, 8)), [0.25] * 4, atol=1e-10)

    def test_gap(self):
        assert state_for_regime(3, 26) is None


class TestAttainment:

    @pytest.mark.parametrize("n", [3, 4])
    def test_square_spike_is_separable_witness(self, n):
        rho, _ = extremal_spike(n, n)
        np.testing.assert_allclose(rho.mat, separable_witness(n).mat, atol=1e-12)

    @pytest.mark.parametrize("m, n", [(2, 2), (2, 5), (2, 7), (3, 3), (3, 10), (3, 25)])
    def test_spike_attains_every_order(self, m, n):
        rho, _ = extremal_spike(m, n)
        s = _spectrum(rho)
        for ell in range(1, m * m + 1):
            assert esf(s, ell) == pytest.approx(b_tilde(m, n, ell).value, abs=1e-9)

    @pytest.mark.parametrize("m, n", [(2, 8), (2, 11), (3, 27)])
    def test_flat_attains_every_order(self, m, n):
        s = _spectrum(extremal_flat(m, n))
        for ell in range(1, m * m + 1):
            assert esf(s, ell) == pytest.approx(b_tilde(m, n, ell).value, abs=1e-9)
