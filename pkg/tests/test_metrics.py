"""Tests for SNR/RSDR metrics and noise synthesis."""

import math

import numpy as np
import pytest

from spf_deconv.errors import ZeroSignalError
from spf_deconv.harness.metrics import RSDR_CAP_DB, make_noise, rsdr_db, snr_db
from spf_deconv.model.signals import SparseVec
from spf_deconv.solver.spf import RankOneEstimate
from tests.conftest import crandn


def test_rsdr_of_exact_estimate_is_capped(rng):
    """Test that X̂ = X gives the 300 dB cap."""
    u, v = crandn(rng, 8), crandn(rng, 8)
    assert rsdr_db((u, v), (u, v)) == RSDR_CAP_DB == 300.0


def test_rsdr_of_ten_percent_error(rng):
    """Test that a 10% relative error is 20 dB."""
    u, v = crandn(rng, 8), crandn(rng, 8)
    assert rsdr_db((u, 1.1 * v), (u, v)) == pytest.approx(20.0, abs=1e-9)
    assert rsdr_db((2.0 * u, 0.55 * v), (u, v)) == pytest.approx(20.0, abs=1e-9)


def test_rsdr_matches_dense_evaluation(rng):
    """Test the factored RSDR against dense matrices."""
    for _ in range(5):
        u, v, uh, vh = (crandn(rng, 12) for _ in range(4))
        X, Xh = np.outer(u, v), np.outer(uh, vh)
        expected = -20 * math.log10(np.linalg.norm(Xh - X) / np.linalg.norm(X))
        assert rsdr_db((uh, vh), (u, v)) == pytest.approx(expected, rel=1e-10)


def test_rsdr_accepts_estimates_and_sparse_factors(rng):
    """Test RankOneEstimate inputs and SparseVec truths."""
    u = SparseVec.from_dense(np.array([0.0, 1.0, 0.0, 0.0]))
    v = SparseVec.from_dense(np.array([2.0, 0.0, 0.0, 1.0]))
    estimate = RankOneEstimate(u=u, v=v.scaled(1.01))
    assert rsdr_db(estimate, (u, v)) == pytest.approx(40.0, abs=1e-9)


def test_rsdr_of_zero_truth():
    """Test that a zero ground truth is rejected."""
    with pytest.raises(ZeroSignalError):
        rsdr_db((np.ones(3), np.ones(3)), (np.zeros(3), np.ones(3)))


def test_snr_db(rng):
    """Test SNR values and edge cases."""
    clean = crandn(rng, 16)
    assert snr_db(clean, 0.1 * clean) == pytest.approx(20.0)
    assert snr_db(clean, np.zeros(16)) == math.inf
    with pytest.raises(ZeroSignalError):
        snr_db(np.zeros(16), clean)


@pytest.mark.parametrize("target", [40.0, 20.0, 0.0, -5.0])
def test_make_noise_hits_target_snr(rng, target):
    """Test that synthesized noise has exactly the requested SNR."""
    clean = crandn(rng, 64)
    noise = make_noise(clean, target, rng)
    assert snr_db(clean, noise) == pytest.approx(target, abs=1e-9)


def test_make_noise_fields_and_seeding(rng):
    """Test real noise, noiseless targets and reproducibility."""
    clean = crandn(rng, 32)
    assert np.all(make_noise(clean, math.inf) == 0)
    real = make_noise(clean, 30.0, seed=4, field="real")
    assert np.all(real.imag == 0)
    assert np.array_equal(make_noise(clean, 30.0, seed=9), make_noise(clean, 30.0, seed=9))
    with pytest.raises(ZeroSignalError):
        make_noise(np.zeros(4), 10.0, seed=0)
