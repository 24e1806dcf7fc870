"""Tests for the empirical RIP/RAP/ROP distortion probes."""

import numpy as np
import pytest

from spf_deconv.errors import DimensionError
from spf_deconv.harness.rip import estimate_rip_distortion, gaussian_operator_factory
from spf_deconv.model.dictionary import Dictionary
from spf_deconv.model.signals import ModelParams
from spf_deconv.operator.measurement import MeasOperator, SamplingPattern


def identity_factory(n):
    op = MeasOperator(Dictionary.identity(n), Dictionary.identity(n), SamplingPattern.full(n))
    return lambda rng: op


@pytest.mark.parametrize("kind", ["rip_diff", "rap", "rop"])
def test_probe_summary(kind):
    """Test sample counts, histogram and the summary dictionary."""
    params = ModelParams(n=32, m=16, s1=2, s2=2, mu1=18, mu2=18)
    estimate = estimate_rip_distortion(gaussian_operator_factory(32, 16), params, kind, trials=10, seed=1)
    assert estimate.samples.shape == (10,)
    assert np.all(np.isfinite(estimate.samples))
    assert np.all(estimate.samples >= 0)
    counts, edges = estimate.histogram
    assert counts.sum() == 10
    assert len(edges) == 11
    data = estimate.to_dict()
    assert data["kind"] == kind
    assert data["trials"] == 10
    assert data["max_distortion"] == pytest.approx(estimate.max_distortion)


def test_orthogonal_pairs_are_orthogonal_before_measuring():
    """Test |⟨W', W⟩| <= 1e-10 ‖W‖‖W'‖ on the constructed rop pairs."""
    params = ModelParams(n=64, m=32, s1=3, s2=3)
    estimate = estimate_rip_distortion(gaussian_operator_factory(64, 32), params, "rop", trials=25, seed=2)
    assert estimate.max_construction_inner <= 1e-10


def test_spike_pairs_are_measured_isometrically():
    """Test machine-precision distortion for spikes under identity dictionaries.

    Two spike pairs collide only when i + j = k + l (mod n), which happens
    with probability 1/n per sample.
    """
    params = ModelParams(n=64, m=64, s1=1, s2=1)
    estimate = estimate_rip_distortion(identity_factory(64), params, "rip_diff", trials=50, seed=3)
    assert np.mean(estimate.samples <= 1e-12) >= 0.8
    assert estimate.max_distortion <= 1.0 + 1e-12


def test_probe_is_reproducible():
    """Test that a seed fixes the samples."""
    params = ModelParams(n=16, m=16, s1=2, s2=2)
    factory = gaussian_operator_factory(16, 16, subsample="full")
    a = estimate_rip_distortion(factory, params, "rap", trials=5, seed=4)
    b = estimate_rip_distortion(factory, params, "rap", trials=5, seed=4)
    assert np.array_equal(a.samples, b.samples)


def test_probe_validation():
    """Test argument checks of the probe and the factory."""
    params = ModelParams(n=16, m=8, s1=1, s2=1)
    with pytest.raises(ValueError):
        estimate_rip_distortion(gaussian_operator_factory(16, 8), params, trials=0)
    with pytest.raises(DimensionError):
        estimate_rip_distortion(gaussian_operator_factory(16, 4), params, trials=1)
    with pytest.raises(DimensionError):
        estimate_rip_distortion(gaussian_operator_factory(16, 8), params, "rop", trials=1)
    with pytest.raises(ValueError):
        estimate_rip_distortion(gaussian_operator_factory(16, 8), params, "lip", trials=1)
    with pytest.raises(DimensionError):
        gaussian_operator_factory(16, 8, subsample="full")
    with pytest.raises(DimensionError):
        gaussian_operator_factory(16, 6, subsample="uniform")


@pytest.mark.slow
def test_distortion_is_below_one_and_shrinks_with_n():
    """Test δ̂ < 1 at n = m = 256 and a smaller mean distortion at larger n."""
    def probe(n, trials):
        params = ModelParams(n=n, m=n, s1=2, s2=2, mu1=None, mu2=None)
        factory = gaussian_operator_factory(n, n, subsample="full")
        return estimate_rip_distortion(factory, params, "rip_diff", trials=trials, seed=n)

    assert probe(256, 100).max_distortion < 1.0
    assert probe(512, 50).samples.mean() < probe(64, 50).samples.mean()


def distortion_at(m, trials, seed):
    params = ModelParams(n=256, m=m, s1=4, s2=4, mu1=None, mu2=None)
    factory = gaussian_operator_factory(256, m, subsample="full" if m == 256 else "random")
    return estimate_rip_distortion(factory, params, "rip_diff", trials=trials, seed=seed).max_distortion


@pytest.mark.slow
def test_full_sampling_distortion_is_below_one():
    """Test δ̂ < 1 over 500 pairs at n = m = 256, s = 4."""
    assert distortion_at(256, 500, seed=11) < 1.0


@pytest.mark.slow
def test_distortion_is_nonincreasing_in_m():
    """Test δ̂(64) >= δ̂(128) >= δ̂(256) at n = 256, s = 4 for most seeds."""
    monotone = 0
    for seed in range(5):
        curve = [distortion_at(m, 100, seed) for m in (64, 128, 256)]
        monotone += curve == sorted(curve, reverse=True)
    assert monotone >= 3
