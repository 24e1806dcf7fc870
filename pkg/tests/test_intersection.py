"""Tests for dictionary-sparse projections and the alternating intersection projection."""

import numpy as np
import pytest

from spf_deconv.errors import SingularDictionaryError
from spf_deconv.model.dictionary import Dictionary, gen_dictionary, gen_sparse_signal
from spf_deconv.model.signals import FlatnessLevel, densify, idft, spectral_flatness
from spf_deconv.projection.intersection import (
    AltProjOptions,
    approx_project_intersection,
    project_dict_sparse,
    sparse_code,
)
from spf_deconv.recovery.htp import hard_threshold
from tests.conftest import crandn

MU_64 = 21.0  # ⌈5 ln 64⌉


def violating_input(rng, n=64, s=5):
    """Dense coefficients whose image is a flat s-sparse image plus a strong Fourier atom."""
    phi = gen_dictionary(n, "complex", rng)
    u0 = gen_sparse_signal(n, s, "gauss", rng, field="complex")
    clean = phi.apply(u0)
    spike = np.zeros(n, dtype=complex)
    spike[rng.integers(n)] = 1.0
    x = clean + 3.0 * np.linalg.norm(clean) * idft(spike)
    return phi, phi.solve(x)


def test_project_dict_sparse_with_identity_is_thresholding(rng):
    """Test that Φ = I reduces to hard thresholding."""
    x = crandn(rng, 20)
    out = project_dict_sparse(x, Dictionary.identity(20), 4)
    assert np.allclose(out, densify(hard_threshold(x, 4)), atol=1e-12)


def test_project_dict_sparse_full_sparsity_is_identity(rng):
    """Test that s = n returns x for an invertible dictionary."""
    phi = gen_dictionary(16, "complex", rng)
    x = crandn(rng, 16)
    assert np.allclose(project_dict_sparse(x, phi, 16), x, atol=1e-8)


def test_project_dict_sparse_recovers_sparse_images():
    """Test that x = Φu₀ with ‖u₀‖₀ <= s is returned unchanged."""
    hits = 0
    for seed in range(10):
        rng = np.random.default_rng(seed)
        phi = gen_dictionary(64, "complex", rng)
        x = phi.apply(gen_sparse_signal(64, 5, "gauss", rng, field="complex"))
        hits += np.linalg.norm(project_dict_sparse(x, phi, 5) - x) <= 1e-8 * np.linalg.norm(x)
    assert hits >= 9


def test_feasible_input_takes_fast_path(rng):
    """Test that feasible inputs come back unchanged after zero rounds."""
    phi = Dictionary.identity(16)
    u = np.zeros(16, dtype=complex)
    u[5] = 1.0 + 1j
    result = approx_project_intersection(u, phi, 2, 1.0)
    assert result.rounds == 0
    assert result.in_cone
    assert np.array_equal(result.coefficients.dense(), u)
    assert result.flatness == pytest.approx(1.0)


def test_inactive_level_is_one_sparse_step(rng):
    """Test that with μ = n a single sparse-image projection is applied."""
    phi = gen_dictionary(32, "complex", rng)
    u = crandn(rng, 32)
    result = approx_project_intersection(u, phi, 4, FlatnessLevel.inactive())
    assert result.rounds == 1
    expected = sparse_code(phi.apply(u), phi, 4)
    assert np.allclose(result.coefficients.dense(), expected.dense(), atol=1e-12)


def test_output_is_always_s_sparse(rng):
    """Test exact sparsity even when the round cap is hit."""
    phi, u = violating_input(rng)
    result = approx_project_intersection(u, phi, 5, 1.5, AltProjOptions(max_rounds=2))
    assert result.coefficients.nnz <= 5
    assert 1 <= result.rounds <= 2
    assert result.flatness == pytest.approx(spectral_flatness(phi.apply(result.coefficients)))


def test_alternating_projection_restores_flatness():
    """Test feasibility on a few spiked instances."""
    feasible = 0
    for seed in range(10):
        phi, u = violating_input(np.random.default_rng(seed))
        assert spectral_flatness(phi.apply(u)) > MU_64
        result = approx_project_intersection(u, phi, 5, MU_64)
        feasible += result.in_cone
        assert result.coefficients.nnz <= 5
    assert feasible >= 8


def test_singular_dictionary_is_rejected():
    """Test that a singular Φ raises."""
    singular = Dictionary(np.outer(np.ones(4), np.arange(1.0, 5.0)))
    with pytest.raises(SingularDictionaryError):
        approx_project_intersection(np.ones(4), singular, 2, 2.0)


@pytest.mark.slow
def test_project_dict_sparse_acceptance():
    """Test exact return of Φu₀ at n=256, s=5 in at least 95 of 100 trials."""
    hits = 0
    for seed in range(100):
        rng = np.random.default_rng(500 + seed)
        phi = gen_dictionary(256, "complex", rng)
        x = phi.apply(gen_sparse_signal(256, 5, "gauss", rng, field="complex"))
        hits += np.linalg.norm(project_dict_sparse(x, phi, 5) - x) <= 1e-8 * np.linalg.norm(x)
    assert hits >= 95


@pytest.mark.slow
def test_intersection_feasibility_acceptance():
    """Test sf(Φ·out) <= μ(1 + 1e-6) in at least 90 of 100 spiked trials within 50 rounds."""
    feasible = 0
    for seed in range(100):
        phi, u = violating_input(np.random.default_rng(900 + seed))
        result = approx_project_intersection(u, phi, 5, MU_64, AltProjOptions(max_rounds=50))
        feasible += spectral_flatness(phi.apply(result.coefficients)) <= MU_64 * (1 + 1e-6)
    assert feasible >= 90
