"""Tests for the exact flatness-cone projection and its KKT verifier."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spf_deconv.model.signals import FlatnessLevel, dft, idft, in_flatness_cone, spectral_flatness
from spf_deconv.projection.cone import (
    ConeProjResult,
    project_flatness_cone,
    verify_cone_projection_kkt,
)
from tests.conftest import crandn


def magnitude_grid(n, points):
    axis = np.linspace(0.0, 1.0, points)
    return np.array(list(itertools.product(axis, repeat=n)))


def brute_force_distance(zeta, mu, grid):
    """Smallest distance from ζ to the Fourier-domain cone over a magnitude grid.

    For a direction with magnitudes a (phases aligned with ζ) the best point
    on its ray is at distance² ‖ζ‖² − (Σ a_i|ζ_i|)²/‖a‖².
    """
    n = zeta.size
    power = np.sum(grid ** 2, axis=1)
    members = grid[(power > 0) & (n * np.max(grid ** 2, axis=1) <= mu * power)]
    scores = (members @ np.abs(zeta)) / np.sqrt(np.sum(members ** 2, axis=1))
    return float(np.sqrt(max(0.0, np.vdot(zeta, zeta).real - scores.max() ** 2)))


def spiky_signal(rng, n):
    zeta = crandn(rng, n)
    zeta[0] = 10 * np.abs(zeta).max()
    return idft(zeta)


def test_docstring_example():
    """Test the projection of idft([2, 1, 1, 1]) at mu=2."""
    x = idft(np.array([2.0, 1.0, 1.0, 1.0]))
    result = project_flatness_cone(x, 2.0)
    assert result.k_star == 2
    assert not result.was_member
    assert spectral_flatness(result.projected) == pytest.approx(2.0, rel=1e-12)
    spectrum = dft(result.projected)
    scale = (2 * np.sqrt(2) + 3 * np.sqrt(2 / 3)) / 4
    expected = scale * np.array([np.sqrt(2), np.sqrt(2 / 3), np.sqrt(2 / 3), np.sqrt(2 / 3)])
    assert np.allclose(spectrum, expected, atol=1e-12)
    assert verify_cone_projection_kkt(x, result, 2.0)


def test_members_are_returned_unchanged(rng):
    """Test that cone members are fixed points."""
    x = np.zeros(8, dtype=complex)
    x[3] = 2.0 - 1j
    result = project_flatness_cone(x, 1.0)
    assert result.was_member
    assert result.k_star == 1
    assert np.array_equal(result.projected, x)
    report = verify_cone_projection_kkt(x, result, 1.0)
    assert report
    assert report.lam == pytest.approx(np.linalg.norm(x) / (2 * np.sqrt(8)))


def test_zero_and_inactive_levels(rng):
    """Test the zero vector and non-binding levels."""
    zero = project_flatness_cone(np.zeros(6), 2.0)
    assert np.all(zero.projected == 0)
    assert verify_cone_projection_kkt(np.zeros(6), zero, 2.0)
    x = spiky_signal(rng, 6)
    assert np.array_equal(project_flatness_cone(x, FlatnessLevel.inactive()).projected, x)
    assert np.array_equal(project_flatness_cone(x, 6.0).projected, x)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 16, 64])
def test_projection_lands_in_cone_and_passes_kkt(n):
    """Test membership and the KKT conditions on random inputs."""
    rng = np.random.default_rng(n)
    for _ in range(30):
        x = crandn(rng, n)
        mu = rng.uniform(1.0, n)
        result = project_flatness_cone(x, mu)
        assert in_flatness_cone(result.projected, mu, rtol=1e-9)
        report = verify_cone_projection_kkt(x, result, mu)
        assert report, report.message


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=24), st.integers(min_value=0, max_value=2**32 - 1),
       st.floats(min_value=0.0, max_value=1.0))
def test_projection_is_idempotent(n, seed, frac):
    """Test P(P(x)) = P(x)."""
    rng = np.random.default_rng(seed)
    mu = 1.0 + (n - 1.0) * frac
    once = project_flatness_cone(crandn(rng, n), mu).projected
    twice = project_flatness_cone(once, mu)
    assert twice.was_member
    assert np.allclose(twice.projected, once, atol=1e-12)


def test_projection_is_scale_equivariant(rng):
    """Test P(cx) = cP(x) for a cone projection."""
    x = spiky_signal(rng, 12)
    p = project_flatness_cone(x, 3.0).projected
    assert np.allclose(project_flatness_cone(2.0 * x, 3.0).projected, 2.0 * p, atol=1e-12)


def test_projection_beats_brute_force_grid(rng):
    """Test optimality against a brute-force grid at n=4."""
    grid = magnitude_grid(4, 18)
    for _ in range(40):
        x = crandn(rng, 4)
        mu = rng.uniform(1.0, 4)
        result = project_flatness_cone(x, mu)
        ours = float(np.linalg.norm(x - result.projected))
        assert ours <= brute_force_distance(dft(x), mu, grid) + 1e-6


def test_vanishing_tail_keeps_kkt():
    """Test inputs whose spectrum has zeros below the capped entries."""
    n = 8
    zeta = np.zeros(n, dtype=complex)
    zeta[[1, 5]] = [3.0, 2.0j]
    x = idft(zeta)
    result = project_flatness_cone(x, 2.0)
    assert result.k_star == 3
    assert spectral_flatness(result.projected) == pytest.approx(2.0, rel=1e-10)
    report = verify_cone_projection_kkt(x, result, 2.0)
    assert report, report.message
    assert report.lam == 0.0


def test_kkt_rejects_perturbed_projection(rng):
    """Test that a perturbed projection fails the verifier."""
    n, mu = 8, 4.0
    x = spiky_signal(rng, n)
    result = project_flatness_cone(x, mu)
    assert not result.was_member
    spectrum = dft(result.projected)
    spectrum[int(np.argmax(np.abs(dft(x))))] *= 1.01
    tampered = ConeProjResult(idft(spectrum), result.k_star, False)
    report = verify_cone_projection_kkt(x, tampered, mu)
    assert not report
    assert report.message


def test_kkt_rejects_moved_member(rng):
    """Test that a member flagged as such must not move."""
    x = np.zeros(4, dtype=complex)
    x[0] = 1.0
    moved = ConeProjResult(x + 0.1, 1, True)
    assert not verify_cone_projection_kkt(x, moved, 1.0)


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cone_projection_exactness_acceptance(n):
    """Test 500 inputs per n: membership, KKT and a 1e5-point brute-force grid."""
    rng = np.random.default_rng(100 + n)
    grid = magnitude_grid(n, int(round(1e5 ** (1.0 / n))))
    for _ in range(500):
        x = crandn(rng, n)
        mu = rng.uniform(1.0, n)
        result = project_flatness_cone(x, mu)
        assert in_flatness_cone(result.projected, mu, rtol=1e-9)
        assert verify_cone_projection_kkt(x, result, mu)
        ours = float(np.linalg.norm(x - result.projected))
        assert ours <= brute_force_distance(dft(x), mu, grid) + 1e-6
