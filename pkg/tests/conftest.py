"""Shared fixtures for the spf-deconv test suite."""

import numpy as np
import pytest

from spf_deconv.model.dictionary import gen_dictionary, gen_sparse_signal
from spf_deconv.operator.measurement import MeasOperator, SamplingPattern


def crandn(rng, *shape):
    """Circular complex Gaussian samples of unit variance."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def dft_by_definition(x):
    """Unitary DFT by direct O(n²) summation."""
    n = len(x)
    k = np.arange(n)
    kernel = np.exp(-2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)
    return kernel @ np.asarray(x, dtype=complex)


@pytest.fixture
def rng():
    """Create a seeded generator."""
    return np.random.default_rng(20240611)


@pytest.fixture
def small_op(rng):
    """Create a random n=16, m=8 operator with complex dictionaries."""
    n = 16
    return MeasOperator(
        gen_dictionary(n, "complex", rng),
        gen_dictionary(n, "complex", rng),
        SamplingPattern.random(n, 8, rng),
    )


@pytest.fixture
def sparse_pair(rng):
    """Create a pair of 3-sparse complex vectors of length 16."""
    return (
        gen_sparse_signal(16, 3, "gauss", rng, field="complex"),
        gen_sparse_signal(16, 3, "gauss", rng, field="complex"),
    )
