"""SNR and RSDR in decibels, and exact-SNR noise synthesis."""

from __future__ import annotations

import math
from typing import Tuple, Union

import numpy as np
import numpy.typing as npt

from spf_deconv.errors import ZeroSignalError
from spf_deconv.model.dictionary import Field
from spf_deconv.model.rng import SeedLike, make_rng
from spf_deconv.model.signals import ComplexVec, SparseVec, as_signal
from spf_deconv.solver.spf import RankOneEstimate
from spf_deconv.solver.theory import rank_one_distance, rank_one_norm

RSDR_CAP_DB = 300.0

FactorPair = Tuple[Union[SparseVec, npt.ArrayLike], Union[SparseVec, npt.ArrayLike]]


def snr_db(clean: npt.ArrayLike, noise: npt.ArrayLike) -> float:
    """−20 log₁₀(‖z‖₂ / ‖A(X)‖₂); +∞ for zero noise.

    Raises:
        ZeroSignalError: If ``clean`` is zero.
    """
    clean_norm = float(np.linalg.norm(as_signal(clean, name="clean")))
    noise_norm = float(np.linalg.norm(as_signal(noise, name="noise")))
    if clean_norm == 0.0:
        raise ZeroSignalError("SNR is undefined for a zero clean signal")
    if noise_norm == 0.0:
        return math.inf
    return -20.0 * math.log10(noise_norm / clean_norm)


def rsdr_db(estimate: Union[RankOneEstimate, FactorPair], truth: FactorPair) -> float:
    """−20 log₁₀(‖X̂ − X‖_F / ‖X‖_F), capped at 300 dB.

    Both matrices stay in factored form.

    Raises:
        ZeroSignalError: If the true X is zero.
    """
    u_hat, v_hat = (estimate.u, estimate.v) if isinstance(estimate, RankOneEstimate) else estimate
    u, v = truth
    reference = rank_one_norm(u, v)
    if reference == 0.0:
        raise ZeroSignalError("RSDR is undefined for a zero true signal")
    distance = rank_one_distance(u_hat, v_hat, u, v)
    if distance == 0.0:
        return RSDR_CAP_DB
    return min(RSDR_CAP_DB, -20.0 * math.log10(distance / reference))


def make_noise(
        clean: npt.ArrayLike,
        target_snr_db: float,
        seed: SeedLike = None,
        field: Field = "complex",
) -> ComplexVec:
    """Gaussian noise scaled so that ``snr_db(clean, z)`` equals the target.

    Args:
        clean: Noise-free measurements A(X).
        target_snr_db: Desired SNR; ``inf`` gives the zero vector.
        seed: Seed or Generator.
        field: ``"complex"`` draws circular complex noise, ``"real"`` real noise.
    """
    clean = as_signal(clean, name="clean")
    if math.isinf(target_snr_db) and target_snr_db > 0:
        return np.zeros(clean.size, dtype=np.complex128)
    clean_norm = float(np.linalg.norm(clean))
    if clean_norm == 0.0:
        raise ZeroSignalError("cannot scale noise against a zero clean signal")
    rng = make_rng(seed)
    if field == "real":
        direction = rng.standard_normal(clean.size) + 0j
    else:
        direction = rng.standard_normal(clean.size) + 1j * rng.standard_normal(clean.size)
    target_norm = clean_norm * 10.0 ** (-target_snr_db / 20.0)
    return direction * (target_norm / np.linalg.norm(direction))
