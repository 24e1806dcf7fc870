"""Monte-Carlo statistics of the spectral flatness of Φu.

Two regimes are covered:

- ``fixed_signal``: a fresh Gaussian Φ and a fresh s-sparse u per trial; the
  recorded sf(Φu) is the typical flatness of a sparse image, which stays
  O(log n).
- ``adversarial_search``: one Φ per trial and a search for the worst
  s-sparse u. Besides random probes, the search uses the single-row
  construction: pick a row i of √n·FΦ, keep its s largest entries as the
  support and align u with the conjugate of that row, which drives one
  Fourier coefficient of Φu up to a χ²_s-sized value. The recorded maximum is
  a lower bound on ``sup sf(Φu)`` over Γ_s.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt

from spf_deconv.model.dictionary import Field, gen_dictionary, gen_sparse_signal
from spf_deconv.model.rng import SeedLike, make_rng
from spf_deconv.model.signals import SparseVec, spectral_flatness

logger = logging.getLogger(__name__)

Mode = Literal["fixed_signal", "adversarial_search"]

QUANTILES = (0.5, 0.9, 0.99)


@dataclass(frozen=True, eq=False)
class FlatnessSummary:
    """Summary of recorded flatness values, one per trial."""
    mode: Mode
    n: int
    s: int
    samples: npt.NDArray[np.float64] = field(repr=False)

    @property
    def max_sf(self) -> float:
        return float(self.samples.max())

    @property
    def mean_sf(self) -> float:
        return float(self.samples.mean())

    @property
    def quantiles(self) -> dict[float, float]:
        return {q: float(np.quantile(self.samples, q)) for q in QUANTILES}

    def to_dict(self) -> dict[str, object]:
        return {
            "mode": self.mode,
            "n": self.n,
            "s": self.s,
            "trials": int(self.samples.size),
            "max_sf": self.max_sf,
            "mean_sf": self.mean_sf,
            "quantiles": {str(q): v for q, v in self.quantiles.items()},
        }


def flatness_stats(
        n: int,
        s: int,
        trials: int,
        mode: Mode = "fixed_signal",
        seed: SeedLike = None,
        field: Field = "complex",
        probes: int = 16,
) -> FlatnessSummary:
    """Record sf(Φu) over ``trials`` random draws.

    Args:
        n: Dimension.
        s: Sparsity of u.
        trials: Number of trials (>= 1).
        mode: ``"fixed_signal"`` or ``"adversarial_search"``.
        seed: Seed or Generator.
        field: Dictionary field; complex matches the CN(0, 1/n) analysis.
        probes: Random s-sparse probes per trial in adversarial mode.

    Returns:
        FlatnessSummary: Per-trial values and their summary statistics.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = make_rng(seed)
    samples = np.empty(trials)
    for t in range(trials):
        phi = gen_dictionary(n, field, rng)
        if mode == "fixed_signal":
            u = gen_sparse_signal(n, s, "gauss", rng, field=field)
            samples[t] = spectral_flatness(phi.apply(u))
        elif mode == "adversarial_search":
            samples[t] = _adversarial_max(phi.matrix, phi.fourier, s, rng, probes)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    logger.debug("flatness_stats %s n=%d s=%d: max %.3f", mode, n, s, samples.max())
    return FlatnessSummary(mode=mode, n=n, s=s, samples=samples)


def _adversarial_max(
        matrix: npt.NDArray[np.complex128],
        fourier: npt.NDArray[np.complex128],
        s: int,
        rng: np.random.Generator,
        probes: int,
) -> float:
    n = matrix.shape[0]
    best = 1.0
    for _ in range(probes):
        u = gen_sparse_signal(n, s, "gauss", rng, field="complex")
        best = max(best, spectral_flatness(matrix[:, u.support] @ u.values))

    # Single-row construction: the row of FΦ with the largest top-s energy.
    energy = np.abs(fourier) ** 2
    top = np.argpartition(energy, n - s, axis=1)[:, n - s:]
    row_energy = np.take_along_axis(energy, top, axis=1).sum(axis=1)
    i = int(np.argmax(row_energy))
    support = np.sort(top[i])
    u = SparseVec(n=n, support=support, values=np.conj(fourier[i, support]), s=s)
    best = max(best, spectral_flatness(matrix[:, u.support] @ u.values))
    return best
