"""Empirical restricted isometry / angle / orthogonality probes.

Every probe draws a fresh operator from the factory and a pair of rank-one
matrices whose factors are sparse and (approximately) spectrally flat, then
records one distortion sample:

- ``rip_diff``: |‖A(X − X̂)‖² − ‖X − X̂‖_F²| / ‖X − X̂‖_F²
- ``rap``: |⟨A(W'), A(W)⟩ − ⟨W', W⟩| / (‖W‖_F ‖W'‖_F)
- ``rop``: as ``rap`` for W = uvᵀ, W' = u v'ᵀ with v' ⊥ v on the support of v,
  so ⟨W', W⟩ = 0 by construction.

The maximum over samples is a lower bound on the restricted constant δ.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Literal, Tuple

import numpy as np
import numpy.typing as npt

from spf_deconv.errors import DimensionError
from spf_deconv.model.dictionary import Distribution, Field, gen_dictionary, gen_sparse_signal
from spf_deconv.model.rng import SeedLike, make_rng
from spf_deconv.model.signals import FlatnessLevel, ModelParams, SparseVec
from spf_deconv.operator.measurement import MeasOperator, SamplingPattern
from spf_deconv.projection.intersection import approx_project_intersection
from spf_deconv.solver.theory import rank_one_distance, rank_one_inner, rank_one_norm

logger = logging.getLogger(__name__)

Kind = Literal["rip_diff", "rap", "rop"]
OperatorFactory = Callable[[np.random.Generator], MeasOperator]


@dataclass(frozen=True, eq=False)
class RipEstimate:
    """Distortion samples of one probe run.

    Attributes:
        kind: Probe kind.
        samples: One distortion per trial.
        histogram: ``(counts, bin_edges)`` of the samples.
        max_construction_inner: Largest |⟨W', W⟩|/(‖W‖‖W'‖) of the ``rop``
            pairs before measuring (0 for other kinds).
    """
    kind: Kind
    samples: npt.NDArray[np.float64] = field(repr=False)
    histogram: Tuple[npt.NDArray[np.int64], npt.NDArray[np.float64]] = field(repr=False)
    max_construction_inner: float = 0.0

    @property
    def max_distortion(self) -> float:
        return float(self.samples.max())

    def to_dict(self) -> Dict[str, object]:
        counts, edges = self.histogram
        return {
            "kind": self.kind,
            "trials": int(self.samples.size),
            "max_distortion": self.max_distortion,
            "mean_distortion": float(self.samples.mean()),
            "histogram": {"counts": counts.tolist(), "edges": edges.tolist()},
        }


def gaussian_operator_factory(
        n: int,
        m: int,
        field: Field = "complex",
        subsample: Literal["random", "uniform", "full"] = "random",
) -> OperatorFactory:
    """Factory drawing Gaussian Φ, Ψ and a sampling set of size m."""
    if subsample == "full" and m != n:
        raise DimensionError(f"full sampling needs m == n, got m={m}, n={n}")
    if subsample == "uniform" and n % m:
        raise DimensionError(f"uniform sampling needs m to divide n, got m={m}, n={n}")

    def factory(rng: np.random.Generator) -> MeasOperator:
        phi = gen_dictionary(n, field, rng)
        psi = gen_dictionary(n, field, rng)
        if subsample == "full":
            pattern = SamplingPattern.full(n)
        elif subsample == "uniform":
            pattern = SamplingPattern.uniform(n, n // m)
        else:
            pattern = SamplingPattern.random(n, m, rng)
        return MeasOperator(phi, psi, pattern)

    return factory


def estimate_rip_distortion(
        op_factory: OperatorFactory,
        params: ModelParams,
        kind: Kind = "rip_diff",
        trials: int = 100,
        seed: SeedLike = None,
        dist: Distribution = "gauss",
) -> RipEstimate:
    """Sample ``trials`` distortions of operators drawn from ``op_factory``.

    Args:
        op_factory: Callable taking a Generator and returning a MeasOperator.
        params: Sparsity and flatness levels of the sampled factors.
        kind: ``"rip_diff"``, ``"rap"`` or ``"rop"``.
        trials: Number of samples (>= 1).
        seed: Seed or Generator.
        dist: Distribution of the sparse factors.

    Returns:
        RipEstimate: Samples, histogram and the empirical max δ̂.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = make_rng(seed)
    samples = np.empty(trials)
    worst_inner = 0.0
    for t in range(trials):
        op = op_factory(rng)
        if op.n != params.n or op.m != params.m:
            raise DimensionError(f"factory built ({op.n}, {op.m}), params say ({params.n}, {params.m})")
        u = _flat_factor(op, params.s1, params.level1, "phi", rng, dist)
        v = _flat_factor(op, params.s2, params.level2, "psi", rng, dist)

        if kind == "rip_diff":
            u2 = _flat_factor(op, params.s1, params.level1, "phi", rng, dist)
            v2 = _flat_factor(op, params.s2, params.level2, "psi", rng, dist)
            diff = rank_one_distance(u, v, u2, v2) ** 2
            image = op.forward(u, v) - op.forward(u2, v2)
            samples[t] = abs(float(np.vdot(image, image).real) - diff) / diff
        elif kind == "rap":
            u2 = _flat_factor(op, params.s1, params.level1, "phi", rng, dist)
            v2 = _flat_factor(op, params.s2, params.level2, "psi", rng, dist)
            samples[t] = _angle_distortion(op, u, v, u2, v2)
        elif kind == "rop":
            v2 = _orthogonal_on_support(v, rng)
            inner = abs(rank_one_inner(u, v2, u, v)) / (rank_one_norm(u, v) * rank_one_norm(u, v2))
            worst_inner = max(worst_inner, inner)
            samples[t] = _angle_distortion(op, u, v, u, v2)
        else:
            raise ValueError(f"unknown probe kind {kind!r}")

    histogram = np.histogram(samples, bins=min(20, trials))
    logger.debug("%s probe: max distortion %.4f over %d trials", kind, samples.max(), trials)
    return RipEstimate(kind=kind, samples=samples, histogram=histogram,
                       max_construction_inner=worst_inner)


def _angle_distortion(op: MeasOperator, u: SparseVec, v: SparseVec,
                      u2: SparseVec, v2: SparseVec) -> float:
    measured = complex(np.vdot(op.forward(u2, v2), op.forward(u, v)))
    exact = rank_one_inner(u2, v2, u, v)
    return abs(measured - exact) / (rank_one_norm(u, v) * rank_one_norm(u2, v2))


def _flat_factor(op: MeasOperator, s: int, level: FlatnessLevel, side: str,
                 rng: np.random.Generator, dist: Distribution) -> SparseVec:
    dictionary = op.phi if side == "phi" else op.psi
    raw = gen_sparse_signal(op.n, s, dist, rng, field="complex")
    if level.binds(op.n):
        raw = approx_project_intersection(raw, dictionary, s, level).coefficients
    return raw.normalized()


def _orthogonal_on_support(v: SparseVec, rng: np.random.Generator) -> SparseVec:
    """Unit vector on supp(v) orthogonal to v (a random draw when |supp v| > 1)."""
    values = v.values
    if values.size == 1:
        raise DimensionError("an orthogonal partner on the same support needs s2 >= 2")
    draw = rng.standard_normal(values.size) + 1j * rng.standard_normal(values.size)
    draw -= (np.vdot(values, draw) / np.vdot(values, values)) * values
    draw /= np.linalg.norm(draw)
    return SparseVec(n=v.n, support=v.support, values=draw, s=v.s)
