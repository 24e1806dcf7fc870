"""Sparse power factorization for subsampled blind deconvolution.

Alternating minimization over the two factors of X = uvᵀ:

1. v0 from :func:`thres_init` on A*(b).
2. With v normalized, u is re-estimated by HTP on the restricted map A_R(v)
   at sparsity s1, then pulled onto Γ_{s1} ∩ Φ⁻¹C_{μ1} and normalized.
3. With u fixed, v is re-estimated by HTP on A_L(u) at sparsity s2 and pulled
   onto Γ_{s2} ∩ Ψ⁻¹C_{μ2}; v carries the scale of X̂.
4. Stop once ‖u_t v_tᵀ − u_{t−1}v_{t−1}ᵀ‖_F falls below the tolerance
   relative to ‖u_t v_tᵀ‖_F, or after the iteration cap.

Example:
    ```python
    params = ModelParams(n=256, m=256, s1=2, s2=2, mu1=28, mu2=28)
    estimate, trace = spf_bd(op, b, params)
    estimate.u.norm          # 1.0
    trace.residuals[-1]      # ‖b − A(û v̂ᵀ)‖₂
    ```
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Tuple

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt

from spf_deconv.errors import DegenerateIterateError, DimensionError, UnavailableProjectionError
from spf_deconv.model.dictionary import Dictionary
from spf_deconv.model.signals import FlatnessLevel, ModelParams, SparseVec, as_signal, spectral_flatness
from spf_deconv.operator.measurement import MeasOperator
from spf_deconv.projection.intersection import AltProjOptions, approx_project_intersection
from spf_deconv.recovery.htp import HtpOptions, htp
from spf_deconv.solver.initialization import InitResult, thres_init
from spf_deconv.solver.theory import angle_metrics, rank_one_distance, rank_one_norm

logger = logging.getLogger(__name__)

ProjectionMode = Literal["approx", "none", "exact_unavailable"]


def default_flatness_level(n: int) -> float:
    """μ = ⌈5 ln n⌉, clipped to [1, n]."""
    return float(min(n, max(1, math.ceil(5.0 * math.log(n))))) if n > 1 else 1.0


class SolverOptions(BaseModel):
    """Options for :func:`spf_bd`.

    Attributes:
        max_outer_iters: Cap on alternating iterations.
        rel_change_tol: Relative change of u vᵀ that stops the loop.
        projection_mode: ``"approx"`` (alternating projections), ``"none"``
            (sparsity only) or ``"exact_unavailable"``, which is rejected.
        htp_opts: Options of the inner HTP solves.
        alt_proj_opts: Options of the approximate intersection projection.
        record_trace: Whether per-iteration diagnostics are collected.
    """
    model_config = ConfigDict(frozen=True)

    max_outer_iters: PositiveInt = 50
    rel_change_tol: PositiveFloat = 1e-6
    projection_mode: ProjectionMode = "approx"
    htp_opts: HtpOptions = HtpOptions()
    alt_proj_opts: AltProjOptions = AltProjOptions()
    record_trace: bool = True


@dataclass(frozen=True, eq=False)
class RankOneEstimate:
    """X̂ = u vᵀ in factored form; u has unit norm, v carries the scale."""
    u: SparseVec
    v: SparseVec

    def dense(self) -> npt.NDArray[np.complex128]:
        return np.outer(self.u.dense(), self.v.dense())

    @property
    def frobenius_norm(self) -> float:
        return rank_one_norm(self.u, self.v)


@dataclass
class SolveTrace:
    """Per-iteration diagnostics of one solve.

    ``sin_u``/``sin_v`` stay empty unless a reference pair was supplied, and so
    do ``proj_ratio_u``/``proj_ratio_v``: the sine of the angle to the true
    factor after the intersection projection divided by the sine before it
    (1.0 when the projection left the HTP output unchanged).
    """
    init: Optional[InitResult] = None
    residuals: List[float] = field(default_factory=list)
    flatness_u: List[float] = field(default_factory=list)
    flatness_v: List[float] = field(default_factory=list)
    htp_iters_u: List[int] = field(default_factory=list)
    htp_iters_v: List[int] = field(default_factory=list)
    in_cone_u: List[bool] = field(default_factory=list)
    in_cone_v: List[bool] = field(default_factory=list)
    sin_u: List[float] = field(default_factory=list)
    sin_v: List[float] = field(default_factory=list)
    proj_ratio_u: List[float] = field(default_factory=list)
    proj_ratio_v: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False

    def __len__(self) -> int:
        return len(self.residuals)


def spf_bd(
        op: MeasOperator,
        b: npt.ArrayLike,
        params: ModelParams,
        opts: Optional[SolverOptions] = None,
        reference: Optional[Tuple[SparseVec, SparseVec]] = None,
        warm_start: Optional[SparseVec] = None,
) -> Tuple[RankOneEstimate, SolveTrace]:
    """Estimate X = uvᵀ from b = A(X) + z.

    Args:
        op: Measurement operator.
        b: Measurements of length ``op.m``.
        params: Sparsity and flatness levels.
        opts: Solver options.
        reference: True (u, v), used only to record angles in the trace.
        warm_start: Replaces the thresholded v0 when given.

    Returns:
        Tuple[RankOneEstimate, SolveTrace]: The estimate and its diagnostics.

    Raises:
        DegenerateIterateError: When a factor to be normalized is zero.
        UnavailableProjectionError: For ``projection_mode="exact_unavailable"``.
        DimensionError: If ``op`` and ``params`` disagree.
    """
    opts = opts or SolverOptions()
    if opts.projection_mode == "exact_unavailable":
        raise UnavailableProjectionError(
            "exact projection onto the sparse/flat intersection is not available; use 'approx' or 'none'"
        )
    if op.n != params.n or op.m != params.m:
        raise DimensionError(f"operator ({op.n}, {op.m}) does not match params ({params.n}, {params.m})")
    b = as_signal(b, op.m, "b")

    trace = SolveTrace()
    if warm_start is None:
        trace.init = thres_init(op.adjoint(b), op.psi, params.s1, params.s2, params.level2)
        v = trace.init.v0
    else:
        v = warm_start
    u = SparseVec.zeros(op.n, params.s1)
    prev: Optional[Tuple[SparseVec, SparseVec]] = None

    for t in range(1, opts.max_outer_iters + 1):
        v = _normalized(v, f"v_{t - 1}")
        fit_u = htp(op.restricted_right(v), b, params.s1, opts.htp_opts)
        u, in_cone_u = _project(fit_u.solution, op.phi, params.s1, params.level1, opts)
        u = _normalized(u, f"u_{t}")
        fit_v = htp(op.restricted_left(u), b, params.s2, opts.htp_opts)
        v, in_cone_v = _project(fit_v.solution, op.psi, params.s2, params.level2, opts)
        trace.iterations = t

        if opts.record_trace:
            trace.residuals.append(float(np.linalg.norm(b - op.forward(u, v))))
            trace.flatness_u.append(_flatness(op.phi, u))
            trace.flatness_v.append(_flatness(op.psi, v))
            trace.htp_iters_u.append(fit_u.iterations)
            trace.htp_iters_v.append(fit_v.iterations)
            trace.in_cone_u.append(in_cone_u)
            trace.in_cone_v.append(in_cone_v)
            if reference is not None:
                trace.sin_u.append(angle_metrics(u, reference[0]).sin)
                trace.sin_v.append(_sin_or_one(v, reference[1]))
                trace.proj_ratio_u.append(_projection_ratio(fit_u.solution, u, reference[0]))
                trace.proj_ratio_v.append(_projection_ratio(fit_v.solution, v, reference[1]))

        if prev is not None:
            scale = rank_one_norm(u, v)
            change = rank_one_distance(u, v, prev[0], prev[1])
            logger.debug("spf_bd iteration %d: relative change %.3e", t, change / scale if scale else 0.0)
            if change <= opts.rel_change_tol * scale:
                trace.converged = True
                break
        prev = (u, v)

    logger.debug("spf_bd finished after %d iterations (converged=%s)", trace.iterations, trace.converged)
    return RankOneEstimate(u=u, v=v), trace


def _normalized(x: SparseVec, name: str) -> SparseVec:
    if x.norm == 0.0:
        raise DegenerateIterateError(f"degenerate iterate: {name} is zero")
    return x.normalized()


def _project(
        x: SparseVec,
        phi: Dictionary,
        s: int,
        level: FlatnessLevel,
        opts: SolverOptions,
) -> Tuple[SparseVec, bool]:
    if opts.projection_mode == "none":
        return x, True
    proj = approx_project_intersection(x, phi, s, level, opts.alt_proj_opts, opts.htp_opts)
    return proj.coefficients, proj.in_cone


def _flatness(phi: Dictionary, x: SparseVec) -> float:
    image = phi.apply(x)
    return spectral_flatness(image) if np.any(image) else 1.0


def _sin_or_one(x: SparseVec, ref: SparseVec) -> float:
    return angle_metrics(x, ref).sin if x.norm > 0 else 1.0


def _projection_ratio(before: SparseVec, after: SparseVec, ref: SparseVec) -> float:
    sin_before = _sin_or_one(before, ref)
    sin_after = _sin_or_one(after, ref)
    if sin_before == 0.0:
        return 1.0 if sin_after == 0.0 else math.inf
    return sin_after / sin_before
