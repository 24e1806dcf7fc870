"""Single phase-transition trial: synthesize, solve, score.

Each trial draws everything (Φ, Ψ, u, v, Ω, z) from a counter-based
generator keyed by (base_seed, m, s, trial_index), so a trial's outcome does
not depend on which worker runs it or in what order.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from spf_deconv.errors import SPFDeconvError
from spf_deconv.harness.config import ExperimentConfig
from spf_deconv.harness.metrics import make_noise, rsdr_db, snr_db
from spf_deconv.model.dictionary import gen_dictionary, gen_sparse_signal
from spf_deconv.model.rng import keyed_rng
from spf_deconv.model.signals import ModelParams
from spf_deconv.operator.measurement import MeasOperator, SamplingPattern
from spf_deconv.solver.spf import SolverOptions, spf_bd
from spf_deconv.solver.theory import angle_metrics

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]

TRIAL_ERRORS = (SPFDeconvError, np.linalg.LinAlgError, ArithmeticError, ValueError)


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one trial.

    ``wall_time_ms`` is excluded from equality so re-runs compare equal.
    """
    m: int
    s: int
    trial_index: int
    base_seed: int
    rsdr_db: float
    snr_db: float
    success: bool
    outer_iters: int
    init_angle_sin: float
    peakedness_u: float
    peakedness_v: float
    noise_snr_db: float
    subsample: str
    dict_field: str
    error: Optional[str] = None
    wall_time_ms: float = field(default=0.0, compare=False)

    @property
    def cell(self) -> Cell:
        return self.m, self.s


def run_trial(cfg: ExperimentConfig, cell: Cell, trial_index: int) -> TrialResult:
    """Synthesize and solve one instance of ``cell``.

    Solver and numerical errors count as failures (RSDR 0 dB); ``error``
    keeps ``"<ExceptionType>: <message>"``.
    """
    m, s = cell
    rng = keyed_rng(cfg.base_seed, m, s, trial_index)
    n = cfg.n_for(m)
    field_ = cfg.dict_field

    phi = gen_dictionary(n, field_, rng)
    psi = gen_dictionary(n, field_, rng)
    u = gen_sparse_signal(n, s, "gauss", rng, field=field_)
    v = gen_sparse_signal(n, s, "gauss", rng, field=field_)
    if cfg.subsample == "full":
        pattern = SamplingPattern.full(n)
    elif cfg.subsample == "uniform":
        pattern = SamplingPattern.uniform(n, cfg.subsample_factor)
    else:
        pattern = SamplingPattern.random(n, m, rng)
    op = MeasOperator(phi, psi, pattern)

    clean = op.forward(u, v)
    noise = make_noise(clean, cfg.snr_db, rng, field_)
    b = clean + noise

    level = cfg.mu_level(n)
    params = ModelParams(n=n, m=op.m, s1=s, s2=s, mu1=level.mu, mu2=level.mu)
    opts = SolverOptions(max_outer_iters=cfg.max_outer_iters)

    start = time.perf_counter()
    error: Optional[str] = None
    try:
        estimate, trace = spf_bd(op, b, params, opts, reference=(u, v))
        rsdr = rsdr_db(estimate, (u, v))
        iters = trace.iterations
        init_sin = angle_metrics(trace.init.v0, v).sin if trace.init is not None else math.nan
    except TRIAL_ERRORS as exc:
        error = f"{type(exc).__name__}: {exc}"
        logger.warning("trial (m=%d, s=%d, #%d) failed: %s", m, s, trial_index, error)
        rsdr, iters, init_sin = 0.0, 0, 1.0
    elapsed_ms = 1e3 * (time.perf_counter() - start)

    return TrialResult(
        m=m,
        s=s,
        trial_index=trial_index,
        base_seed=cfg.base_seed,
        rsdr_db=rsdr,
        snr_db=snr_db(clean, noise),
        success=rsdr > cfg.threshold_db,
        outer_iters=iters,
        init_angle_sin=init_sin,
        peakedness_u=u.peakedness(),
        peakedness_v=v.peakedness(),
        noise_snr_db=cfg.snr_db,
        subsample=cfg.subsample_label,
        dict_field=field_,
        error=error,
        wall_time_ms=elapsed_ms,
    )
