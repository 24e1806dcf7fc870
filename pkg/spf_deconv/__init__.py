"""Sparse power factorization for subsampled blind deconvolution.

Recovers sparse u, v from subsampled circular convolutions
b = √(n/m)·S_Ω(Φu ⊛ Ψv) + z by alternating hard-thresholding pursuit with
spectral-flatness projections, and runs the phase-transition experiments
that measure how far the method reaches.

Example:
    ```python
    from spf_deconv import (
        MeasOperator, ModelParams, SamplingPattern, gen_dictionary,
        gen_sparse_signal, rsdr_db, spf_bd,
    )

    phi, psi = gen_dictionary(128, seed=1), gen_dictionary(128, seed=2)
    u, v = gen_sparse_signal(128, 2, seed=3), gen_sparse_signal(128, 2, seed=4)
    op = MeasOperator(phi, psi, SamplingPattern.full(128))
    params = ModelParams(n=128, m=128, s1=2, s2=2, mu1=25, mu2=25)
    estimate, trace = spf_bd(op, op.forward(u, v), params)
    print(rsdr_db(estimate, (u, v)))
    ```
"""

from spf_deconv.errors import (
    ConfigError,
    DegenerateIterateError,
    DimensionError,
    DivergenceError,
    DomainError,
    OracleCapError,
    SingularDictionaryError,
    SPFDeconvError,
    UnavailableProjectionError,
    ZeroSignalError,
)
from spf_deconv.harness import (
    ExperimentConfig,
    SuccessGrid,
    TrialResult,
    estimate_rip_distortion,
    export_csv,
    import_csv,
    load_config,
    make_noise,
    phase_transition,
    render_heatmap,
    rsdr_db,
    run_trial,
    snr_db,
)
from spf_deconv.model import (
    Dictionary,
    FlatnessLevel,
    ModelParams,
    SparseVec,
    flatness_stats,
    gen_dictionary,
    gen_sparse_signal,
    in_flatness_cone,
    spectral_flatness,
)
from spf_deconv.operator import LinearMap, MeasOperator, SamplingPattern, circular_convolve, subsample
from spf_deconv.projection import (
    approx_project_intersection,
    project_flatness_cone,
    verify_cone_projection_kkt,
)
from spf_deconv.recovery import HtpOptions, hard_threshold, htp, least_squares_on_support
from spf_deconv.solver import SolverOptions, angle_metrics, contraction_factor, htp_constant, spf_bd, thres_init

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DegenerateIterateError",
    "Dictionary",
    "DimensionError",
    "DivergenceError",
    "DomainError",
    "ExperimentConfig",
    "FlatnessLevel",
    "HtpOptions",
    "LinearMap",
    "MeasOperator",
    "ModelParams",
    "OracleCapError",
    "SPFDeconvError",
    "SamplingPattern",
    "SingularDictionaryError",
    "SolverOptions",
    "SparseVec",
    "SuccessGrid",
    "TrialResult",
    "UnavailableProjectionError",
    "ZeroSignalError",
    "angle_metrics",
    "approx_project_intersection",
    "circular_convolve",
    "contraction_factor",
    "estimate_rip_distortion",
    "export_csv",
    "flatness_stats",
    "gen_dictionary",
    "gen_sparse_signal",
    "hard_threshold",
    "htp",
    "htp_constant",
    "import_csv",
    "in_flatness_cone",
    "least_squares_on_support",
    "load_config",
    "make_noise",
    "phase_transition",
    "project_flatness_cone",
    "render_heatmap",
    "rsdr_db",
    "run_trial",
    "snr_db",
    "spectral_flatness",
    "spf_bd",
    "subsample",
    "thres_init",
    "verify_cone_projection_kkt",
]
