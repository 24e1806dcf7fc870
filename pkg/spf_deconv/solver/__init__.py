from spf_deconv.solver.initialization import InitResult, row_sparse_norms, thres_init
from spf_deconv.solver.spf import (
    RankOneEstimate,
    SolverOptions,
    SolveTrace,
    default_flatness_level,
    spf_bd,
)
from spf_deconv.solver.theory import (
    AngleMetrics,
    angle_metrics,
    contraction_factor,
    htp_constant,
    rank_one_distance,
)

__all__ = [
    "AngleMetrics",
    "InitResult",
    "RankOneEstimate",
    "SolveTrace",
    "SolverOptions",
    "angle_metrics",
    "contraction_factor",
    "default_flatness_level",
    "htp_constant",
    "rank_one_distance",
    "row_sparse_norms",
    "spf_bd",
    "thres_init",
]
