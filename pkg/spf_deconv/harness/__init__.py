from spf_deconv.harness.config import ExperimentConfig, load_config, parse_config
from spf_deconv.harness.export import export_csv, import_csv, to_csv
from spf_deconv.harness.grid import GridRow, SuccessGrid, phase_transition
from spf_deconv.harness.heatmap import build_heatmap, render_heatmap
from spf_deconv.harness.metrics import make_noise, rsdr_db, snr_db
from spf_deconv.harness.rip import RipEstimate, estimate_rip_distortion, gaussian_operator_factory
from spf_deconv.harness.trials import TrialResult, run_trial

__all__ = [
    "ExperimentConfig",
    "GridRow",
    "RipEstimate",
    "SuccessGrid",
    "TrialResult",
    "build_heatmap",
    "estimate_rip_distortion",
    "export_csv",
    "gaussian_operator_factory",
    "import_csv",
    "load_config",
    "make_noise",
    "parse_config",
    "phase_transition",
    "render_heatmap",
    "rsdr_db",
    "run_trial",
    "snr_db",
    "to_csv",
]
