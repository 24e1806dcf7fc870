from spf_deconv.projection.cone import (
    ConeProjResult,
    KKTReport,
    project_flatness_cone,
    verify_cone_projection_kkt,
)
from spf_deconv.projection.intersection import (
    AltProjOptions,
    IntersectionProjection,
    approx_project_intersection,
    project_dict_sparse,
    sparse_code,
)

__all__ = [
    "AltProjOptions",
    "ConeProjResult",
    "IntersectionProjection",
    "KKTReport",
    "approx_project_intersection",
    "project_dict_sparse",
    "project_flatness_cone",
    "sparse_code",
    "verify_cone_projection_kkt",
]
