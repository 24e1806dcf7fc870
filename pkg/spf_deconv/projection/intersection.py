"""Projections onto dictionary-sparse images and their intersection with C_μ.

Exact projection onto Γ_s ∩ Φ⁻¹C_μ is not tractable; the approximation
alternates the exact cone projection with the sparse-image projection
(HTP with Φ as the sensing map) and always finishes on the sparse step, so
the returned coefficients are exactly s-sparse while membership in C_μ is
reported rather than guaranteed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt

from spf_deconv.model.dictionary import Dictionary
from spf_deconv.model.signals import (
    ComplexVec,
    FlatnessLevel,
    FlatnessLike,
    SparseVec,
    as_signal,
    in_flatness_cone,
    spectral_flatness,
)
from spf_deconv.operator.maps import DenseMap
from spf_deconv.projection.cone import project_flatness_cone
from spf_deconv.recovery.htp import HtpOptions, htp

logger = logging.getLogger(__name__)

# Slack on sf(Φu) ≤ μ when reporting membership of an approximate projection.
MEMBERSHIP_RTOL = 1e-6


class AltProjOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_rounds: PositiveInt = 50
    rel_change_tol: PositiveFloat = 1e-6


@dataclass(frozen=True, eq=False)
class IntersectionProjection:
    """Result of :func:`approx_project_intersection`.

    Attributes:
        coefficients: s-sparse coefficients u with Φu the final iterate.
        rounds: Alternating rounds run (0 on the feasible fast path).
        flatness: sf(Φu), 1.0 for the zero vector.
        in_cone: Whether sf(Φu) ≤ μ(1 + 1e-6).
    """
    coefficients: SparseVec
    rounds: int
    flatness: float
    in_cone: bool


def sparse_code(x: npt.ArrayLike, phi: Dictionary, s: int,
                opts: Optional[HtpOptions] = None) -> SparseVec:
    """s-sparse û approximately minimizing ‖x − Φû‖ (HTP with Φ as the map)."""
    return htp(DenseMap(phi.matrix), x, s, opts).solution


def project_dict_sparse(x: npt.ArrayLike, phi: Dictionary, s: int,
                        opts: Optional[HtpOptions] = None) -> ComplexVec:
    """Return Φû with û = htp(Φ, x, s); the output lies in ΦΓ_s."""
    return phi.apply(sparse_code(x, phi, s, opts))


def approx_project_intersection(
        u_tilde: Union[SparseVec, npt.ArrayLike],
        phi: Dictionary,
        s: int,
        mu: FlatnessLike,
        opts: Optional[AltProjOptions] = None,
        htp_opts: Optional[HtpOptions] = None,
) -> IntersectionProjection:
    """Approximate projection of ũ onto Γ_s ∩ Φ⁻¹C_μ.

    Args:
        u_tilde: Coefficient vector to project.
        phi: Square dictionary Φ.
        s: Sparsity level.
        mu: Flatness level.
        opts: Round cap and stopping tolerance.
        htp_opts: Options of the inner sparse projection.

    Returns:
        IntersectionProjection: s-sparse coefficients and feasibility report.

    Raises:
        SingularDictionaryError: If Φ is numerically singular.
    """
    opts = opts or AltProjOptions()
    phi.ensure_invertible()
    level = FlatnessLevel.coerce(mu)
    u_dense = u_tilde.dense() if isinstance(u_tilde, SparseVec) else as_signal(u_tilde, phi.n, "u")
    x = phi.apply(u_dense)

    if np.count_nonzero(u_dense) <= s and in_flatness_cone(x, level):
        code = SparseVec.from_dense(u_dense, s)
        return IntersectionProjection(code, 0, _flatness(x), True)

    code = SparseVec.zeros(phi.n, s)
    rounds = 0
    for rounds in range(1, opts.max_rounds + 1):
        flattened = project_flatness_cone(x, level).projected
        code = sparse_code(flattened, phi, s, htp_opts)
        x_new = phi.apply(code)
        change = float(np.linalg.norm(x_new - x))
        scale = float(np.linalg.norm(x_new))
        x = x_new
        if in_flatness_cone(x, level) or change <= opts.rel_change_tol * scale:
            break

    in_cone = in_flatness_cone(x, level, rtol=MEMBERSHIP_RTOL)
    flatness = _flatness(x)
    if not in_cone:
        logger.warning("approximate projection left the flatness cone: sf=%.4g > mu=%.4g after %d rounds",
                       flatness, level.resolve(phi.n), rounds)
    else:
        logger.debug("approximate projection feasible after %d rounds (sf=%.4g)", rounds, flatness)
    return IntersectionProjection(code, rounds, flatness, in_cone)


def _flatness(x: ComplexVec) -> float:
    return spectral_flatness(x) if np.any(x) else 1.0
