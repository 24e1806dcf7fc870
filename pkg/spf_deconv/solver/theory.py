"""Closed-form constants of the convergence analysis and angle diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
import numpy.typing as npt

from spf_deconv.errors import DomainError, ZeroSignalError
from spf_deconv.model.signals import ComplexVec, SparseVec, as_signal

VecLike = Union[SparseVec, npt.ArrayLike]

# Positive root of 1 − δ² = 2δ²; the HTP constant blows up there.
DELTA_LIMIT = 1.0 / math.sqrt(3.0)


def htp_constant(delta: float) -> float:
    """HTP stability constant

        (√(2(1−δ)) + √(1+δ)) / (√(1−δ) (√(1−δ²) − √(2δ²)))

    for ``0 <= δ < 1/√3``.

    Raises:
        DomainError: "denominator nonpositive" outside that range.
    """
    if not 0.0 <= delta < DELTA_LIMIT:
        raise DomainError(f"denominator nonpositive for delta={delta}")
    num = math.sqrt(2.0 * (1.0 - delta)) + math.sqrt(1.0 + delta)
    den = math.sqrt(1.0 - delta) * (math.sqrt(1.0 - delta * delta) - math.sqrt(2.0 * delta * delta))
    if den <= 0.0:
        raise DomainError(f"denominator nonpositive for delta={delta}")
    return num / den


def contraction_factor(delta: float) -> float:
    """Per-iteration error contraction ``2δ·C_δ·√(1+δ)/√(1−δ)``."""
    return 2.0 * delta * htp_constant(delta) * math.sqrt(1.0 + delta) / math.sqrt(1.0 - delta)


@dataclass(frozen=True)
class AngleMetrics:
    sin: float
    cos: float
    tan: float


def angle_metrics(a: VecLike, b: VecLike) -> AngleMetrics:
    """Principal angle between span(a) and span(b).

    ``sin`` is ‖(I − P_a) b‖/‖b‖, evaluated from the projection residual so it
    stays accurate for nearly aligned vectors.

    Raises:
        ZeroSignalError: If either vector is zero.
    """
    a = _dense(a)
    b = _dense(b)
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ZeroSignalError("angle is undefined for a zero vector")
    ua = a / na
    ub = b / nb
    inner = np.vdot(ua, ub)
    cos = min(1.0, abs(inner))
    sin = min(1.0, float(np.linalg.norm(ub - inner * ua)))
    tan = sin / cos if cos > 0.0 else math.inf
    return AngleMetrics(sin=sin, cos=cos, tan=tan)


def rank_one_inner(u1: VecLike, v1: VecLike, u2: VecLike, v2: VecLike) -> complex:
    """⟨u1 v1ᵀ, u2 v2ᵀ⟩ = ⟨u1, u2⟩⟨v1, v2⟩ (trace inner product)."""
    return complex(np.vdot(_dense(u1), _dense(u2)) * np.vdot(_dense(v1), _dense(v2)))


def rank_one_distance(u1: VecLike, v1: VecLike, u2: VecLike, v2: VecLike) -> float:
    """‖u1 v1ᵀ − u2 v2ᵀ‖_F without forming an n×n matrix.

    Equal in exact arithmetic to the Gram expansion
    ``‖u1‖²‖v1‖² + ‖u2‖²‖v2‖² − 2Re(⟨u1,u2⟩⟨v1,v2⟩)``, but evaluated by
    splitting u2 = αu1 + r with r ⊥ u1, which turns the difference into two
    orthogonal rank-one terms and avoids cancellation when the pairs agree.
    """
    u1, v1, u2, v2 = _dense(u1), _dense(v1), _dense(u2), _dense(v2)
    nu1 = float(np.vdot(u1, u1).real)
    if nu1 == 0.0:
        return float(np.linalg.norm(u2) * np.linalg.norm(v2))
    alpha = np.vdot(u1, u2) / nu1
    r = u2 - alpha * u1
    sq = nu1 * float(np.linalg.norm(v1 - alpha * v2)) ** 2 \
        + float(np.linalg.norm(r)) ** 2 * float(np.linalg.norm(v2)) ** 2
    return math.sqrt(sq)


def rank_one_norm(u: VecLike, v: VecLike) -> float:
    return float(np.linalg.norm(_dense(u)) * np.linalg.norm(_dense(v)))


def _dense(x: VecLike) -> ComplexVec:
    return x.dense() if isinstance(x, SparseVec) else as_signal(x)
