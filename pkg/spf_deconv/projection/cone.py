"""Exact projection onto the spectral-flatness cone C_μ.

The DFT maps C_μ onto the cone of spectra whose squared magnitudes satisfy
``n·max|ζ_i|² ≤ μ·Σ|ζ_i|²``. Projection onto a cone is projection onto the
ray of the best-aligned member, so the algorithm builds that member ξ
directly:

1. ζ = Fx, magnitudes sorted descending (ties by ascending index).
2. k is the smallest index with ``(k−1)μ + μ·Σ_{i≥k}|ζ_(i)|² / |ζ_(k)|² ≥ n``.
3. ξ has the phases of ζ, magnitude √μ on the k−1 largest entries and the
   remaining entries scaled by ``√((n − (k−1)μ) / Σ_{i≥k}|ζ_(i)|²)``, so that
   ‖ξ‖² = n.
4. P(x) = F*(ξ ξ*ζ)/‖ξ‖².

k = 1 means x is already a member and it is returned as is. When every
inequality fails up to the number r of nonzero spectral entries, the zero
entries share the leftover budget n − rμ evenly (their weight does not move
the projection).

The magnitudes a_i = |ξ_i|² solve a convex program whose KKT conditions,
``√a_i = |ζ_i| / (2(λ + μ_i))`` with μ_i > 0 only on entries capped at μ,
are checked by :func:`verify_cone_projection_kkt`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from spf_deconv.model.signals import (
    ComplexVec,
    FlatnessLevel,
    FlatnessLike,
    as_signal,
    dft,
    idft,
    spectral_flatness,
)

logger = logging.getLogger(__name__)

KKT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ConeProjResult:
    """Output of :func:`project_flatness_cone`.

    Attributes:
        projected: P_{C_μ}(x).
        k_star: The k selected in step 2 (1 for members).
        was_member: Whether ``x`` was already in C_μ.
    """
    projected: ComplexVec
    k_star: int
    was_member: bool


@dataclass(frozen=True)
class KKTReport:
    """Outcome of :func:`verify_cone_projection_kkt`; truthy when all checks pass."""
    ok: bool
    lam: float
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def project_flatness_cone(x: npt.ArrayLike, mu: FlatnessLike) -> ConeProjResult:
    """Project ``x`` onto C_μ.

    Args:
        x: Signal to project; the zero vector passes through.
        mu: Flatness level; an inactive level (or μ ≥ n) is the identity.

    Returns:
        ConeProjResult: The projection and the selected k.

    Example:
        ```python
        x = idft(np.array([2.0, 1.0, 1.0, 1.0]))
        res = project_flatness_cone(x, 2.0)
        spectral_flatness(res.projected) <= 2.0   # True
        ```
    """
    x = as_signal(x)
    n = x.size
    level = FlatnessLevel.coerce(mu)
    if not np.any(x) or not level.binds(n):
        return ConeProjResult(x.copy(), 1, True)
    mu_val = level.resolve(n)

    zeta = dft(x)
    mag = np.abs(zeta)
    order = np.argsort(-mag, kind="stable")
    sorted_sq = mag[order] ** 2
    tail = np.cumsum(sorted_sq[::-1])[::-1]
    ratio = np.full(n, np.inf)
    np.divide(tail, sorted_sq, out=ratio, where=sorted_sq > 0)
    ks = np.arange(1, n + 1)
    satisfied = (ks - 1) * mu_val + mu_val * ratio >= n * (1.0 - 1e-12)
    k = int(np.argmax(satisfied)) + 1

    if k == 1:
        return ConeProjResult(x.copy(), 1, True)

    budget = n - (k - 1) * mu_val
    sorted_mag = np.empty(n)
    sorted_mag[:k - 1] = math.sqrt(mu_val)
    if tail[k - 1] > 0:
        sorted_mag[k - 1:] = math.sqrt(budget / tail[k - 1]) * np.sqrt(sorted_sq[k - 1:])
    else:
        sorted_mag[k - 1:] = math.sqrt(budget / (n - k + 1))

    phase = np.ones(n, dtype=np.complex128)
    nonzero = mag > 0
    phase[nonzero] = zeta[nonzero] / mag[nonzero]
    xi = np.empty(n, dtype=np.complex128)
    xi[order] = sorted_mag
    xi *= phase

    spectrum = xi * (np.vdot(xi, zeta) / np.vdot(xi, xi).real)
    logger.debug("cone projection n=%d mu=%g: k*=%d", n, mu_val, k)
    return ConeProjResult(idft(spectrum), k, False)


def verify_cone_projection_kkt(
        x: npt.ArrayLike,
        result: ConeProjResult,
        mu: FlatnessLike,
        tol: float = KKT_TOL,
) -> KKTReport:
    """Check a cone projection against its optimality conditions.

    The magnitudes a = n|Fp|²/‖Fp‖² of the output p must satisfy
    ``0 <= a_i <= μ``, share the phases of ζ = Fx, and admit λ >= 0 with
    ``√a_i = |ζ_i|/(2λ)`` on uncapped entries and ``μ_i = |ζ_i|/(2√μ) − λ >= 0``
    on capped ones.

    Args:
        x: The projected input.
        result: Output of :func:`project_flatness_cone`.
        mu: The flatness level used.
        tol: Relative tolerance of each check.

    Returns:
        KKTReport: ``ok`` plus the reconstructed λ and, on failure, the first
        violated condition.
    """
    x = as_signal(x)
    p = as_signal(result.projected, x.size, "projected")
    n = x.size
    mu_val = FlatnessLevel.coerce(mu).resolve(n)

    zeta = dft(x)
    norm_zeta = float(np.linalg.norm(zeta))
    if norm_zeta == 0.0:
        ok = not np.any(p)
        return KKTReport(ok, 0.0, "" if ok else "zero input must project to zero")

    if result.was_member:
        if np.linalg.norm(p - x) > tol * np.linalg.norm(x):
            return KKTReport(False, 0.0, "member input was moved")
        if spectral_flatness(x) > mu_val * (1.0 + tol):
            return KKTReport(False, 0.0, "input flagged as member lies outside the cone")
        return KKTReport(True, norm_zeta / (2.0 * math.sqrt(n)))

    fp = dft(p)
    power = np.abs(fp) ** 2
    if power.sum() == 0.0:
        return KKTReport(False, 0.0, "projection of a nonzero input vanished")
    a = n * power / power.sum()
    mag = np.abs(zeta)
    significant = mag > 1e-6 * mag.max()

    aligned = significant & (np.abs(fp) > 1e-12 * np.abs(fp).max())
    if np.any(np.abs(np.angle(fp[aligned] * np.conj(zeta[aligned]))) > tol):
        return KKTReport(False, 0.0, "phase of the projection differs from the input spectrum")

    if np.any(a > mu_val * (1.0 + tol)):
        return KKTReport(False, 0.0, f"a magnitude exceeds the cap mu={mu_val:g}")

    capped = a >= mu_val * (1.0 - tol)
    free = ~capped & significant
    if np.any(free):
        lams = mag[free] / (2.0 * np.sqrt(a[free]))
        lam = float(np.median(lams))
        if np.max(np.abs(lams - lam)) > tol * lam:
            return KKTReport(False, lam, "uncapped entries disagree on the multiplier lambda")
        dead = ~capped & ~significant
        if np.any(a[dead] > tol * mu_val):
            return KKTReport(False, lam, "zero spectral entries carry weight while lambda > 0")
    else:
        lam = 0.0

    slack = mag[capped] / (2.0 * math.sqrt(mu_val)) - lam
    if np.any(slack < -tol * max(lam, 1e-300)):
        return KKTReport(False, lam, "negative multiplier on a capped entry")
    return KKTReport(True, lam)
