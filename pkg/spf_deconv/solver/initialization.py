"""Thresholded initialization of the right factor.

Given M ≈ uvᵀ (in practice M = A*(b)), the row support of u is estimated from
row norms of sparse approximations of the rows, the column support of v from
column norms of the row-restricted matrix, and v0 from the leading singular
pair of the doubly restricted block. The column support size s0 is grown
while every s0-sparse vector on it is guaranteed spectrally flat:

    ‖FΨ_J‖_max · √s0 ≤ √(μ2/n) · σ_min(FΨ_J),

and backed off by one step when that fails, so v0 ∈ Γ_{s2} ∩ Ψ⁻¹C_{μ2}
whenever the returned support passes the check.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg

from spf_deconv.errors import DimensionError, DomainError
from spf_deconv.model.dictionary import Dictionary
from spf_deconv.model.signals import FlatnessLevel, FlatnessLike, IndexSet, SparseVec
from spf_deconv.recovery.htp import top_support

logger = logging.getLogger(__name__)

POWER_TOL = 1e-10
POWER_MAX_ITERS = 500


@dataclass(frozen=True, eq=False)
class InitResult:
    """Output of :func:`thres_init`.

    Attributes:
        v0: Unit-norm initial estimate of v, supported on ``J2_hat``.
        s0: Size of ``J2_hat``.
        J1_hat: Estimated support of u (size s1).
        J2_hat: Estimated support of v (size s0).
        feasible: Whether the flatness-feasibility inequality holds on ``J2_hat``.
        degenerate: Whether the restricted block was zero.
    """
    v0: SparseVec
    s0: int
    J1_hat: IndexSet
    J2_hat: IndexSet
    feasible: bool
    degenerate: bool


def row_sparse_norms(M: npt.ArrayLike, s0: int) -> npt.NDArray[np.float64]:
    """ℓ₂ norm of the s0 largest-magnitude entries of every row of ``M``."""
    M = np.asarray(M)
    if s0 < 1:
        raise DimensionError(f"s0 must be positive, got {s0}")
    k = min(s0, M.shape[1])
    power = np.sort(np.abs(M) ** 2, axis=1)[:, M.shape[1] - k:]
    return np.sqrt(power.sum(axis=1))


def flatness_feasible(fourier: npt.NDArray[np.complex128], J: IndexSet, mu: float) -> bool:
    """The sufficient condition ‖FΨ_J‖_max √|J| ≤ √(μ/n) σ_min(FΨ_J)."""
    n = fourier.shape[0]
    sub = fourier[:, J]
    sigma_min = float(scipy.linalg.svdvals(sub).min())
    lhs = float(np.abs(sub).max()) * math.sqrt(J.size)
    return lhs <= math.sqrt(mu / n) * sigma_min * (1.0 + 1e-12)


def thres_init(
        M: npt.ArrayLike,
        psi: Dictionary,
        s1: int,
        s2: int,
        mu2: FlatnessLike = None,
) -> InitResult:
    """Thresholded initialization.

    Args:
        M: n×n matrix, typically A*(b).
        psi: Right dictionary Ψ.
        s1: Sparsity of u.
        s2: Sparsity of v.
        mu2: Flatness level of Ψv.

    Returns:
        InitResult: v0 and the estimated supports.

    Example:
        ```python
        init = thres_init(op.adjoint(b), op.psi, 4, 4, 28.0)
        init.v0.norm   # 1.0
        ```
    """
    M = np.asarray(M, dtype=np.complex128)
    n = psi.n
    if M.shape != (n, n):
        raise DimensionError(f"M must be {n}x{n}, got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DomainError("M has non-finite entries")
    if not (1 <= s1 <= n and 1 <= s2 <= n):
        raise DimensionError(f"sparsity levels ({s1}, {s2}) outside [1, {n}]")
    mu = FlatnessLevel.coerce(mu2).resolve(n)
    fourier = psi.fourier

    s0 = 1
    J1, J2 = _supports(M, s1, s0)
    while s0 <= s2 and flatness_feasible(fourier, J2, mu):
        s0 += 1
        J1, J2 = _supports(M, s1, s0)
    s0 = max(1, s0 - 1)
    J1, J2 = _supports(M, s1, s0)

    block = M[np.ix_(J1, J2)]
    degenerate = not np.any(block)
    if degenerate:
        logger.warning("initialization block is zero; returning a flat unit vector")
        values = np.full(J2.size, 1.0 / math.sqrt(J2.size), dtype=np.complex128)
    else:
        # M ≈ u vᵀ = u (v̄)ᴴ: the right singular vector estimates v̄.
        values = np.conj(_leading_right_singular_vector(block))
    keep = values != 0
    v0 = SparseVec(n=n, support=J2[keep], values=values[keep], s=s2)
    feasible = flatness_feasible(fourier, J2, mu)
    logger.debug("thres_init: s0=%d feasible=%s degenerate=%s", s0, feasible, degenerate)
    return InitResult(v0=v0, s0=s0, J1_hat=J1, J2_hat=J2, feasible=feasible, degenerate=degenerate)


def _supports(M: npt.NDArray[np.complex128], s1: int, s0: int) -> Tuple[IndexSet, IndexSet]:
    J1 = top_support(row_sparse_norms(M, s0), s1)
    col_norms = np.linalg.norm(M[J1, :], axis=0)
    J2 = top_support(col_norms, s0)
    return J1, J2


def _leading_right_singular_vector(block: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    gram = block.conj().T @ block
    w = np.ones(gram.shape[0], dtype=np.complex128) / math.sqrt(gram.shape[0])
    for _ in range(POWER_MAX_ITERS):
        nxt = gram @ w
        norm = np.linalg.norm(nxt)
        if norm == 0.0:
            break
        nxt /= norm
        if np.linalg.norm(nxt - w) <= POWER_TOL:
            return nxt
        w = nxt
    logger.warning("power iteration did not converge; falling back to a dense SVD")
    return scipy.linalg.svd(block)[2][0].conj()
