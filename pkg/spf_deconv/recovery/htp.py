"""Hard-thresholding pursuit.

Each iteration takes a gradient step on ‖b − Ax‖², keeps the s largest
entries to choose a support, and re-fits exactly by least squares on that
support:

    Ĵ_t = supp(P_{Γs}[x̂_{t−1} + α A*(b − A x̂_{t−1})])
    x̂_t = argmin { ‖b − Ax‖₂ : supp(x) ⊂ Ĵ_t }

starting from x̂₀ = 0. Iteration stops when the support repeats (the iterate
is then a fixed point), when the relative change of the iterate falls below
the tolerance, or after ``max_iters`` iterations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg
from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt

from spf_deconv.errors import DimensionError, DivergenceError
from spf_deconv.model.signals import ComplexVec, IndexSet, SparseVec, as_signal
from spf_deconv.operator.interfaces import LinearMap

logger = logging.getLogger(__name__)


class HtpOptions(BaseModel):
    """Options for :func:`htp`.

    Attributes:
        step_size: Gradient step α (1 is the analysed choice).
        rel_change_tol: Stop when ‖x̂_t − x̂_{t−1}‖ < tol·‖x̂_t‖.
        max_iters: Iteration cap.
    """
    model_config = ConfigDict(frozen=True)

    step_size: PositiveFloat = 1.0
    rel_change_tol: PositiveFloat = 1e-6
    max_iters: PositiveInt = 100


@dataclass(frozen=True)
class LeastSquaresFit:
    """Least-squares fit restricted to a support.

    Attributes:
        solution: Minimizer supported on the requested index set.
        residual_norm: ‖b − A·solution‖₂.
        rank: Numerical rank of the restricted columns.
        rank_deficient: Whether the minimum-norm fallback was used.
    """
    solution: SparseVec
    residual_norm: float
    rank: int
    rank_deficient: bool


@dataclass(frozen=True)
class HtpResult:
    solution: SparseVec
    iterations: int
    converged: bool
    final_residual_norm: float
    residuals: Tuple[float, ...] = ()
    rank_deficient: bool = False


def top_support(x: ComplexVec, s: int) -> IndexSet:
    """Sorted indices of the ``s`` largest magnitudes; ties keep the lowest index."""
    order = np.argsort(-np.abs(x), kind="stable")
    return np.sort(order[:s])


def hard_threshold(x: npt.ArrayLike, s: int) -> SparseVec:
    """Euclidean projection onto Γ_s.

    Args:
        x: Dense vector.
        s: Number of entries to keep, ``1 <= s <= n``.

    Returns:
        SparseVec: ``x`` restricted to its s largest-magnitude entries.

    Example:
        ```python
        hard_threshold([3, -1, 2j, 0.5], 2).support   # array([0, 2])
        ```
    """
    x = as_signal(x)
    if not 1 <= s <= x.size:
        raise DimensionError(f"sparsity s={s} outside [1, {x.size}]")
    J = top_support(x, s)
    J = J[x[J] != 0]
    return SparseVec(n=x.size, support=J, values=x[J], s=s)


def least_squares_on_support(
        A: LinearMap,
        b: npt.ArrayLike,
        J: npt.ArrayLike,
        s: Optional[int] = None,
) -> LeastSquaresFit:
    """Solve min ‖b − Ax‖₂ over x supported on ``J``.

    Uses a column-pivoted QR factorization of the restricted columns. When
    they are numerically rank deficient the minimum-norm solution is
    returned and the fit is flagged.

    Args:
        A: The linear map.
        b: Right-hand side of length ``A.out_dim``.
        J: Support indices.
        s: Sparsity budget of the returned vector (defaults to ``|J|``).

    Returns:
        LeastSquaresFit: The fit and its diagnostics.

    Raises:
        DimensionError: If ``|J|`` exceeds ``A.out_dim``.
    """
    b = A.check_output(b)
    idx = np.sort(np.asarray(J, dtype=np.int64).reshape(-1))
    budget = s if s is not None else max(1, idx.size)
    if idx.size > A.out_dim:
        raise DimensionError(f"support size {idx.size} exceeds {A.out_dim} measurements")
    if idx.size == 0:
        return LeastSquaresFit(SparseVec.zeros(A.in_dim, budget), float(np.linalg.norm(b)), 0, False)

    cols = A.columns(idx)
    Q, R, perm = scipy.linalg.qr(cols, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = max(cols.shape) * np.finfo(float).eps * (diag[0] if diag.size else 0.0)
    rank = int(np.sum(diag > tol))
    if rank == idx.size:
        coef = np.empty(idx.size, dtype=np.complex128)
        coef[perm] = scipy.linalg.solve_triangular(R, Q.conj().T @ b)
        deficient = False
    else:
        logger.warning("rank-deficient restriction (rank %d of %d); using minimum-norm fit", rank, idx.size)
        coef = scipy.linalg.lstsq(cols, b)[0]
        deficient = True

    residual = float(np.linalg.norm(b - cols @ coef))
    keep = coef != 0
    solution = SparseVec(n=A.in_dim, support=idx[keep], values=coef[keep], s=budget)
    return LeastSquaresFit(solution, residual, rank, deficient)


def htp(
        A: LinearMap,
        b: npt.ArrayLike,
        s: int,
        opts: Optional[HtpOptions] = None,
) -> HtpResult:
    """Hard-thresholding pursuit from x̂₀ = 0.

    Args:
        A: The linear map.
        b: Measurements of length ``A.out_dim``.
        s: Target sparsity, ``1 <= s <= A.in_dim``.
        opts: Step size and stopping rule.

    Returns:
        HtpResult: The s-sparse estimate and iteration diagnostics.

    Raises:
        DivergenceError: If an iterate becomes non-finite (α too large).
        DimensionError: If ``s`` is out of range.
    """
    opts = opts or HtpOptions()
    b = A.check_output(b)
    if not 1 <= s <= A.in_dim:
        raise DimensionError(f"sparsity s={s} outside [1, {A.in_dim}]")

    x = np.zeros(A.in_dim, dtype=np.complex128)
    fit = LeastSquaresFit(SparseVec.zeros(A.in_dim, s), float(np.linalg.norm(b)), 0, False)
    support: Optional[IndexSet] = None
    residuals: list[float] = []
    converged = False
    iterations = 0

    for t in range(1, opts.max_iters + 1):
        step = x + opts.step_size * A.apply_adjoint(b - A.apply(x))
        if not np.all(np.isfinite(step)):
            raise DivergenceError(f"divergence at HTP iteration {t}; step size {opts.step_size} too large?")
        J = top_support(step, s)
        if support is not None and np.array_equal(J, support):
            converged = True
            break

        fit = least_squares_on_support(A, b, J, s)
        x_new = fit.solution.dense()
        if not np.all(np.isfinite(x_new)):
            raise DivergenceError(f"divergence in least squares at HTP iteration {t}")

        new_norm = np.linalg.norm(x_new)
        change = np.linalg.norm(x_new - x)
        x, support, iterations = x_new, J, t
        residuals.append(fit.residual_norm)
        if change <= opts.rel_change_tol * new_norm:
            converged = True
            break

    logger.debug("htp s=%d: %d iterations, residual %.3e, converged=%s",
                 s, iterations, fit.residual_norm, converged)
    return HtpResult(
        solution=fit.solution,
        iterations=iterations,
        converged=converged,
        final_residual_norm=fit.residual_norm,
        residuals=tuple(residuals),
        rank_deficient=fit.rank_deficient,
    )
