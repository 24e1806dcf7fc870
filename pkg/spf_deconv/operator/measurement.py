"""Subsampled circular-convolution measurements.

For dictionaries Φ, Ψ and a sampling set Ω = {ω₁ < … < ω_m} the operator is

    A(uvᵀ)_k = √(n/m) · (Φu ⊛ Ψv)_{ω_k},

the lifted linear map on n×n matrices whose k-th functional is
``⟨M_k, X⟩ = tr(M_k* X)`` with

    M_k = √(n/m) · √n · Φ* F* diag(f_{ω_k}) F̄ Ψ̄,

f_ℓ being column ℓ of the unitary DFT F. The √(n/m) factor makes
E‖A(X)‖² = ‖X‖_F² for Gaussian dictionaries of entry variance 1/n.

Everything except :meth:`MeasOperator.explicit_matrices` and dense
:meth:`MeasOperator.forward_lifted` is matrix-free: forward costs two
dictionary products and one FFT, the restricted maps O(n²) per application.

Example:
    ```python
    op = MeasOperator(phi, psi, SamplingPattern.uniform(256, 2))
    b = op.forward(u, v)             # length 128
    A_R = op.restricted_right(v)     # LinearMap in u
    np.allclose(A_R.apply(u.dense()), b)
    ```
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import numpy.typing as npt

from spf_deconv.errors import DimensionError, OracleCapError
from spf_deconv.model.dictionary import Dictionary
from spf_deconv.model.rng import SeedLike, make_rng
from spf_deconv.model.signals import ComplexVec, IndexSet, SparseVec, as_signal, dft, idft
from spf_deconv.operator.maps import ConvolutionMap

logger = logging.getLogger(__name__)

# Dense test oracles allocate O(m n²); refuse anything larger.
ORACLE_CAP = 64

VecLike = Union[SparseVec, npt.ArrayLike]
Factored = Tuple[npt.ArrayLike, npt.ArrayLike]


@dataclass(frozen=True, eq=False)
class SamplingPattern:
    """Ordered set Ω of distinct sampling indices in ``[0, n)``.

    Example:
        ```python
        SamplingPattern.uniform(8, 2).indices   # array([0, 2, 4, 6])
        SamplingPattern.full(4).m               # 4
        ```
    """
    n: int
    indices: IndexSet
    label: str = "custom"

    def __post_init__(self) -> None:
        idx = np.array(self.indices, dtype=np.int64).reshape(-1)
        if self.n < 1:
            raise DimensionError(f"n must be positive, got {self.n}")
        if idx.size == 0:
            raise DimensionError("sampling pattern must hold at least one index")
        if idx[0] < 0 or idx[-1] >= self.n or np.any(np.diff(idx) <= 0):
            raise DimensionError("sampling indices must be distinct, sorted and within range")
        idx.flags.writeable = False
        object.__setattr__(self, "indices", idx)

    @classmethod
    def full(cls, n: int) -> SamplingPattern:
        return cls(n, np.arange(n), "full")

    @classmethod
    def uniform(cls, n: int, factor: int) -> SamplingPattern:
        """Every ``factor``-th index, starting at 0."""
        if factor < 1:
            raise DimensionError(f"subsampling factor must be positive, got {factor}")
        return cls(n, np.arange(0, n, factor), f"uniform({factor})")

    @classmethod
    def random(cls, n: int, m: int, seed: SeedLike = None) -> SamplingPattern:
        """``m`` indices drawn uniformly without replacement."""
        if not 1 <= m <= n:
            raise DimensionError(f"m={m} outside [1, {n}]")
        rng = make_rng(seed)
        return cls(n, np.sort(rng.choice(n, size=m, replace=False)), "random")

    @property
    def m(self) -> int:
        return int(self.indices.size)


def circular_convolve(x: npt.ArrayLike, y: npt.ArrayLike) -> ComplexVec:
    """Circular convolution ``x ⊛ y`` computed as F*(√n (Fx) ∘ (Fy)).

    Raises:
        DimensionError: If the lengths differ.
    """
    x = as_signal(x, name="x")
    y = as_signal(y, name="y")
    if x.size != y.size:
        raise DimensionError(f"cannot convolve lengths {x.size} and {y.size}")
    return idft(math.sqrt(x.size) * dft(x) * dft(y))


def subsample(x: npt.ArrayLike, pattern: SamplingPattern) -> ComplexVec:
    """Return S_Ω x, the entries of ``x`` at Ω in order."""
    x = as_signal(x, pattern.n)
    return x[pattern.indices]


@dataclass(frozen=True, eq=False)
class MeasOperator:
    """The lifted measurement operator A for (Φ, Ψ, Ω).

    Attributes:
        phi: Left dictionary Φ.
        psi: Right dictionary Ψ.
        pattern: Sampling set Ω.
    """
    phi: Dictionary
    psi: Dictionary
    pattern: SamplingPattern

    def __post_init__(self) -> None:
        if not self.phi.n == self.psi.n == self.pattern.n:
            raise DimensionError(
                f"dictionary sizes ({self.phi.n}, {self.psi.n}) and pattern length "
                f"{self.pattern.n} disagree"
            )

    @property
    def n(self) -> int:
        return self.pattern.n

    @property
    def m(self) -> int:
        return self.pattern.m

    @property
    def scale(self) -> float:
        """√(n/m)."""
        return math.sqrt(self.n / self.m)

    def forward(self, u: VecLike, v: VecLike) -> ComplexVec:
        """Return A(uvᵀ) without forming any n×n matrix."""
        fx = self.phi.apply_fourier(u)
        fy = self.psi.apply_fourier(v)
        return self.scale * idft(math.sqrt(self.n) * fx * fy)[self.pattern.indices]

    def forward_lifted(self, X: Union[npt.ArrayLike, Factored]) -> ComplexVec:
        """Return A(X) for a dense X or a factored ``(U, V)`` with X = UVᵀ.

        Dense inputs go through the anti-diagonal sums of ΦXΨᵀ and are capped
        at ``n <= ORACLE_CAP``; factored inputs of any rank r are the sum of r
        rank-one forwards.

        Raises:
            OracleCapError: For a dense X above the cap.
            DimensionError: For mismatched shapes.
        """
        if isinstance(X, tuple):
            U = np.asarray(X[0], dtype=np.complex128)
            V = np.asarray(X[1], dtype=np.complex128)
            if U.ndim == 1:
                U, V = U[:, None], V[:, None]
            if U.shape != V.shape or U.shape[0] != self.n:
                raise DimensionError(f"factor shapes {U.shape} and {V.shape} do not fit n={self.n}")
            out = np.zeros(self.m, dtype=np.complex128)
            for r in range(U.shape[1]):
                out += self.forward(U[:, r], V[:, r])
            return out

        mat = np.asarray(X, dtype=np.complex128)
        if mat.shape != (self.n, self.n):
            raise DimensionError(f"lifted input must be {self.n}x{self.n}, got {mat.shape}")
        if self.n > ORACLE_CAP:
            raise OracleCapError(f"dense lifted forward is capped at n={ORACLE_CAP}, got n={self.n}")
        Y = self.phi.matrix @ mat @ self.psi.matrix.T
        rows = np.arange(self.n)
        cols = (self.pattern.indices[:, None] - rows[None, :]) % self.n
        return self.scale * Y[rows[None, :], cols].sum(axis=1)

    def adjoint(self, b: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """Return A*(b) = Σ_k b_k M_k as a dense n×n matrix.

        Computed as √(n/m)·√n·(FΦ)* diag(Fβ) conj(FΨ), β being ``b``
        zero-filled on Ω.
        """
        b = as_signal(b, self.m, "b")
        beta = np.zeros(self.n, dtype=np.complex128)
        beta[self.pattern.indices] = b
        weights = self.scale * math.sqrt(self.n) * dft(beta)
        return (self.phi.fourier.conj().T * weights[None, :]) @ self.psi.fourier.conj()

    def restricted_right(self, v: VecLike) -> ConvolutionMap:
        """A_R(v): u ↦ A(uvᵀ)."""
        y = self.psi.apply(v)
        return ConvolutionMap(self.phi.fourier, ConvolutionMap.spectrum_of(y),
                              self.pattern.indices, self.scale)

    def restricted_left(self, u: VecLike) -> ConvolutionMap:
        """A_L(u): v ↦ A(uvᵀ)."""
        x = self.phi.apply(u)
        return ConvolutionMap(self.psi.fourier, ConvolutionMap.spectrum_of(x),
                              self.pattern.indices, self.scale)

    def explicit_matrices(self) -> npt.NDArray[np.complex128]:
        """Stack of the m dense matrices M_{ω_k}, in Ω order (test oracle).

        Returns:
            ndarray: Shape ``(m, n, n)``.

        Raises:
            OracleCapError: If ``n > ORACLE_CAP``.
        """
        if self.n > ORACLE_CAP:
            raise OracleCapError(f"explicit matrices are capped at n={ORACLE_CAP}, got n={self.n}")
        n = self.n
        F = dft(np.eye(n), axis=0)
        left = self.phi.matrix.conj().T @ F.conj().T
        right = F.conj() @ self.psi.matrix.conj()
        c = self.scale * math.sqrt(n)
        out = np.empty((self.m, n, n), dtype=np.complex128)
        for k, omega in enumerate(self.pattern.indices):
            out[k] = c * (left * F[:, omega][None, :]) @ right
        logger.debug("built %d explicit measurement matrices for n=%d", self.m, n)
        return out
