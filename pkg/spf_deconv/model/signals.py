"""Signal types and the spectral-flatness functional.

This module holds the small value types every other part of the package
passes around:

- ``ComplexVec``: a dense length-n complex signal, kept as a plain numpy array.
- :class:`SparseVec`: an s-sparse coefficient vector (support + values).
- :class:`FlatnessLevel`: the μ of the flatness cone C_μ, possibly inactive.
- :class:`ModelParams`: the (n, m, s1, s2, μ1, μ2) tuple of a problem instance.

It also implements the unitary DFT used throughout (forward kernel
``exp(-2πi jk/n)/√n``, zero-based) and the spectral flatness
``sf(x) = n‖Fx‖∞² / ‖Fx‖₂²``.

Example:
    ```python
    x = np.zeros(16); x[0] = 1.0
    spectral_flatness(x)                          # 1.0, a spike is perfectly flat
    in_flatness_cone(x, FlatnessLevel(2.0))       # True
    u = SparseVec.from_dense(np.array([0, 3, 0, -1]), s=2)
    u.support                                     # array([1, 3])
    ```
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import numpy.typing as npt
import scipy.fft
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from spf_deconv.errors import DimensionError, DomainError, ZeroSignalError

ComplexVec = npt.NDArray[np.complex128]
IndexSet = npt.NDArray[np.int64]


def as_signal(x: npt.ArrayLike, n: Optional[int] = None, name: str = "x") -> ComplexVec:
    """Coerce ``x`` to a finite 1-D complex128 array.

    Args:
        x: Anything numpy can turn into a vector.
        n: Expected length, checked when given.
        name: Name used in error messages.

    Returns:
        ComplexVec: A complex128 view or copy of ``x``.

    Raises:
        DimensionError: If ``x`` is not 1-D or has the wrong length.
        DomainError: If ``x`` has NaN or infinite entries.
    """
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"{name} must be a non-empty vector, got shape {arr.shape}")
    if n is not None and arr.size != n:
        raise DimensionError(f"{name} has length {arr.size}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite entries")
    return arr


def dft(x: npt.ArrayLike, axis: int = 0) -> npt.NDArray[np.complex128]:
    """Unitary DFT along ``axis``."""
    return scipy.fft.fft(np.asarray(x, dtype=np.complex128), axis=axis, norm="ortho")


def idft(x: npt.ArrayLike, axis: int = 0) -> npt.NDArray[np.complex128]:
    """Inverse of :func:`dft` (its adjoint, since the transform is unitary)."""
    return scipy.fft.ifft(np.asarray(x, dtype=np.complex128), axis=axis, norm="ortho")


@dataclass(frozen=True, eq=False)
class SparseVec:
    """Sparse coefficient vector in Γ_s.

    Attributes:
        n: Ambient dimension.
        support: Strictly increasing indices of the stored entries.
        values: Nonzero complex values, one per support index.
        s: Sparsity budget, ``len(support) <= s <= n``.

    Example:
        ```python
        u = SparseVec(n=8, support=np.array([2, 5]), values=np.array([1.0, -2j]), s=3)
        u.dense()       # length-8 array with entries at 2 and 5
        u.nnz           # 2
        ```
    """
    n: int
    support: IndexSet
    values: ComplexVec
    s: int

    def __post_init__(self) -> None:
        support = np.array(self.support, dtype=np.int64).reshape(-1)
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if self.n < 1:
            raise DimensionError(f"ambient dimension must be positive, got {self.n}")
        if not 1 <= self.s <= self.n:
            raise DimensionError(f"sparsity budget s={self.s} outside [1, {self.n}]")
        if support.size != values.size:
            raise DimensionError("support and values differ in length")
        if support.size > self.s:
            raise DimensionError(f"{support.size} stored entries exceed the budget s={self.s}")
        if support.size and (support[0] < 0 or support[-1] >= self.n):
            raise DimensionError("support index out of range")
        if np.any(np.diff(support) <= 0):
            raise DimensionError("support must be strictly increasing")
        if np.any(values == 0):
            raise DomainError("stored values must be nonzero")
        if not np.all(np.isfinite(values)):
            raise DomainError("stored values must be finite")
        support.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_dense(cls, x: npt.ArrayLike, s: Optional[int] = None) -> SparseVec:
        """Build a sparse vector from the nonzero entries of ``x``.

        Args:
            x: Dense vector.
            s: Sparsity budget; defaults to the number of nonzeros (at least 1).

        Raises:
            DimensionError: If ``x`` has more than ``s`` nonzero entries.
        """
        arr = as_signal(x)
        support = np.flatnonzero(arr)
        budget = max(1, support.size) if s is None else s
        return cls(n=arr.size, support=support, values=arr[support], s=budget)

    @classmethod
    def zeros(cls, n: int, s: int = 1) -> SparseVec:
        """The zero vector of length ``n`` with budget ``s``."""
        return cls(n=n, support=np.empty(0, dtype=np.int64),
                   values=np.empty(0, dtype=np.complex128), s=s)

    @property
    def nnz(self) -> int:
        return int(self.support.size)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def dense(self) -> ComplexVec:
        """Return the length-n dense vector."""
        out = np.zeros(self.n, dtype=np.complex128)
        out[self.support] = self.values
        return out

    def scaled(self, alpha: complex) -> SparseVec:
        """Return ``alpha * self``; scaling by zero gives the zero vector."""
        if alpha == 0:
            return SparseVec.zeros(self.n, self.s)
        return SparseVec(n=self.n, support=self.support, values=alpha * self.values, s=self.s)

    def normalized(self) -> SparseVec:
        """Return the unit-norm copy.

        Raises:
            ZeroSignalError: For the zero vector.
        """
        norm = self.norm
        if norm == 0:
            raise ZeroSignalError("cannot normalize the zero vector")
        return self.scaled(1.0 / norm)

    def peakedness(self) -> float:
        """Return ``‖u‖∞ / ‖u‖₂`` (0 for the zero vector)."""
        norm = self.norm
        return float(np.max(np.abs(self.values)) / norm) if norm else 0.0


def densify(u: SparseVec) -> ComplexVec:
    """Dense form of ``u``."""
    return u.dense()


def sparsify(x: npt.ArrayLike, s: Optional[int] = None) -> SparseVec:
    """Sparse form of ``x``; exact inverse of :func:`densify`."""
    return SparseVec.from_dense(x, s)


@dataclass(frozen=True)
class FlatnessLevel:
    """Spectral flatness level μ of the cone C_μ.

    ``mu=None`` is the inactive level, equivalent to μ = n: the constraint
    never binds.

    Example:
        ```python
        FlatnessLevel(4.0).resolve(256)        # 4.0
        FlatnessLevel.inactive().resolve(256)  # 256.0
        ```
    """
    mu: Optional[float] = None

    def __post_init__(self) -> None:
        if self.mu is not None and not (np.isfinite(self.mu) and self.mu >= 1.0):
            raise DomainError(f"flatness level must be >= 1, got {self.mu}")

    @classmethod
    def inactive(cls) -> FlatnessLevel:
        return cls(None)

    @classmethod
    def coerce(cls, value: Union[FlatnessLevel, float, None]) -> FlatnessLevel:
        """Accept a level, a bare number or ``None`` (inactive)."""
        if isinstance(value, FlatnessLevel):
            return value
        return cls(None if value is None else float(value))

    @property
    def is_active(self) -> bool:
        return self.mu is not None

    def resolve(self, n: int) -> float:
        """Numeric μ for dimension ``n``; levels above n are clipped to n."""
        if self.mu is None:
            return float(n)
        return float(min(self.mu, n))

    def binds(self, n: int) -> bool:
        """Whether the constraint can exclude anything in dimension ``n``."""
        return self.mu is not None and self.mu < n


FlatnessLike = Union[FlatnessLevel, float, None]


def spectral_flatness(x: npt.ArrayLike) -> float:
    """Spectral flatness ``n‖Fx‖∞² / ‖Fx‖₂²`` with the unitary DFT.

    Args:
        x: Nonzero signal.

    Returns:
        float: A value in ``[1, n]``.

    Raises:
        ZeroSignalError: For the zero signal.
    """
    arr = as_signal(x)
    power = np.abs(dft(arr)) ** 2
    total = float(power.sum())
    if total == 0.0:
        raise ZeroSignalError("undefined flatness of zero signal")
    return arr.size * float(power.max()) / total


def in_flatness_cone(x: npt.ArrayLike, mu: FlatnessLike, rtol: float = 1e-12) -> bool:
    """Membership test for C_μ.

    The zero vector (cone apex) is a member. ``rtol`` absorbs the rounding of
    the FFT so that μ = n accepts every signal.
    """
    arr = as_signal(x)
    level = FlatnessLevel.coerce(mu)
    if not level.is_active or not np.any(arr):
        return True
    return spectral_flatness(arr) <= level.resolve(arr.size) * (1.0 + rtol)


class ModelParams(BaseModel):
    """Parameters (n, m, s1, s2, μ1, μ2) of the signal model M_{s1,s2;μ1,μ2}.

    ``mu1``/``mu2`` of ``None`` mean the flatness constraint is inactive.

    Example:
        ```python
        params = ModelParams(n=256, m=256, s1=4, s2=4, mu1=28, mu2=28)
        params.level1.resolve(params.n)   # 28.0
        ```
    """
    model_config = ConfigDict(frozen=True)

    n: PositiveInt
    m: PositiveInt
    s1: PositiveInt
    s2: PositiveInt
    mu1: Optional[float] = Field(default=None, ge=1.0)
    mu2: Optional[float] = Field(default=None, ge=1.0)

    @model_validator(mode="after")
    def _check_bounds(self) -> ModelParams:
        if self.s1 > self.n or self.s2 > self.n:
            raise ValueError(f"sparsity levels ({self.s1}, {self.s2}) exceed n={self.n}")
        if self.m > self.n:
            raise ValueError(f"m={self.m} exceeds n={self.n}")
        for mu in (self.mu1, self.mu2):
            if mu is not None and mu > self.n:
                raise ValueError(f"flatness level {mu} exceeds n={self.n}")
        return self

    @property
    def level1(self) -> FlatnessLevel:
        return FlatnessLevel(self.mu1)

    @property
    def level2(self) -> FlatnessLevel:
        return FlatnessLevel(self.mu2)
