"""Random dictionaries and sparse coefficient generators.

Dictionaries Φ, Ψ are square Gaussian matrices with entry variance 1/n:
complex CN(0, 1/n) (independent real and imaginary parts of variance 1/(2n))
or real N(0, 1/n). Coefficient vectors are s-sparse with a uniformly random
support and Gaussian nonzeros, optionally made heavily peaked.

Example:
    ```python
    phi = gen_dictionary(256, "real", seed=7)
    u = gen_sparse_signal(256, 5, Peaked(0.78), seed=1)
    u.peakedness() >= 0.78   # True
    x = phi.apply(u)         # Φu
    ```
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Optional, Union

import numpy as np
import numpy.typing as npt
import scipy.linalg

from spf_deconv.errors import DimensionError, DomainError, SingularDictionaryError
from spf_deconv.model.rng import SeedLike, make_rng
from spf_deconv.model.signals import ComplexVec, SparseVec, as_signal, dft

Field = Literal["complex", "real"]

# Above this condition number Φ⁻¹ is not trusted.
SINGULAR_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class Dictionary:
    """Square synthesis dictionary.

    Attributes:
        matrix: The n×n matrix (stored complex128 even in real mode).
        field: ``"complex"`` or ``"real"``.
        seed: Seed it was generated from, if any.
    """
    matrix: npt.NDArray[np.complex128]
    field: Field = "complex"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
            raise DimensionError(f"dictionary must be square, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise DomainError("dictionary has non-finite entries")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(cls, n: int) -> Dictionary:
        return cls(np.eye(n), field="real")

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    @cached_property
    def fourier(self) -> npt.NDArray[np.complex128]:
        """FΦ, the unitary DFT of every column."""
        image = dft(self.matrix, axis=0)
        image.flags.writeable = False
        return image

    @cached_property
    def condition_number(self) -> float:
        return float(np.linalg.cond(self.matrix))

    def apply(self, u: Union[SparseVec, npt.ArrayLike]) -> ComplexVec:
        """Return Φu, touching only the support columns for sparse ``u``."""
        if isinstance(u, SparseVec):
            if u.n != self.n:
                raise DimensionError(f"coefficient length {u.n} != dictionary size {self.n}")
            return self.matrix[:, u.support] @ u.values
        return self.matrix @ as_signal(u, self.n, "u")

    def apply_fourier(self, u: Union[SparseVec, npt.ArrayLike]) -> ComplexVec:
        """Return FΦu from the cached Fourier image."""
        if isinstance(u, SparseVec):
            if u.n != self.n:
                raise DimensionError(f"coefficient length {u.n} != dictionary size {self.n}")
            return self.fourier[:, u.support] @ u.values
        return self.fourier @ as_signal(u, self.n, "u")

    def solve(self, x: npt.ArrayLike) -> ComplexVec:
        """Return Φ⁻¹x.

        Raises:
            SingularDictionaryError: If Φ is numerically singular.
        """
        self.ensure_invertible()
        return scipy.linalg.solve(self.matrix, as_signal(x, self.n))

    def ensure_invertible(self) -> None:
        if not self.condition_number < SINGULAR_CONDITION:
            raise SingularDictionaryError(
                f"dictionary condition number {self.condition_number:.3g} exceeds {SINGULAR_CONDITION:.0e}"
            )


def gen_dictionary(n: int, field: Field = "complex", seed: SeedLike = None) -> Dictionary:
    """Draw an n×n Gaussian dictionary with entry variance 1/n.

    Args:
        n: Dimension.
        field: ``"complex"`` for CN(0, 1/n) entries, ``"real"`` for N(0, 1/n).
        seed: Seed or Generator; identical integer seeds give identical matrices.

    Returns:
        Dictionary: The generated dictionary.
    """
    if n < 1:
        raise DimensionError(f"n must be positive, got {n}")
    rng = make_rng(seed)
    if field == "complex":
        scale = math.sqrt(1.0 / (2 * n))
        matrix = scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    elif field == "real":
        matrix = math.sqrt(1.0 / n) * rng.standard_normal((n, n)) + 0j
    else:
        raise DomainError(f"unknown field {field!r}")
    return Dictionary(matrix, field=field, seed=seed if isinstance(seed, int) else None)


@dataclass(frozen=True)
class Peaked:
    """Heavily peaked distribution: Gaussian nonzeros, then one entry is
    rescaled so that ``‖u‖∞ >= c‖u‖₂``."""
    c: float

    def __post_init__(self) -> None:
        if not 0.0 < self.c <= 1.0:
            raise DomainError(f"peakedness must lie in (0, 1], got {self.c}")


Distribution = Union[Literal["gauss"], Peaked]


def gen_sparse_signal(
        n: int,
        s: int,
        dist: Distribution = "gauss",
        seed: SeedLike = None,
        field: Field = "complex",
) -> SparseVec:
    """Draw an s-sparse vector with uniformly random support.

    Args:
        n: Ambient dimension.
        s: Number of nonzeros.
        dist: ``"gauss"`` or :class:`Peaked`.
        seed: Seed or Generator.
        field: ``"complex"`` draws CN(0, 1) nonzeros, ``"real"`` N(0, 1); the
            default matches :func:`gen_dictionary`.

    Returns:
        SparseVec: Exactly s-sparse vector (with probability one).

    Raises:
        DimensionError: If ``s`` is outside ``[1, n]``.
    """
    if not 1 <= s <= n:
        raise DimensionError(f"sparsity s={s} outside [1, {n}]")
    rng = make_rng(seed)
    support = np.sort(rng.choice(n, size=s, replace=False))
    if field == "complex":
        values = (rng.standard_normal(s) + 1j * rng.standard_normal(s)) / math.sqrt(2.0)
    else:
        values = rng.standard_normal(s) + 0j
    if isinstance(dist, Peaked):
        values = _make_peaked(values, dist.c, int(rng.integers(s)))
    elif dist != "gauss":
        raise DomainError(f"unknown distribution {dist!r}")
    return SparseVec(n=n, support=support, values=values, s=s)


def _make_peaked(values: ComplexVec, c: float, designated: int) -> ComplexVec:
    # |u_d|² >= c²(|u_d|² + r) with r the energy of the other entries.
    out = values.copy()
    rest = float(np.sum(np.abs(np.delete(out, designated)) ** 2))
    if c >= 1.0:
        if rest > 0:
            raise DomainError("peakedness 1 needs a 1-sparse vector")
        return out
    target = math.sqrt(c * c * rest / (1.0 - c * c)) * (1.0 + 1e-12)
    magnitude = abs(out[designated])
    if magnitude < target:
        phase = out[designated] / magnitude if magnitude > 0 else 1.0
        out[designated] = phase * target
    return out
