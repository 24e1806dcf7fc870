"""Core interfaces for linear measurement maps.

The recovery and solver layers never look inside an operator; they talk to
it through :class:`LinearMap`, which exposes the forward action, its adjoint
and a column extractor used by least squares on a support.

Example:
    ```python
    class Scaling(LinearMap):
        def __init__(self, n: int, c: float):
            super().__init__(out_dim=n, in_dim=n)
            self.c = c

        def apply(self, w: ComplexVec) -> ComplexVec:
            return self.c * w

        def apply_adjoint(self, b: ComplexVec) -> ComplexVec:
            return np.conj(self.c) * b
    ```

Typical usage example:
    ```python
    A = op.restricted_right(v)
    result = htp(A, b, s=4)
    ```
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np
import numpy.typing as npt

from spf_deconv.errors import DimensionError
from spf_deconv.model.signals import ComplexVec, as_signal


class LinearMap(ABC):
    """Abstract linear map C^in_dim → C^out_dim.

    Subclasses implement :meth:`apply` and :meth:`apply_adjoint`; the pair
    must satisfy ``⟨apply(w), b⟩ = ⟨w, apply_adjoint(b)⟩``.

    Attributes:
        out_dim: Length of ``apply`` outputs.
        in_dim: Length of ``apply`` inputs.
    """

    def __init__(self, out_dim: int, in_dim: int):
        if out_dim < 1 or in_dim < 1:
            raise DimensionError(f"map dimensions must be positive, got {out_dim}x{in_dim}")
        self.out_dim = out_dim
        self.in_dim = in_dim

    @abstractmethod
    def apply(self, w: ComplexVec) -> ComplexVec:
        """Return the image of ``w``.

        Args:
            w: Input of length ``in_dim``.

        Returns:
            ComplexVec: Output of length ``out_dim``.
        """
        pass

    @abstractmethod
    def apply_adjoint(self, b: ComplexVec) -> ComplexVec:
        """Return the adjoint image of ``b``.

        Args:
            b: Input of length ``out_dim``.

        Returns:
            ComplexVec: Output of length ``in_dim``.
        """
        pass

    def columns(self, J: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """Return the ``out_dim × |J|`` submatrix of columns indexed by ``J``.

        The default applies the map to unit vectors; subclasses with direct
        access to their columns override it.
        """
        idx = np.asarray(J, dtype=np.int64).reshape(-1)
        out = np.empty((self.out_dim, idx.size), dtype=np.complex128)
        for col, j in enumerate(idx):
            e = np.zeros(self.in_dim, dtype=np.complex128)
            e[j] = 1.0
            out[:, col] = self.apply(e)
        return out

    def check_input(self, w: npt.ArrayLike) -> ComplexVec:
        return as_signal(w, self.in_dim, "map input")

    def check_output(self, b: npt.ArrayLike) -> ComplexVec:
        return as_signal(b, self.out_dim, "map output")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.out_dim}x{self.in_dim})"
