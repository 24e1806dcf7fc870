"""Concrete :class:`LinearMap` implementations.

``DenseMap`` wraps an explicit matrix (a dictionary Φ, an identity, or a
random sensing matrix in tests). ``ConvolutionMap`` is the FFT form of the
restricted maps A_R(v) and A_L(u): one factor of the rank-one argument is
frozen into a spectrum, the other stays free.
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt

from spf_deconv.errors import DimensionError
from spf_deconv.model.signals import ComplexVec, dft, idft
from spf_deconv.operator.interfaces import LinearMap


class DenseMap(LinearMap):
    """Linear map given by an explicit ``out_dim × in_dim`` matrix."""

    def __init__(self, matrix: npt.ArrayLike):
        mat = np.array(matrix, dtype=np.complex128)
        if mat.ndim != 2:
            raise DimensionError(f"matrix must be 2-D, got shape {mat.shape}")
        super().__init__(out_dim=mat.shape[0], in_dim=mat.shape[1])
        mat.flags.writeable = False
        self.matrix = mat

    @classmethod
    def identity(cls, n: int) -> DenseMap:
        return cls(np.eye(n))

    def apply(self, w: ComplexVec) -> ComplexVec:
        return self.matrix @ self.check_input(w)

    def apply_adjoint(self, b: ComplexVec) -> ComplexVec:
        return self.matrix.conj().T @ self.check_output(b)

    def columns(self, J: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return self.matrix[:, np.asarray(J, dtype=np.int64).reshape(-1)]


class ConvolutionMap(LinearMap):
    """w ↦ scale · S_Ω F*( h ∘ (G w) ).

    Args:
        fourier: G, the n×n Fourier image (FΦ or FΨ) of the free factor's
            dictionary.
        spectrum: h, √n times the DFT of the frozen factor's signal.
        indices: Sampling set Ω.
        scale: Output scale √(n/m).
    """

    def __init__(
            self,
            fourier: npt.NDArray[np.complex128],
            spectrum: ComplexVec,
            indices: npt.NDArray[np.int64],
            scale: float,
    ):
        n = fourier.shape[0]
        if fourier.shape != (n, n) or spectrum.shape != (n,):
            raise DimensionError("fourier image and spectrum sizes disagree")
        super().__init__(out_dim=int(indices.size), in_dim=n)
        self.fourier = fourier
        self.spectrum = spectrum
        self.indices = indices
        self.scale = scale

    def apply(self, w: ComplexVec) -> ComplexVec:
        w = self.check_input(w)
        return self.scale * idft(self.spectrum * (self.fourier @ w))[self.indices]

    def apply_adjoint(self, b: ComplexVec) -> ComplexVec:
        b = self.check_output(b)
        filled = np.zeros(self.in_dim, dtype=np.complex128)
        filled[self.indices] = b
        weighted = np.conj(self.spectrum) * dft(filled)
        return self.scale * (self.fourier.conj().T @ weighted)

    def columns(self, J: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        idx = np.asarray(J, dtype=np.int64).reshape(-1)
        block = self.spectrum[:, None] * self.fourier[:, idx]
        return self.scale * idft(block, axis=0)[self.indices, :]

    @staticmethod
    def spectrum_of(x: ComplexVec) -> ComplexVec:
        """√n·Fx, the multiplier that turns F-domain products into ⊛."""
        return math.sqrt(x.size) * dft(x)
