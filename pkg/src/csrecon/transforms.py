"""Unitary 2D spectral transforms: centered DFT and orthonormal DCT-II.

Both directions carry an overall 1/sqrt(H*W) scaling so the transforms are
unitary (Parseval holds exactly up to rounding). The DFT is stored centered:
the DC coefficient sits at index (H//2, W//2). The DCT keeps DC at (0, 0).
Arbitrary grid sizes are supported (pocketfft handles mixed-radix and
Bluestein lengths).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .imaging import ImageGrid

__all__ = [
    "DCT",
    "DFT",
    "SpectrumGrid",
    "dct2_ortho",
    "dft2_centered",
    "idct2_ortho",
    "idft2_centered",
]

DFT = "dft"
DCT = "dct"


@dataclass(frozen=True)
class SpectrumGrid:
    """Transform-domain H x W coefficient grid.

    ``coefficients`` is complex128 for the DFT and float64 for the DCT;
    ``domain`` is the tag of the transform that produced it.
    """

    coefficients: np.ndarray
    domain: str

    def __post_init__(self):
        if self.domain not in (DFT, DCT):
            raise ValueError(f"unknown transform domain {self.domain!r}")
        want = np.complex128 if self.domain == DFT else np.float64
        coeffs = np.asarray(self.coefficients, dtype=want)
        if coeffs.ndim != 2:
            raise ValueError(f"spectrum must be a 2D grid, got shape {coeffs.shape}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def height(self) -> int:
        return self.coefficients.shape[0]

    @property
    def width(self) -> int:
        return self.coefficients.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.coefficients.shape


def dft2_centered(grid: ImageGrid) -> SpectrumGrid:
    """Unitary 2D DFT with the zero-frequency coefficient shifted to the center."""
    coeffs = np.fft.fftshift(np.fft.fft2(grid.pixels, norm="ortho"))
    return SpectrumGrid(coeffs, DFT)


def idft2_centered(spec: SpectrumGrid) -> tuple[ImageGrid, float]:
    """Invert dft2_centered, returning the real part of the synthesis.

    The second element is the max-abs of the discarded imaginary component,
    which is nonzero whenever the spectrum lost conjugate symmetry (for
    example after zero-filled sub-sampling).
    """
    if spec.domain != DFT:
        raise ValueError(f"expected a {DFT!r} spectrum, got {spec.domain!r}")
    z = np.fft.ifft2(np.fft.ifftshift(spec.coefficients), norm="ortho")
    imag_residual = float(np.max(np.abs(z.imag)))
    return ImageGrid(np.ascontiguousarray(z.real)), imag_residual


def dct2_ortho(grid: ImageGrid) -> SpectrumGrid:
    """Orthonormal 2D DCT-II; DC lands at index (0, 0)."""
    coeffs = scipy.fft.dctn(grid.pixels, type=2, norm="ortho")
    return SpectrumGrid(coeffs, DCT)


def idct2_ortho(spec: SpectrumGrid) -> ImageGrid:
    """Exact inverse of dct2_ortho."""
    if spec.domain != DCT:
        raise ValueError(f"expected a {DCT!r} spectrum, got {spec.domain!r}")
    return ImageGrid(scipy.fft.idctn(spec.coefficients, type=2, norm="ortho"))
