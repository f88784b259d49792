"""Reconstruction quality metrics: MSE and PSNR."""

from __future__ import annotations

import math

import numpy as np

from .imaging import ImageGrid

__all__ = ["mse", "psnr"]


def mse(reference: ImageGrid, estimate: ImageGrid) -> float:
    """Mean squared sample difference."""
    if reference.shape != estimate.shape:
        raise ValueError(
            f"shape mismatch: reference {reference.shape} vs estimate {estimate.shape}"
        )
    diff = reference.pixels - estimate.pixels
    return float(np.mean(diff * diff))


def psnr(reference: ImageGrid, estimate: ImageGrid) -> float:
    """10*log10(peak^2 / mse) in dB, using the reference's declared peak.

    Returns +inf when the grids match exactly (mse = 0).
    """
    err = mse(reference, estimate)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(reference.peak * reference.peak / err)
