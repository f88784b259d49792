"""Pure-numpy TV kernels (the fallback backend).

Operation order per element is kept identical to the numba backend so the
two paths produce bit-equal dual fields (reductions in tv_seminorm may
differ in the last ulp because numpy sums pairwise).
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _divergence(p1, p2):
    d1 = p1.copy()
    d1[1:, :] -= p1[:-1, :]
    d2 = p2.copy()
    d2[:, 1:] -= p2[:, :-1]
    return d1 + d2


def tv_denoise_core(g: np.ndarray, lam: float, iters: int, tau: float) -> np.ndarray:
    """Dual-projection TV denoising: run exactly ``iters`` dual updates.

    Approximates argmin_u 0.5*||u - g||^2 + lam*TV(u); the dual field starts
    at zero and tau must be <= 0.125 for guaranteed convergence.
    """
    h, w = g.shape
    p1 = np.zeros((h, w), dtype=np.float64)
    p2 = np.zeros((h, w), dtype=np.float64)
    gl = g / lam
    for _ in range(iters):
        work = _divergence(p1, p2) - gl
        gx = np.zeros((h, w), dtype=np.float64)
        gy = np.zeros((h, w), dtype=np.float64)
        gx[:-1, :] = work[1:, :] - work[:-1, :]
        gy[:, :-1] = work[:, 1:] - work[:, :-1]
        denom = 1.0 + tau * np.sqrt(gx * gx + gy * gy)
        p1 = (p1 + tau * gx) / denom
        p2 = (p2 + tau * gy) / denom
    return g - lam * _divergence(p1, p2)


def tv_seminorm(x: np.ndarray) -> float:
    """Isotropic TV with forward differences and Neumann boundaries."""
    h, w = x.shape
    dv = np.zeros((h, w), dtype=np.float64)
    dh = np.zeros((h, w), dtype=np.float64)
    dv[:-1, :] = x[1:, :] - x[:-1, :]
    dh[:, :-1] = x[:, 1:] - x[:, :-1]
    return float(np.sum(np.sqrt(dv * dv + dh * dh)))
