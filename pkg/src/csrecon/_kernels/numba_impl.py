"""Numba-compiled TV kernels (the default backend when numba is importable).

fastmath stays off: the loops must round exactly like the numpy backend so
results do not depend on which backend ran.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def tv_denoise_core(g: np.ndarray, lam: float, iters: int, tau: float) -> np.ndarray:
    h, w = g.shape
    p1 = np.zeros((h, w), dtype=np.float64)
    p2 = np.zeros((h, w), dtype=np.float64)
    work = np.empty((h, w), dtype=np.float64)
    gl = g / lam
    for _ in range(iters):
        for r in range(h):
            for c in range(w):
                d1 = p1[r, c] - (p1[r - 1, c] if r > 0 else 0.0)
                d2 = p2[r, c] - (p2[r, c - 1] if c > 0 else 0.0)
                work[r, c] = (d1 + d2) - gl[r, c]
        for r in range(h):
            for c in range(w):
                gx = work[r + 1, c] - work[r, c] if r < h - 1 else 0.0
                gy = work[r, c + 1] - work[r, c] if c < w - 1 else 0.0
                denom = 1.0 + tau * math.sqrt(gx * gx + gy * gy)
                p1[r, c] = (p1[r, c] + tau * gx) / denom
                p2[r, c] = (p2[r, c] + tau * gy) / denom
    out = np.empty((h, w), dtype=np.float64)
    for r in range(h):
        for c in range(w):
            d1 = p1[r, c] - (p1[r - 1, c] if r > 0 else 0.0)
            d2 = p2[r, c] - (p2[r, c - 1] if c > 0 else 0.0)
            out[r, c] = g[r, c] - lam * (d1 + d2)
    return out


@njit(cache=True)
def tv_seminorm(x: np.ndarray) -> float:
    h, w = x.shape
    acc = 0.0
    for r in range(h):
        for c in range(w):
            dv = x[r + 1, c] - x[r, c] if r < h - 1 else 0.0
            dh = x[r, c + 1] - x[r, c] if c < w - 1 else 0.0
            acc += math.sqrt(dv * dv + dh * dh)
    return acc
