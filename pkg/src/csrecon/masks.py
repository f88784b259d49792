"""Boolean frequency-plane masks from which measurement candidates are drawn.

The square band and the circle are evaluated exactly at integer cell
coordinates, with centers at n/2 (not floor(n/2)) as the defining
inequalities are written; bounds are never pre-rounded. The radial-line
pattern is a rasterized fan of diameters used as the conventional baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imaging import ImageGrid

__all__ = [
    "Mask",
    "circular_mask",
    "full_mask",
    "mask_stats",
    "mask_to_grid",
    "radial_mask",
    "square_mask",
]


@dataclass(frozen=True)
class Mask:
    """Boolean H x W grid plus the construction that produced it."""

    cells: np.ndarray
    shape_tag: str
    params: dict

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=bool)
        if cells.ndim != 2:
            raise ValueError(f"mask must be a 2D grid, got shape {cells.shape}")
        object.__setattr__(self, "cells", cells)

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def inside_count(self) -> int:
        return int(np.count_nonzero(self.cells))

    @property
    def descriptor(self) -> str:
        """Deterministic one-token description, e.g. ``circle(a=1.0;b=6.0)``.

        Comma-free so it can sit in a flat CSV field unquoted.
        """
        if not self.params:
            return self.shape_tag
        args = ";".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.shape_tag}({args})"


def square_mask(n1: int, n2: int, fraction: float = 0.1) -> Mask:
    """Centered square band: cell (r, c) is inside iff

        n1/2 - fraction*n1 <= r <= n1/2 + fraction*n1   and
        n2/2 - fraction*n2 <= c <= n2/2 + fraction*n2.
    """
    if not 0.0 <= fraction < 0.5:
        raise ValueError(f"fraction must lie in [0, 0.5), got {fraction}")
    r = np.arange(n1, dtype=np.float64)[:, np.newaxis]
    c = np.arange(n2, dtype=np.float64)[np.newaxis, :]
    rows_ok = (n1 / 2 - fraction * n1 <= r) & (r <= n1 / 2 + fraction * n1)
    cols_ok = (n2 / 2 - fraction * n2 <= c) & (c <= n2 / 2 + fraction * n2)
    return Mask(rows_ok & cols_ok, "square", {"fraction": float(fraction)})


def circular_mask(n1: int, n2: int, a: float, b: float) -> Mask:
    """Disk: cell (r, c) is inside iff

        (r - a*n1/2)^2 + (c - a*n2/2)^2 <= (min(n1, n2)/b)^2.

    ``a`` places the center (1 -> grid middle, 0 -> origin corner); ``b``
    divides min(n1, n2) to set the radius.
    """
    if not b > 0:
        raise ValueError(f"radius divisor b must be positive, got {b}")
    if a < 0:
        raise ValueError(f"center scale a must be nonnegative, got {a}")
    r = np.arange(n1, dtype=np.float64)[:, np.newaxis]
    c = np.arange(n2, dtype=np.float64)[np.newaxis, :]
    rad_sq = (min(n1, n2) / b) ** 2
    cells = (r - a * n1 / 2) ** 2 + (c - a * n2 / 2) ** 2 <= rad_sq
    return Mask(cells, "circle", {"a": float(a), "b": float(b)})


def radial_mask(n1: int, n2: int, lines: int) -> Mask:
    """Fan of ``lines`` diameters through the grid center at angles k*pi/lines.

    Each diameter is rasterized by stepping the radius in increments of 0.5
    cells out to the inscribed-disk radius min(n1, n2)/2 and marking the
    nearest cell (round-half-up); points landing outside the grid are
    skipped. Deterministic.
    """
    if lines < 1:
        raise ValueError(f"line count must be at least 1, got {lines}")
    cells = np.zeros((n1, n2), dtype=bool)
    center_r = (n1 - 1) / 2
    center_c = (n2 - 1) / 2
    n_steps = min(n1, n2)  # radius min(n1,n2)/2 in half-cell steps
    for k in range(lines):
        theta = k * math.pi / lines
        dr = math.sin(theta)
        dc = math.cos(theta)
        for step in range(n_steps + 1):
            t = step * 0.5
            for sign in (1.0, -1.0):
                r = math.floor(center_r + sign * t * dr + 0.5)
                c = math.floor(center_c + sign * t * dc + 0.5)
                if 0 <= r < n1 and 0 <= c < n2:
                    cells[r, c] = True
    return Mask(cells, "radial", {"lines": int(lines)})


def full_mask(n1: int, n2: int) -> Mask:
    """Every cell marked; realizes full-grid sampling plans."""
    return Mask(np.ones((n1, n2), dtype=bool), "full", {})


def mask_stats(mask: Mask) -> tuple[int, int, float]:
    """(inside_count, outside_count, coverage_fraction) for a mask."""
    total = mask.height * mask.width
    inside = mask.inside_count
    return inside, total - inside, inside / total


def mask_to_grid(mask: Mask) -> ImageGrid:
    """Render the mask as a 0/1 image, for PGM export and visual checks."""
    return ImageGrid(mask.cells.astype(np.float64))
