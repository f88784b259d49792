"""Seeded random coefficient selection and the sampling operator K.

A SamplingPlan is the operator in index form: transform the image, then
gather coefficients at the plan's cells. Its adjoint scatters measurements
back into an otherwise-zero spectrum, inverse-transforms, and keeps the real
part. Selection uses a Philox counter-based generator so plans are
bit-reproducible across platforms for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imaging import ImageGrid
from .masks import Mask
from .transforms import (
    DCT,
    DFT,
    SpectrumGrid,
    dct2_ortho,
    dft2_centered,
    idct2_ortho,
    idft2_centered,
)

__all__ = [
    "MeasurementVector",
    "SamplingPlan",
    "adjoint",
    "draw_plan",
    "forward",
    "load_plan",
    "plan_from_text",
    "plan_to_text",
    "save_plan",
    "zero_fill_recon",
]


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SamplingPlan:
    """Ordered coefficient selection plus the inputs that produced it.

    ``rows``/``cols`` hold the selected cell coordinates sorted in row-major
    order (unique by construction).
    """

    domain: str
    height: int
    width: int
    rows: np.ndarray
    cols: np.ndarray
    seed: int
    pct_inside: float
    pct_outside: float
    mask_descriptor: str = ""

    def __post_init__(self):
        if self.domain not in (DFT, DCT):
            raise ValueError(f"unknown transform domain {self.domain!r}")
        rows = np.asarray(self.rows, dtype=np.int64)
        cols = np.asarray(self.cols, dtype=np.int64)
        if rows.shape != cols.shape or rows.ndim != 1:
            raise ValueError("rows and cols must be 1D arrays of equal length")
        flat = rows * self.width + cols
        if len(flat) and not np.all(np.diff(flat) > 0):
            raise ValueError("plan indices must be unique and sorted row-major")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def n_measurements(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class MeasurementVector:
    """Gathered coefficients, one per plan index, in plan order."""

    values: np.ndarray
    plan: SamplingPlan

    def __post_init__(self):
        want = np.complex128 if self.plan.domain == DFT else np.float64
        values = np.asarray(self.values, dtype=want)
        if values.shape != (len(self.plan),):
            raise ValueError(
                f"expected {len(self.plan)} measurement values, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


def draw_plan(
    mask: Mask,
    domain: str,
    pct_inside: float,
    pct_outside: float,
    seed: int,
) -> SamplingPlan:
    """Select cells uniformly at random without replacement.

    round(pct_inside/100 * inside_count) cells come from the mask interior
    and round(pct_outside/100 * outside_count) from its complement, both
    with round-half-up. The candidate lists are enumerated row-major and
    shuffled with a Philox generator keyed by ``seed``; identical inputs
    give identical plans on every platform.
    """
    if not 0.0 <= pct_inside <= 100.0:
        raise ValueError(f"pct_inside must lie in [0, 100], got {pct_inside}")
    if not 0.0 <= pct_outside <= 100.0:
        raise ValueError(f"pct_outside must lie in [0, 100], got {pct_outside}")
    flat = mask.cells.ravel()
    inside = np.flatnonzero(flat)
    outside = np.flatnonzero(~flat)
    k_inside = _round_half_up(pct_inside / 100.0 * len(inside))
    k_outside = _round_half_up(pct_outside / 100.0 * len(outside))
    if k_inside + k_outside == 0:
        raise ValueError("empty sampling plan: zero cells selected inside and outside the mask")

    rng = np.random.Generator(np.random.Philox(seed))
    chosen = np.concatenate(
        [rng.permutation(inside)[:k_inside], rng.permutation(outside)[:k_outside]]
    )
    chosen.sort()
    rows, cols = np.divmod(chosen, mask.width)
    return SamplingPlan(
        domain=domain,
        height=mask.height,
        width=mask.width,
        rows=rows,
        cols=cols,
        seed=int(seed),
        pct_inside=float(pct_inside),
        pct_outside=float(pct_outside),
        mask_descriptor=mask.descriptor,
    )


def _transform(image: ImageGrid, domain: str) -> SpectrumGrid:
    return dft2_centered(image) if domain == DFT else dct2_ortho(image)


def forward(image: ImageGrid, plan: SamplingPlan) -> MeasurementVector:
    """Apply the sampling operator: transform, then gather at plan indices."""
    if image.shape != (plan.height, plan.width):
        raise ValueError(
            f"image shape {image.shape} does not match plan grid "
            f"({plan.height}, {plan.width})"
        )
    spectrum = _transform(image, plan.domain)
    return MeasurementVector(spectrum.coefficients[plan.rows, plan.cols], plan)


def adjoint(meas: MeasurementVector) -> ImageGrid:
    """Apply the adjoint: scatter into a zero spectrum, inverse-transform, take Re.

    For unitary transforms this is also the zero-filled reconstruction.
    """
    plan = meas.plan
    if plan.domain == DFT:
        spec = np.zeros((plan.height, plan.width), dtype=np.complex128)
        spec[plan.rows, plan.cols] = meas.values
        image, _ = idft2_centered(SpectrumGrid(spec, DFT))
        return image
    spec = np.zeros((plan.height, plan.width), dtype=np.float64)
    spec[plan.rows, plan.cols] = meas.values
    return idct2_ortho(SpectrumGrid(spec, DCT))


def zero_fill_recon(meas: MeasurementVector) -> ImageGrid:
    """The standard CS baseline: the adjoint applied directly to the data."""
    return adjoint(meas)


def plan_to_text(plan: SamplingPlan) -> str:
    """Serialize to the versioned text format (header line, then sorted pairs)."""
    lines = [
        f"csplan v1 {plan.domain} {plan.height} {plan.width} "
        f"{plan.seed} {plan.pct_inside!r} {plan.pct_outside!r}"
    ]
    lines.extend(f"{r} {c}" for r, c in zip(plan.rows, plan.cols))
    return "\n".join(lines) + "\n"


def plan_from_text(text: str) -> SamplingPlan:
    """Parse the ``csplan v1`` text format; round-trips bit-exactly."""
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty plan file")
    head = lines[0].split()
    if len(head) != 8 or head[0] != "csplan" or head[1] != "v1":
        raise ValueError(f"bad plan header: {lines[0]!r}")
    domain, height, width = head[2], int(head[3]), int(head[4])
    seed, pct_in, pct_out = int(head[5]), float(head[6]), float(head[7])
    pairs = [ln.split() for ln in lines[1:] if ln.strip()]
    if any(len(p) != 2 for p in pairs):
        raise ValueError("plan body lines must be 'row col' pairs")
    rows = np.array([int(p[0]) for p in pairs], dtype=np.int64)
    cols = np.array([int(p[1]) for p in pairs], dtype=np.int64)
    return SamplingPlan(
        domain=domain,
        height=height,
        width=width,
        rows=rows,
        cols=cols,
        seed=seed,
        pct_inside=pct_in,
        pct_outside=pct_out,
    )


def save_plan(plan: SamplingPlan, path) -> None:
    with open(str(path), "w", encoding="ascii") as fh:
        fh.write(plan_to_text(plan))


def load_plan(path) -> SamplingPlan:
    with open(str(path), "r", encoding="ascii") as fh:
        return plan_from_text(fh.read())
