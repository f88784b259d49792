"""One-step (IST) and two-step (TwIST) shrinkage-thresholding solvers.

Both minimize 0.5*||y - Kx||^2 + lam*TV(x) where K is a sampling plan's
forward operator. The shared building block is the map

    gamma(x) = tv_denoise(x + K^H (y - K x))

whose fixed points are stationary for both schemes. The gradient step uses
unit step size, valid because the unitary transforms keep ||K^H K|| <= 1.

IST iterates x <- x + B*(gamma(x) - x) (B = 1 recovers the classic form).
TwIST combines the two previous iterates,

    x_next = x_prev + a*(x - x_prev) + B*(gamma(x) - x),

with defaults a = rho^2 + 1, B = 2a/(1 + xi1), rho = (1-sqrt(xi1))/(1+sqrt(xi1)),
driven by an assumed lower spectral bound xi1 of K^H K.

With monotone=True a step that would increase the objective falls back to
the plain gamma step; if even that increases it, the iterate is held, which
reads as converged. Iterates are combined in increment form so exact fixed
points reproduce themselves bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .imaging import ImageGrid
from .measurement import MeasurementVector, adjoint, forward, zero_fill_recon
from .metrics import psnr
from .regularizer import tv_denoise, tv_norm

__all__ = [
    "SolverConfig",
    "SolverTrace",
    "TraceRecord",
    "gamma_map",
    "ist_solve",
    "objective",
    "twist_solve",
]


@dataclass
class SolverConfig:
    """Knobs shared by both solvers.

    ``alpha``/``beta`` default to None, meaning: TwIST derives them from
    ``xi1`` as documented above, IST uses beta = 1 (its classic form).
    """

    lam: float = 0.01
    alpha: float | None = None
    beta: float | None = None
    xi1: float = 1e-2
    max_iters: int = 200
    rel_tol: float = 1e-4
    tv_inner_iters: int = 10
    monotone: bool = True

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")
        if self.alpha is not None and not 0 < self.alpha < 2:
            raise ValueError(f"alpha must lie in (0, 2), got {self.alpha}")
        if self.beta is not None and self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not 0 < self.xi1 <= 1:
            raise ValueError(f"xi1 must lie in (0, 1], got {self.xi1}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")
        if self.rel_tol <= 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.tv_inner_iters < 1:
            raise ValueError(f"tv_inner_iters must be at least 1, got {self.tv_inner_iters}")

    def twist_weights(self) -> tuple[float, float]:
        """(a, B) for the two-step recursion, honoring explicit overrides."""
        if self.alpha is not None:
            a = self.alpha
        else:
            rho = (1.0 - math.sqrt(self.xi1)) / (1.0 + math.sqrt(self.xi1))
            a = rho * rho + 1.0
        b = self.beta if self.beta is not None else 2.0 * a / (1.0 + self.xi1)
        return a, b

    def ist_weight(self) -> float:
        return self.beta if self.beta is not None else 1.0


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    objective: float
    rel_change: float
    psnr_db: float | None = None


@dataclass
class SolverTrace:
    """Per-iteration objective history plus the stop reason."""

    records: list[TraceRecord] = field(default_factory=list)
    status: str = "max_iters"  # "converged" | "max_iters"

    def to_csv_text(self) -> str:
        lines = ["iter,objective,rel_change,psnr_db"]
        for rec in self.records:
            p = "" if rec.psnr_db is None else repr(rec.psnr_db)
            lines.append(f"{rec.iteration},{rec.objective!r},{rec.rel_change!r},{p}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(str(path), "w", encoding="ascii") as fh:
            fh.write(self.to_csv_text())


def objective(x: ImageGrid, meas: MeasurementVector, lam: float) -> float:
    """0.5*||y - Kx||^2 + lam*TV(x)."""
    residual = meas.values - forward(x, meas.plan).values
    data_fit = 0.5 * float(np.vdot(residual, residual).real)
    return data_fit + lam * tv_norm(x)


def _residual_image(x: ImageGrid, meas: MeasurementVector) -> ImageGrid:
    residual = meas.values - forward(x, meas.plan).values
    return adjoint(MeasurementVector(residual, meas.plan))


def gamma_map(x: ImageGrid, meas: MeasurementVector, config: SolverConfig) -> ImageGrid:
    """One gradient step on the data term followed by the TV prox."""
    stepped = ImageGrid(x.pixels + _residual_image(x, meas).pixels, x.peak)
    return tv_denoise(stepped, config.lam, config.tv_inner_iters)


def _rel_change(new: float, old: float) -> float:
    return abs(new - old) / max(old, 1e-300)


def _record(
    trace: SolverTrace,
    iteration: int,
    obj: float,
    rel: float,
    x: ImageGrid,
    reference: ImageGrid | None,
) -> None:
    p = psnr(reference, x) if reference is not None else None
    trace.records.append(TraceRecord(iteration, obj, rel, p))


def ist_solve(
    meas: MeasurementVector,
    config: SolverConfig,
    x0: ImageGrid | None = None,
    reference: ImageGrid | None = None,
) -> tuple[ImageGrid, SolverTrace]:
    """Iterate x <- x + B*(gamma(x) - x) until the objective settles."""
    beta = config.ist_weight()
    x = zero_fill_recon(meas) if x0 is None else x0
    obj = objective(x, meas, config.lam)
    trace = SolverTrace()
    for it in range(1, config.max_iters + 1):
        gam = gamma_map(x, meas, config)
        if beta == 1.0:
            cand = gam
        else:
            cand = ImageGrid(x.pixels + beta * (gam.pixels - x.pixels), x.peak)
        cand_obj = objective(cand, meas, config.lam)
        if config.monotone and cand_obj > obj:
            cand, cand_obj = gam, objective(gam, meas, config.lam)
            if cand_obj > obj:
                cand, cand_obj = x, obj  # hold; reads as converged below
        rel = _rel_change(cand_obj, obj)
        x, obj = cand, cand_obj
        _record(trace, it, obj, rel, x, reference)
        if rel < config.rel_tol:
            trace.status = "converged"
            return x, trace
    trace.status = "max_iters"
    return x, trace


def twist_solve(
    meas: MeasurementVector,
    config: SolverConfig,
    x0: ImageGrid | None = None,
    reference: ImageGrid | None = None,
) -> tuple[ImageGrid, SolverTrace]:
    """Two-step iteration; the first step is a plain gamma application."""
    a, beta = config.twist_weights()
    x_prev = zero_fill_recon(meas) if x0 is None else x0
    obj_prev = objective(x_prev, meas, config.lam)
    trace = SolverTrace()

    # first iterate
    x = gamma_map(x_prev, meas, config)
    obj = objective(x, meas, config.lam)
    if config.monotone and obj > obj_prev:
        x, obj = x_prev, obj_prev
    rel = _rel_change(obj, obj_prev)
    _record(trace, 1, obj, rel, x, reference)
    if rel < config.rel_tol:
        trace.status = "converged"
        return x, trace

    for it in range(2, config.max_iters + 1):
        gam = gamma_map(x, meas, config)
        cand = ImageGrid(
            x_prev.pixels + a * (x.pixels - x_prev.pixels) + beta * (gam.pixels - x.pixels),
            x.peak,
        )
        cand_obj = objective(cand, meas, config.lam)
        if config.monotone and cand_obj > obj:
            cand, cand_obj = gam, objective(gam, meas, config.lam)
            if cand_obj > obj:
                cand, cand_obj = x, obj
        rel = _rel_change(cand_obj, obj)
        x_prev = x
        x, obj = cand, cand_obj
        _record(trace, it, obj, rel, x, reference)
        if rel < config.rel_tol:
            trace.status = "converged"
            return x, trace
    trace.status = "max_iters"
    return x, trace
