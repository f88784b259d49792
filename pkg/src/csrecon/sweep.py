"""Experiment sweeps: PSNR vs sampling percentages over masks and domains.

A sweep config is a flat ``key = value`` text file (lists are comma
separated). The runner executes the cross product of pct_inside x
pct_outside x seeds, one reconstruction per cell, and emits a CSV (and
optionally a dependency-free SVG line chart of mean-over-seeds PSNR).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .imaging import ImageGrid, load_pgm, shepp_logan
from .masks import Mask, circular_mask, full_mask, radial_mask, square_mask
from .measurement import draw_plan, forward, zero_fill_recon
from .metrics import psnr
from .solvers import SolverConfig, SolverTrace, ist_solve, twist_solve
from .transforms import DCT, DFT

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "SweepRow",
    "CSV_HEADER",
    "build_mask",
    "parse_config",
    "parse_config_file",
    "run_sweep",
    "rows_to_csv_text",
    "write_csv",
    "write_svg",
]

CSV_HEADER = (
    "domain,mask,pct_inside,pct_outside,seed,measurements,"
    "psnr_db,iterations,converged,runtime_ms"
)


class ConfigError(ValueError):
    """Sweep config problem; message names the offending line when known."""


@dataclass
class ExperimentConfig:
    """Everything one sweep needs, parsed from the flat text format."""

    phantom_n: int | None = None
    image_path: str | None = None
    domain: str = DFT
    mask_shape: str = "circle"
    fraction: float = 0.1
    a: float = 1.0
    b: float = 6.0
    lines: int = 16
    pct_inside: list[float] = field(default_factory=lambda: [100.0])
    pct_outside: list[float] = field(default_factory=lambda: [10.0])
    seeds: list[int] = field(default_factory=lambda: [1])
    solver: str = "twist"
    solver_config: SolverConfig = field(default_factory=SolverConfig)

    def validate(self) -> None:
        if (self.phantom_n is None) == (self.image_path is None):
            raise ConfigError("exactly one of phantom_n or image must be set")
        if self.domain not in (DFT, DCT):
            raise ConfigError(f"domain must be dft or dct, got {self.domain!r}")
        if self.mask_shape not in ("square", "circle", "radial", "full"):
            raise ConfigError(f"unknown mask_shape {self.mask_shape!r}")
        if self.solver not in ("twist", "ist"):
            raise ConfigError(f"solver must be twist or ist, got {self.solver!r}")
        for name, values in (
            ("pct_inside", self.pct_inside),
            ("pct_outside", self.pct_outside),
            ("seeds", self.seeds),
        ):
            if not values:
                raise ConfigError(f"{name} needs at least one value")
        for name, values in (("pct_inside", self.pct_inside), ("pct_outside", self.pct_outside)):
            for v in values:
                if not 0.0 <= v <= 100.0:
                    raise ConfigError(f"{name} value {v} outside [0, 100]")


@dataclass
class SweepRow:
    """One CSV row; ``trace`` rides along for diagnostics, never serialized."""

    domain: str
    mask: str
    pct_inside: float
    pct_outside: float
    seed: int
    measurements: int
    psnr_db: float
    iterations: int
    converged: bool
    runtime_ms: float
    trace: SolverTrace | None = None

    def to_csv_line(self) -> str:
        return (
            f"{self.domain},{self.mask},{self.pct_inside!r},{self.pct_outside!r},"
            f"{self.seed},{self.measurements},{self.psnr_db!r},{self.iterations},"
            f"{'true' if self.converged else 'false'},{self.runtime_ms!r}"
        )


_FLOAT_LIST_KEYS = {"pct_inside", "pct_outside"}
_INT_LIST_KEYS = {"seeds"}
_SOLVER_FLOAT_KEYS = {"lambda": "lam", "alpha": "alpha", "beta": "beta",
                      "xi1": "xi1", "rel_tol": "rel_tol"}
_SOLVER_INT_KEYS = {"max_iters": "max_iters", "tv_inner_iters": "tv_inner_iters"}


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key = value format; errors carry 1-based line numbers."""
    cfg = ExperimentConfig()
    solver_kwargs: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        try:
            if key == "phantom_n":
                cfg.phantom_n = int(value)
            elif key == "image":
                cfg.image_path = value
            elif key == "domain":
                cfg.domain = value.lower()
            elif key == "mask_shape":
                cfg.mask_shape = value.lower()
            elif key == "fraction":
                cfg.fraction = float(value)
            elif key == "a":
                cfg.a = float(value)
            elif key == "b":
                cfg.b = float(value)
            elif key == "lines":
                cfg.lines = int(value)
            elif key in _FLOAT_LIST_KEYS:
                setattr(cfg, key, [float(t) for t in value.split(",") if t.strip()])
            elif key in _INT_LIST_KEYS:
                setattr(cfg, key, [int(t) for t in value.split(",") if t.strip()])
            elif key == "solver":
                cfg.solver = value.lower()
            elif key == "monotone":
                if value.lower() not in ("true", "false"):
                    raise ValueError(f"expected true or false, got {value!r}")
                solver_kwargs["monotone"] = value.lower() == "true"
            elif key in _SOLVER_FLOAT_KEYS:
                solver_kwargs[_SOLVER_FLOAT_KEYS[key]] = float(value)
            elif key in _SOLVER_INT_KEYS:
                solver_kwargs[_SOLVER_INT_KEYS[key]] = int(value)
            else:
                raise ValueError(f"unknown key {key!r}")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    try:
        cfg.solver_config = SolverConfig(**solver_kwargs)
        cfg.validate()
    except (ValueError, ConfigError) as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def parse_config_file(path) -> ExperimentConfig:
    try:
        with open(str(path), "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


def build_mask(shape: str, n1: int, n2: int, *, fraction=0.1, a=1.0, b=6.0, lines=16) -> Mask:
    if shape == "square":
        return square_mask(n1, n2, fraction)
    if shape == "circle":
        return circular_mask(n1, n2, a, b)
    if shape == "radial":
        return radial_mask(n1, n2, lines)
    if shape == "full":
        return full_mask(n1, n2)
    raise ValueError(f"unknown mask shape {shape!r}")


def _load_truth(cfg: ExperimentConfig) -> ImageGrid:
    if cfg.phantom_n is not None:
        return shepp_logan(cfg.phantom_n)
    return load_pgm(cfg.image_path)


def _run_cell(cfg: ExperimentConfig, pct_in: float, pct_out: float, seed: int) -> SweepRow:
    truth = _load_truth(cfg)
    mask = build_mask(
        cfg.mask_shape, truth.height, truth.width,
        fraction=cfg.fraction, a=cfg.a, b=cfg.b, lines=cfg.lines,
    )
    start = time.perf_counter()
    plan = draw_plan(mask, cfg.domain, pct_in, pct_out, seed)
    meas = forward(truth, plan)
    solve = twist_solve if cfg.solver == "twist" else ist_solve
    recon, trace = solve(meas, cfg.solver_config, reference=truth)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    return SweepRow(
        domain=cfg.domain,
        mask=mask.descriptor,
        pct_inside=pct_in,
        pct_outside=pct_out,
        seed=seed,
        measurements=len(plan),
        psnr_db=psnr(truth, recon),
        iterations=len(trace.records),
        converged=trace.status == "converged",
        runtime_ms=runtime_ms,
        trace=trace,
    )


def run_sweep(cfg: ExperimentConfig, jobs: int = 1) -> list[SweepRow]:
    """Run the full cross product; rows come back sorted by (pct_in, pct_out, seed)."""
    cfg.validate()
    cells = sorted(
        (pi, po, s)
        for pi in cfg.pct_inside
        for po in cfg.pct_outside
        for s in cfg.seeds
    )
    if jobs <= 1:
        rows = [_run_cell(cfg, *cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_cell, [cfg] * len(cells), *zip(*cells)))
    rows.sort(key=lambda r: (r.pct_inside, r.pct_outside, r.seed))
    return rows


def rows_to_csv_text(rows: list[SweepRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.to_csv_line() for r in rows]) + "\n"


def write_csv(rows: list[SweepRow], path) -> None:
    with open(str(path), "w", encoding="ascii") as fh:
        fh.write(rows_to_csv_text(rows))


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def write_svg(rows: list[SweepRow], path, title: str = "PSNR vs percentage outside mask") -> None:
    """Fixed 800x600 line chart: mean-over-seeds PSNR vs pct_outside,
    one polyline per pct_inside. No external assets."""
    width, height = 800, 600
    ml, mr, mt, mb = 80, 30, 50, 60
    plot_w, plot_h = width - ml - mr, height - mt - mb

    series: dict[float, dict[float, list[float]]] = {}
    for r in rows:
        series.setdefault(r.pct_inside, {}).setdefault(r.pct_outside, []).append(r.psnr_db)
    curves = {
        pi: sorted(
            (po, sum(v) / len(v)) for po, v in by_po.items()
        )
        for pi, by_po in sorted(series.items())
    }

    xs = [po for pts in curves.values() for po, _ in pts]
    ys = [y for pts in curves.values() for _, y in pts if y != float("inf")]
    if not ys:
        ys = [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo) or 1.0
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def sx(v: float) -> float:
        return ml + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v: float) -> float:
        if v == float("inf"):
            v = y_hi
        return mt + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="25" text-anchor="middle" font-size="16" '
        f'font-family="sans-serif">{title}</text>',
        f'<line x1="{ml}" y1="{mt + plot_h}" x2="{ml + plot_w}" y2="{mt + plot_h}" '
        f'stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + plot_h}" stroke="black"/>',
        f'<text x="{ml + plot_w / 2:.1f}" y="{height - 15}" text-anchor="middle" '
        f'font-size="13" font-family="sans-serif">percentage outside mask</text>',
        f'<text x="20" y="{mt + plot_h / 2:.1f}" text-anchor="middle" font-size="13" '
        f'font-family="sans-serif" transform="rotate(-90 20 {mt + plot_h / 2:.1f})">'
        f'PSNR (dB)</text>',
    ]
    for i in range(5):
        fx = x_lo + (x_hi - x_lo) * i / 4
        fy = y_lo + (y_hi - y_lo) * i / 4
        parts.append(
            f'<line x1="{sx(fx):.1f}" y1="{mt + plot_h}" x2="{sx(fx):.1f}" '
            f'y2="{mt + plot_h + 5}" stroke="black"/>'
            f'<text x="{sx(fx):.1f}" y="{mt + plot_h + 20}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{fx:.1f}</text>'
        )
        parts.append(
            f'<line x1="{ml - 5}" y1="{sy(fy):.1f}" x2="{ml}" y2="{sy(fy):.1f}" '
            f'stroke="black"/>'
            f'<text x="{ml - 10}" y="{sy(fy) + 4:.1f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{fy:.1f}</text>'
        )
    for idx, (pi, pts) in enumerate(curves.items()):
        color = _PALETTE[idx % len(_PALETTE)]
        coords = " ".join(f"{sx(po):.2f},{sy(y):.2f}" for po, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for po, y in pts:
            parts.append(
                f'<circle cx="{sx(po):.2f}" cy="{sy(y):.2f}" r="3" fill="{color}"/>'
            )
        ly = mt + 15 + 16 * idx
        parts.append(
            f'<line x1="{ml + plot_w - 150}" y1="{ly - 4}" x2="{ml + plot_w - 120}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
            f'<text x="{ml + plot_w - 112}" y="{ly}" font-size="11" '
            f'font-family="sans-serif">inside={pi:g}%</text>'
        )
    parts.append("</svg>")
    with open(str(path), "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
