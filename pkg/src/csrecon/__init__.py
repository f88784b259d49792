"""Compressed-sensing image reconstruction from masked DFT/DCT measurements.

Acquires seeded random sub-samples of an image's spectrum inside and around
a frequency-plane mask, then reconstructs with IST or TwIST total-variation
minimization. See the CLI (``csrecon --help``) for the experiment harness.
"""

from ._kernels import BACKEND as kernel_backend
from .imaging import ImageGrid, PgmError, load_pgm, save_pgm, shepp_logan
from .masks import (
    Mask,
    circular_mask,
    full_mask,
    mask_stats,
    mask_to_grid,
    radial_mask,
    square_mask,
)
from .measurement import (
    MeasurementVector,
    SamplingPlan,
    adjoint,
    draw_plan,
    forward,
    load_plan,
    save_plan,
    zero_fill_recon,
)
from .metrics import mse, psnr
from .regularizer import tv_denoise, tv_norm
from .solvers import (
    SolverConfig,
    SolverTrace,
    gamma_map,
    ist_solve,
    objective,
    twist_solve,
)
from .transforms import (
    DCT,
    DFT,
    SpectrumGrid,
    dct2_ortho,
    dft2_centered,
    idct2_ortho,
    idft2_centered,
)

__version__ = "0.1.0"

__all__ = [
    "DCT",
    "DFT",
    "ImageGrid",
    "Mask",
    "MeasurementVector",
    "PgmError",
    "SamplingPlan",
    "SolverConfig",
    "SolverTrace",
    "SpectrumGrid",
    "adjoint",
    "circular_mask",
    "dct2_ortho",
    "dft2_centered",
    "draw_plan",
    "forward",
    "full_mask",
    "gamma_map",
    "idct2_ortho",
    "idft2_centered",
    "ist_solve",
    "kernel_backend",
    "load_pgm",
    "load_plan",
    "mask_stats",
    "mask_to_grid",
    "mse",
    "objective",
    "psnr",
    "radial_mask",
    "save_pgm",
    "save_plan",
    "shepp_logan",
    "square_mask",
    "tv_denoise",
    "tv_norm",
    "twist_solve",
    "zero_fill_recon",
]
