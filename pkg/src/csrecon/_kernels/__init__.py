"""Backend selection for the hot TV kernels.

The environment variable CSRECON_KERNELS picks the implementation:

  auto   (default) use numba when importable, else pure numpy
  numba  require the numba backend, fail loudly if unavailable
  numpy  force the pure-numpy fallback

Both backends are importable directly (``numpy_impl``, ``numba_impl``) for
benchmarking and cross-checks; the flag only chooses what the package uses.
"""

from __future__ import annotations

import os

from . import numpy_impl

_choice = os.environ.get("CSRECON_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"CSRECON_KERNELS must be one of auto|numba|numpy, got {_choice!r}"
    )

if _choice == "numpy":
    _impl = numpy_impl
else:
    try:
        from . import numba_impl

        _impl = numba_impl
    except ImportError:
        if _choice == "numba":
            raise
        _impl = numpy_impl

BACKEND = _impl.BACKEND
tv_denoise_core = _impl.tv_denoise_core
tv_seminorm = _impl.tv_seminorm
