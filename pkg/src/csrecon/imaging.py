"""Grayscale image container, PGM file I/O, and a phantom generator.

Images are stored as 2D float64 arrays together with a ``peak`` value (the
MAX used by PSNR). Files are normalized to [0, 1] on load by dividing by the
PGM maxval, so ``peak`` is 1.0 for anything read from disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ImageGrid",
    "PgmError",
    "load_pgm",
    "save_pgm",
    "shepp_logan",
]


class PgmError(ValueError):
    """Malformed, truncated, or unsupported PGM data (message carries a byte offset)."""


@dataclass(frozen=True)
class ImageGrid:
    """Real-valued H x W sample grid.

    ``pixels`` is a 2D float64 array in row-major order; ``peak`` is the
    positive reference maximum used by PSNR (1.0 for normalized images).
    The array is treated as immutable once wrapped.
    """

    pixels: np.ndarray
    peak: float = 1.0

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"image must be a 2D grid, got shape {px.shape}")
        if not self.peak > 0:
            raise ValueError(f"peak must be positive, got {self.peak}")
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape


def _read_header_token(data: bytes, pos: int, path: str) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments to end of line."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch in b" \t\r\n\x0b\x0c":
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos : pos + 1] not in b"\r\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise PgmError(f"{path}: unexpected end of header at byte {pos}")
    start = pos
    while pos < n and data[pos : pos + 1] not in b" \t\r\n\x0b\x0c":
        pos += 1
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str, path: str) -> tuple[int, int]:
    tok, newpos = _read_header_token(data, pos, path)
    try:
        value = int(tok)
    except ValueError:
        raise PgmError(
            f"{path}: malformed header, bad {what} {tok!r} at byte {pos}"
        ) from None
    return value, newpos


def load_pgm(path) -> ImageGrid:
    """Read a P2 (ASCII) or P5 (binary) PGM file and normalize it to [0, 1].

    Samples are divided by the file's maxval, so the returned grid has
    peak = 1.0. Supports 8-bit and 16-bit data (16-bit binary samples are
    big-endian per the Netpbm spec). Raises PgmError with the offending byte
    offset for malformed headers, out-of-range maxval, or truncated payloads.
    """
    path = str(path)
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except FileNotFoundError:
        raise PgmError(f"{path}: file not found") from None

    magic, pos = _read_header_token(data, 0, path)
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"{path}: not a PGM file (magic {magic!r} at byte 0)")
    width, pos = _header_int(data, pos, "width", path)
    height, pos = _header_int(data, pos, "height", path)
    maxval, pos = _header_int(data, pos, "maxval", path)
    if width < 1 or height < 1:
        raise PgmError(f"{path}: invalid dimensions {width}x{height} in header")
    if not 1 <= maxval <= 65535:
        raise PgmError(f"{path}: maxval {maxval} outside 1..65535 (header ends at byte {pos})")

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the payload
        if pos >= len(data) or data[pos : pos + 1] not in b" \t\r\n\x0b\x0c":
            raise PgmError(f"{path}: missing whitespace after maxval at byte {pos}")
        pos += 1
        itemsize = 1 if maxval < 256 else 2
        expected = count * itemsize
        actual = len(data) - pos
        if actual < expected:
            raise PgmError(
                f"{path}: truncated pixel data at byte {pos}: "
                f"expected {expected} bytes, found {actual}"
            )
        dtype = np.uint8 if itemsize == 1 else np.dtype(">u2")
        raw = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    else:
        tokens = data[pos:].split()
        if len(tokens) < count:
            raise PgmError(
                f"{path}: truncated pixel data at byte {pos}: "
                f"expected {count} samples, found {len(tokens)}"
            )
        try:
            raw = np.array([int(t) for t in tokens[:count]], dtype=np.int64)
        except ValueError:
            raise PgmError(f"{path}: non-numeric pixel data after byte {pos}") from None
        if raw.min() < 0:
            raise PgmError(f"{path}: negative pixel value after byte {pos}")

    values = raw.astype(np.float64)
    if values.max(initial=0.0) > maxval:
        raise PgmError(f"{path}: pixel value exceeds maxval {maxval}")
    return ImageGrid(values.reshape(height, width) / maxval, peak=1.0)


def save_pgm(grid: ImageGrid, path, bit_depth: int = 8) -> None:
    """Write a binary (P5) PGM.

    Samples are clamped to [0, 1] and quantized with round-half-up:
    round(sample * maxval). 16-bit output is big-endian.
    """
    if bit_depth not in (8, 16):
        raise ValueError(f"bit_depth must be 8 or 16, got {bit_depth}")
    maxval = 255 if bit_depth == 8 else 65535
    clipped = np.clip(grid.pixels, 0.0, 1.0)
    quant = np.floor(clipped * maxval + 0.5)
    dtype = np.uint8 if bit_depth == 8 else np.dtype(">u2")
    payload = quant.astype(dtype).tobytes()
    header = f"P5\n{grid.width} {grid.height}\n{maxval}\n".encode("ascii")
    with open(str(path), "wb") as fh:
        fh.write(header)
        fh.write(payload)


# Modified Shepp-Logan ellipse table (additive intensity, half-axes, center,
# rotation in degrees), on the [-1, 1] x [-1, 1] unit square.
_PHANTOM_ELLIPSES = (
    (1.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0),
    (-0.80, 0.6624, 0.8740, 0.00, -0.0184, 0.0),
    (-0.20, 0.1100, 0.3100, 0.22, 0.0000, -18.0),
    (-0.20, 0.1600, 0.4100, -0.22, 0.0000, 18.0),
    (0.10, 0.2100, 0.2500, 0.00, 0.3500, 0.0),
    (0.10, 0.0460, 0.0460, 0.00, 0.1000, 0.0),
    (0.10, 0.0460, 0.0460, 0.00, -0.1000, 0.0),
    (0.10, 0.0460, 0.0230, -0.08, -0.6050, 0.0),
    (0.10, 0.0230, 0.0230, 0.00, -0.6060, 0.0),
    (0.10, 0.0230, 0.0460, 0.06, -0.6050, 0.0),
)


def shepp_logan(n: int) -> ImageGrid:
    """Rasterize the 10-ellipse Shepp-Logan head phantom on an n x n grid.

    Uses the modified (high-contrast) intensity table so values land in
    [0, 1]. Cell centers span [-1, 1] in both axes; row 0 is the top of the
    head (y = +1). Deterministic: no randomness anywhere.
    """
    if n < 8:
        raise ValueError(f"phantom size must be at least 8, got {n}")
    coords = (2.0 * np.arange(n) - (n - 1)) / (n - 1)
    x = coords[np.newaxis, :]
    y = -coords[:, np.newaxis]
    img = np.zeros((n, n), dtype=np.float64)
    for amp, ax, ay, x0, y0, phi_deg in _PHANTOM_ELLIPSES:
        phi = math.radians(phi_deg)
        cosp, sinp = math.cos(phi), math.sin(phi)
        dx = x - x0
        dy = y - y0
        inside = ((dx * cosp + dy * sinp) ** 2) / (ax * ax) + (
            (dy * cosp - dx * sinp) ** 2
        ) / (ay * ay) <= 1.0
        img[inside] += amp
    return ImageGrid(np.clip(img, 0.0, 1.0), peak=1.0)
