import math

import numpy as np
import pytest

from csrecon import ImageGrid, PgmError, load_pgm, save_pgm, shepp_logan
from csrecon.imaging import _PHANTOM_ELLIPSES


def write_bytes(path, payload: bytes):
    path.write_bytes(payload)
    return str(path)


class TestLoadPgm:
    def test_ascii_2x2(self, tmp_path):
        p = write_bytes(tmp_path / "a.pgm", b"P2\n2 2\n255\n0 255 255 0\n")
        grid = load_pgm(p)
        assert grid.shape == (2, 2)
        assert grid.peak == 1.0
        np.testing.assert_array_equal(grid.pixels, [[0.0, 1.0], [1.0, 0.0]])

    def test_binary_1x1_midgray(self, tmp_path):
        p = write_bytes(tmp_path / "b.pgm", b"P5\n1 1\n255\n" + bytes([128]))
        grid = load_pgm(p)
        assert grid.pixels[0, 0] == 128 / 255

    def test_binary_16bit_big_endian(self, tmp_path):
        p = write_bytes(tmp_path / "c.pgm", b"P5\n2 1\n65535\n" + b"\xff\xff\x01\x00")
        grid = load_pgm(p)
        np.testing.assert_array_equal(grid.pixels, [[1.0, 256 / 65535]])

    def test_header_comments_skipped(self, tmp_path):
        p = write_bytes(
            tmp_path / "d.pgm", b"P2\n# a comment\n2 1\n# another\n255\n7 9\n"
        )
        grid = load_pgm(p)
        np.testing.assert_array_equal(grid.pixels, [[7 / 255, 9 / 255]])

    def test_truncated_binary_names_byte_counts(self, tmp_path):
        p = write_bytes(tmp_path / "t.pgm", b"P5\n2 2\n255\n" + bytes([1, 2]))
        with pytest.raises(PgmError, match=r"expected 4 bytes, found 2"):
            load_pgm(p)

    def test_truncated_ascii(self, tmp_path):
        p = write_bytes(tmp_path / "t2.pgm", b"P2\n2 2\n255\n1 2 3\n")
        with pytest.raises(PgmError, match="truncated"):
            load_pgm(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(PgmError, match="not found"):
            load_pgm(tmp_path / "nope.pgm")

    def test_bad_magic(self, tmp_path):
        p = write_bytes(tmp_path / "m.pgm", b"P6\n1 1\n255\n\x00\x00\x00")
        with pytest.raises(PgmError, match="magic"):
            load_pgm(p)

    @pytest.mark.parametrize("maxval", [0, 65536])
    def test_maxval_out_of_range(self, tmp_path, maxval):
        p = write_bytes(
            tmp_path / "mv.pgm", f"P2\n1 1\n{maxval}\n0\n".encode("ascii")
        )
        with pytest.raises(PgmError, match="maxval"):
            load_pgm(p)

    def test_malformed_header_token(self, tmp_path):
        p = write_bytes(tmp_path / "h.pgm", b"P2\nabc 2\n255\n0 0\n")
        with pytest.raises(PgmError, match="width"):
            load_pgm(p)

    def test_value_above_maxval_rejected(self, tmp_path):
        p = write_bytes(tmp_path / "v.pgm", b"P2\n1 1\n100\n101\n")
        with pytest.raises(PgmError, match="exceeds maxval"):
            load_pgm(p)


class TestSavePgm:
    def test_endpoints_8bit(self, tmp_path):
        grid = ImageGrid(np.array([[0.0, 1.0], [1.0, 0.0]]))
        out = tmp_path / "o.pgm"
        save_pgm(grid, out, bit_depth=8)
        assert out.read_bytes() == b"P5\n2 2\n255\n" + bytes([0, 255, 255, 0])

    def test_round_half_up(self, tmp_path):
        # 0.5*255 + 0.5 = 128.0 exactly
        grid = ImageGrid(np.array([[0.5]]))
        out = tmp_path / "r.pgm"
        save_pgm(grid, out, bit_depth=8)
        assert out.read_bytes()[-1] == 128

    def test_clamps_out_of_range(self, tmp_path):
        grid = ImageGrid(np.array([[1.2, -0.3]]))
        out = tmp_path / "c.pgm"
        save_pgm(grid, out, bit_depth=8)
        assert list(out.read_bytes()[-2:]) == [255, 0]

    def test_16bit_big_endian_payload(self, tmp_path):
        grid = ImageGrid(np.array([[1.0, 0.0]]))
        out = tmp_path / "b16.pgm"
        save_pgm(grid, out, bit_depth=16)
        data = out.read_bytes()
        assert data.startswith(b"P5\n2 1\n65535\n")
        assert data[-4:] == b"\xff\xff\x00\x00"

    def test_bad_bit_depth(self, tmp_path):
        with pytest.raises(ValueError, match="bit_depth"):
            save_pgm(ImageGrid(np.zeros((1, 1))), tmp_path / "x.pgm", bit_depth=12)

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(OSError):
            save_pgm(ImageGrid(np.zeros((1, 1))), tmp_path / "no" / "dir" / "x.pgm")

    def test_round_trip_16bit_many_random_grids(self, tmp_path):
        rng = np.random.default_rng(123)
        out = tmp_path / "rt.pgm"
        for _ in range(1000):
            grid = ImageGrid(rng.random((4, 5)))
            save_pgm(grid, out, bit_depth=16)
            back = load_pgm(out)
            assert np.abs(back.pixels - grid.pixels).max() <= 1 / 131070

    def test_round_trip_8bit_error_bound(self, tmp_path):
        rng = np.random.default_rng(5)
        grid = ImageGrid(rng.random((8, 8)))
        out = tmp_path / "rt8.pgm"
        save_pgm(grid, out, bit_depth=8)
        assert np.abs(load_pgm(out).pixels - grid.pixels).max() <= 1 / 510


def phantom_oracle(n):
    """Per-pixel ellipse-membership rasterization, kept deliberately naive."""
    img = np.zeros((n, n))
    for r in range(n):
        for c in range(n):
            x = (2.0 * c - (n - 1)) / (n - 1)
            y = -(2.0 * r - (n - 1)) / (n - 1)
            value = 0.0
            for amp, ax, ay, x0, y0, phi_deg in _PHANTOM_ELLIPSES:
                phi = math.radians(phi_deg)
                dx, dy = x - x0, y - y0
                u = dx * math.cos(phi) + dy * math.sin(phi)
                v = dy * math.cos(phi) - dx * math.sin(phi)
                if u * u / (ax * ax) + v * v / (ay * ay) <= 1.0:
                    value += amp
            img[r, c] = min(max(value, 0.0), 1.0)
    return img


class TestSheppLogan:
    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            shepp_logan(7)

    def test_corner_outside_skull(self):
        assert shepp_logan(64).pixels[0, 0] == 0.0

    def test_center_inside_brain(self):
        assert shepp_logan(64).pixels[32, 32] > 0.0

    def test_pure(self):
        a = shepp_logan(32)
        b = shepp_logan(32)
        np.testing.assert_array_equal(a.pixels, b.pixels)

    def test_values_in_unit_interval(self):
        px = shepp_logan(96).pixels
        assert px.min() >= 0.0 and px.max() <= 1.0

    def test_matches_naive_rasterization_exactly(self):
        grid = shepp_logan(128)
        np.testing.assert_array_equal(grid.pixels, phantom_oracle(128))


class TestImageGrid:
    def test_rejects_non_2d(self):
        with pytest.raises(ValueError):
            ImageGrid(np.zeros(5))

    def test_rejects_bad_peak(self):
        with pytest.raises(ValueError):
            ImageGrid(np.zeros((2, 2)), peak=0.0)
