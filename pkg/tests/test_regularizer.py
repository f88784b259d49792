import numpy as np
import pytest

from csrecon import ImageGrid, tv_denoise, tv_norm
from csrecon._kernels import numpy_impl


def primal_objective(u, g, lam):
    return 0.5 * float(np.sum((u - g) ** 2)) + lam * numpy_impl.tv_seminorm(u)


class TestTvNorm:
    def test_constant_is_zero(self):
        assert tv_norm(ImageGrid(np.full((6, 6), 0.37))) == 0.0

    def test_two_by_two(self):
        assert tv_norm(ImageGrid(np.array([[0.0, 1.0], [0.0, 1.0]]))) == 2.0

    def test_row_ramp(self):
        assert tv_norm(ImageGrid(np.array([[0.0, 1.0, 2.0]]))) == 2.0

    def test_one_homogeneous(self):
        rng = np.random.default_rng(0)
        x = rng.random((10, 12))
        base = tv_norm(ImageGrid(x))
        for c in (2.0, -3.5, 0.25):
            scaled = tv_norm(ImageGrid(c * x))
            assert abs(scaled - abs(c) * base) < 1e-12 * max(1.0, scaled)


class TestTvDenoise:
    def test_zero_lambda_is_identity(self):
        rng = np.random.default_rng(1)
        grid = ImageGrid(rng.random((8, 8)))
        out = tv_denoise(grid, 0.0, 50)
        np.testing.assert_array_equal(out.pixels, grid.pixels)

    def test_constant_input_unchanged(self):
        grid = ImageGrid(np.full((8, 8), 0.42))
        out = tv_denoise(grid, 0.3, 100)
        np.testing.assert_array_equal(out.pixels, grid.pixels)

    def test_rejects_negative_lambda(self):
        with pytest.raises(ValueError, match="nonnegative"):
            tv_denoise(ImageGrid(np.zeros((4, 4))), -0.1)

    def test_rejects_zero_inner_iters(self):
        with pytest.raises(ValueError, match="inner_iters"):
            tv_denoise(ImageGrid(np.zeros((4, 4))), 0.1, 0)

    def test_local_optimality_and_mean_preservation(self):
        rng = np.random.default_rng(2)
        g = rng.random((32, 32))
        lam = 0.1
        out = tv_denoise(ImageGrid(g), lam, 500).pixels
        assert abs(out.mean() - g.mean()) < 1e-8
        best = primal_objective(out, g, lam)
        for _ in range(10_000):
            perturbed = out + 1e-3 * rng.standard_normal((32, 32))
            assert primal_objective(perturbed, g, lam) >= best

    def test_non_expansive(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a = rng.random((12, 12))
            b = rng.random((12, 12))
            fa = tv_denoise(ImageGrid(a), 0.15, 30).pixels
            fb = tv_denoise(ImageGrid(b), 0.15, 30).pixels
            assert np.linalg.norm(fa - fb) <= np.linalg.norm(a - b) + 1e-8

    def test_primal_objective_nonincreasing_over_inner_iters(self):
        # the dual update is deterministic, so tv_denoise(g, lam, k) is the
        # k-th inner iterate
        rng = np.random.default_rng(4)
        g = rng.random((16, 16))
        lam = 0.2
        objs = [
            primal_objective(tv_denoise(ImageGrid(g), lam, k).pixels, g, lam)
            for k in range(1, 40)
        ]
        for prev, cur in zip(objs, objs[1:]):
            assert cur <= prev + 1e-10

    def test_denoising_reduces_tv(self):
        rng = np.random.default_rng(5)
        g = ImageGrid(rng.random((16, 16)))
        out = tv_denoise(g, 0.2, 100)
        assert tv_norm(out) < tv_norm(g)


class TestKernelBackends:
    def test_backends_agree(self):
        numba_impl = pytest.importorskip("csrecon._kernels.numba_impl")
        rng = np.random.default_rng(6)
        g = rng.random((20, 24))
        a = numba_impl.tv_denoise_core(g, 0.15, 40, 0.125)
        b = numpy_impl.tv_denoise_core(g, 0.15, 40, 0.125)
        np.testing.assert_array_equal(a, b)
        sa = numba_impl.tv_seminorm(g)
        sb = numpy_impl.tv_seminorm(g)
        assert abs(sa - sb) <= 1e-12 * sb
