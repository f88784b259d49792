import numpy as np
import pytest

from csrecon import (
    circular_mask,
    full_mask,
    load_pgm,
    mask_stats,
    mask_to_grid,
    radial_mask,
    save_pgm,
    square_mask,
)


def square_oracle_cells(n1, n2, fraction):
    cells = np.zeros((n1, n2), dtype=bool)
    for r in range(n1):
        for c in range(n2):
            cells[r, c] = (
                n1 / 2 - fraction * n1 <= r <= n1 / 2 + fraction * n1
                and n2 / 2 - fraction * n2 <= c <= n2 / 2 + fraction * n2
            )
    return cells


def circle_oracle_cells(n1, n2, a, b):
    cells = np.zeros((n1, n2), dtype=bool)
    rad_sq = (min(n1, n2) / b) ** 2
    for r in range(n1):
        for c in range(n2):
            cells[r, c] = (r - a * n1 / 2) ** 2 + (c - a * n2 / 2) ** 2 <= rad_sq
    return cells


class TestSquareMask:
    def test_512_default_count(self):
        mask = square_mask(512, 512, 0.1)
        assert mask.inside_count == 10609
        rows = np.unique(np.where(mask.cells)[0])
        assert rows.min() == 205 and rows.max() == 307

    def test_512_matches_enumeration(self):
        mask = square_mask(512, 512, 0.1)
        np.testing.assert_array_equal(mask.cells, square_oracle_cells(512, 512, 0.1))

    def test_small_grid(self):
        mask = square_mask(10, 10, 0.1)
        assert mask.inside_count == 9
        rows = np.unique(np.where(mask.cells)[0])
        np.testing.assert_array_equal(rows, [4, 5, 6])

    def test_zero_fraction_single_center_cell(self):
        mask = square_mask(8, 8, 0.0)
        assert mask.inside_count == 1
        assert mask.cells[4, 4]

    @pytest.mark.parametrize("fraction", [0.5, 0.7, -0.1])
    def test_rejects_bad_fraction(self, fraction):
        with pytest.raises(ValueError, match="fraction"):
            square_mask(8, 8, fraction)

    @pytest.mark.parametrize("n,fraction", [(16, 0.1), (17, 0.2), (30, 0.25)])
    def test_count_is_perfect_square(self, n, fraction):
        root = round(square_mask(n, n, fraction).inside_count ** 0.5)
        assert root * root == square_mask(n, n, fraction).inside_count

    def test_rectangular_matches_enumeration(self):
        mask = square_mask(19, 34, 0.2)
        np.testing.assert_array_equal(mask.cells, square_oracle_cells(19, 34, 0.2))


class TestCircularMask:
    def test_centered_512_count(self):
        mask = circular_mask(512, 512, 1, 6)
        assert mask.inside_count == 22877
        np.testing.assert_array_equal(mask.cells, circle_oracle_cells(512, 512, 1, 6))

    def test_corner_512_count(self):
        mask = circular_mask(512, 512, 0, 2)
        assert mask.inside_count == 51722
        np.testing.assert_array_equal(mask.cells, circle_oracle_cells(512, 512, 0, 2))

    def test_corner_mask_occupies_origin_quadrant(self):
        mask = circular_mask(64, 64, 0, 2)
        assert mask.cells[0, 0]
        assert not mask.cells[63, 63]

    def test_radius_covering_grid_marks_everything(self):
        # radius 8/0.5 = 16 > sqrt(128)
        mask = circular_mask(8, 8, 1, 0.5)
        assert mask.inside_count == 64

    def test_rejects_bad_params(self):
        with pytest.raises(ValueError, match="b"):
            circular_mask(8, 8, 1, 0)
        with pytest.raises(ValueError, match="a"):
            circular_mask(8, 8, -1, 2)

    def test_smaller_b_gives_superset(self):
        small = circular_mask(32, 32, 1, 6)
        large = circular_mask(32, 32, 1, 4)
        assert np.all(large.cells[small.cells])
        assert large.inside_count > small.inside_count

    @pytest.mark.parametrize("n", [15, 16])
    @pytest.mark.parametrize(
        "make", [lambda n: circular_mask(n, n, 1, 3).cells,
                 lambda n: square_mask(n, n, 0.2).cells]
    )
    def test_reflection_symmetry_through_center(self, n, make):
        # the declared center is n/2, so cell r mirrors to n - r; row/col 0
        # has no mirror inside the grid (the one-cell asymmetry)
        cells = make(n)
        sub = cells[1:, 1:]
        np.testing.assert_array_equal(sub, sub[::-1, ::-1])
        assert not cells[0, :].any() and not cells[:, 0].any()


class TestRadialMask:
    def test_single_line_is_middle_row(self):
        mask = radial_mask(9, 9, 1)
        expected = np.zeros((9, 9), dtype=bool)
        expected[4, :] = True
        np.testing.assert_array_equal(mask.cells, expected)

    def test_two_lines_cross(self):
        assert radial_mask(9, 9, 2).inside_count == 2 * 9 - 1

    def test_rejects_zero_lines(self):
        with pytest.raises(ValueError, match="line"):
            radial_mask(8, 8, 0)

    def test_count_saturates_for_dense_fans(self):
        # beyond ~pi*n lines the marked set stops changing; enumeration at
        # two consecutive counts pins the non-decreasing behavior there
        a = radial_mask(33, 33, 300).inside_count
        b = radial_mask(33, 33, 301).inside_count
        assert a == 913 and b == 913
        assert b >= a
        assert radial_mask(33, 33, 2000).inside_count == a

    def test_pure(self):
        np.testing.assert_array_equal(
            radial_mask(16, 16, 5).cells, radial_mask(16, 16, 5).cells
        )


class TestMaskStats:
    def test_all_false(self):
        mask = square_mask(9, 9, 0.0)  # odd grid: 4.5 is not an integer index
        assert mask.inside_count == 0
        assert mask_stats(mask) == (0, 81, 0.0)

    def test_full(self):
        mask = full_mask(6, 7)
        assert mask_stats(mask) == (42, 0, 1.0)

    def test_eq16_default(self):
        inside, outside, coverage = mask_stats(square_mask(512, 512, 0.1))
        assert (inside, outside) == (10609, 251535)
        assert coverage == 10609 / 262144


class TestMaskSerialization:
    def test_pgm_round_trip_is_binary(self, tmp_path):
        mask = circular_mask(32, 32, 1, 4)
        out = tmp_path / "mask.pgm"
        save_pgm(mask_to_grid(mask), out, bit_depth=8)
        back = load_pgm(out)
        assert set(np.unique(back.pixels)) == {0.0, 1.0}
        np.testing.assert_array_equal(back.pixels.astype(bool), mask.cells)

    def test_descriptor_strings(self):
        assert square_mask(8, 8, 0.1).descriptor == "square(fraction=0.1)"
        assert circular_mask(8, 8, 1, 6).descriptor == "circle(a=1.0;b=6.0)"
        assert radial_mask(8, 8, 3).descriptor == "radial(lines=3)"
        assert full_mask(8, 8).descriptor == "full"
        assert "," not in circular_mask(8, 8, 1, 6).descriptor
