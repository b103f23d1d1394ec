import numpy as np
import pytest

from ztriangle.resources.errors import OrderTooLargeError, UsageError
from ztriangle.resources.f2_engine import BitSequence, hamming_delta, psi_iter
from ztriangle.resources.render import (BACKGROUND, Palette, RasterImage, p_slice_occupancy, psi_occupancy,
                                        render_delta_square, render_omega_triangle, render_p_slice,
                                        render_psi_generations)
from ztriangle.resources.z_engine import p_slice, prime_start


def test_palette_is_seeded():
    first, second = Palette(7), Palette(7)
    assert [first.color(v) for v in range(20)] == [second.color(v) for v in range(20)]
    assert Palette(8).color(0) != Palette(7).color(0) or Palette(8).color(1) != Palette(7).color(1)


def test_palette_mapping_does_not_depend_on_request_order():
    forward, backward = Palette(11), Palette(11)
    colors = [forward[v] for v in range(64)]
    assert [backward[v] for v in reversed(range(64))] == list(reversed(colors))


def test_palette_colors_are_distinct():
    palette = Palette(0x5EED)
    colors = [palette.color(v) for v in range(64)]
    assert len(set(colors)) == 64
    assert BACKGROUND not in colors
    assert all(len(color) == 3 and all(0 <= c <= 255 for c in color) for color in colors)


def test_palette_rejects_bad_input():
    with pytest.raises(UsageError):
        Palette(-1)
    with pytest.raises(UsageError):
        Palette(1).color(-1)


def test_raster_image_checks_its_buffer():
    with pytest.raises(UsageError):
        RasterImage(2, 2, np.zeros((2, 3, 3), dtype=np.uint8), 1)


@pytest.mark.parametrize('k', range(1, 17))
@pytest.mark.parametrize('size', [1, 7, 32])
def test_occupancy_equals_p_slice_bits(k, size):
    occupancy = p_slice_occupancy(k, size)
    bits = p_slice(prime_start(size), k, size)
    for m in range(size):
        assert occupancy[m] == bits[m].to_bits(size - m)


def test_first_prime_occupies_left_edge():
    occupancy = p_slice_occupancy(1, 20)
    for m, row in enumerate(occupancy):
        assert row == [1] + [0] * (19 - m)


def test_render_p_slice_square_geometry():
    palette = Palette(3)
    cell = 4
    image = render_p_slice(3, 12, palette, geometry='square', cell_size=cell)
    assert (image.width, image.height) == (48, 48)
    occupancy = p_slice_occupancy(3, 12)
    for m, row in enumerate(occupancy):
        for n, bit in enumerate(row, start=1):
            expected = palette.color(m) if bit else BACKGROUND
            assert image.pixel((n - 1) * cell + 1, m * cell + 1) == expected


def test_render_p_slice_offset_geometry_shifts_rows():
    palette = Palette(3)
    image = render_p_slice(1, 6, palette, geometry='offset', cell_size=6)
    for m in range(6):
        assert image.pixel(m * 3 + 1, m * 6 + 1) == palette.color(m)
        if m:
            assert image.pixel(m * 3 - 1, m * 6 + 1) == BACKGROUND


def test_render_p_slice_highlight():
    palette = Palette(3)
    image = render_p_slice(3, 12, palette, geometry='square', cell_size=6, highlight=[(3, 7), (1, 2)])
    # (3, 7) is empty: background with a black frame
    assert image.pixel(6 * 6, 3 * 6) == (0, 0, 0)
    assert image.pixel(6 * 6 + 2, 3 * 6 + 2) == BACKGROUND
    # (1, 2) is occupied: generation color with an inverted frame
    color = palette.color(1)
    assert image.pixel(6, 6) == tuple(255 - c for c in color)
    assert image.pixel(6 + 2, 6 + 2) == color
    assert sum(cell.framed for cell in image.cells) == 2


def test_render_p_slice_is_deterministic():
    first = render_p_slice(26, 100, Palette(99))
    second = render_p_slice(26, 100, Palette(99))
    assert first.tobytes() == second.tobytes()


@pytest.mark.parametrize('t', range(1, 7))
def test_delta_square_is_transposition_symmetric(t):
    image = render_delta_square(t, Palette(5))
    assert image.width == image.height
    assert np.array_equal(image.pixels, image.pixels.transpose(1, 0, 2))


def test_delta_square_colors():
    palette = Palette(5)
    small = render_delta_square(1, palette)
    assert len({cell.color for cell in small.cells}) == 3

    image = render_delta_square(4, palette, cell_size=2)
    assert image.grid_side == 16
    for i in range(16):
        assert image.pixel((15 - i) * 2, i * 2) == palette.color(4)


def test_delta_square_order_bounds():
    with pytest.raises(OrderTooLargeError):
        render_delta_square(11, Palette(0))
    with pytest.raises(OrderTooLargeError):
        render_delta_square(0, Palette(0))


def test_omega_triangle_rows_are_monochrome(table):
    palette = Palette(21)
    image = render_omega_triangle(16, palette, table, geometry='square', cell_size=2)
    for m in range(16):
        expected = palette.color(2 ** hamming_delta(m))
        assert {image.pixel((n - 1) * 2, m * 2) for n in range(1, 17 - m)} == {expected}
    assert image.pixel(0, 15 * 2) == palette.color(16)


def test_omega_triangle_depth_one(table):
    palette = Palette(21)
    image = render_omega_triangle(1, palette, table)
    assert image.pixel(0, 0) == palette.color(1)
    assert len(image.cells) == 1


def test_triangle_arguments_are_checked(table):
    with pytest.raises(UsageError):
        render_p_slice(3, 0, Palette(1))
    with pytest.raises(UsageError):
        render_p_slice(3, 4, Palette(1), cell_size=3)
    with pytest.raises(UsageError):
        render_omega_triangle(4, Palette(1), table, geometry='hex')


PSI_ROWS_FROM_X_PLUS_X4 = [(1, 4),
                           (1, 2, 4, 5),
                           (1, 3, 4, 6),
                           (1, 2, 3, 5, 6, 7),
                           (1, 4, 5, 8),
                           (1, 2, 4, 6, 8, 9),
                           (1, 3, 4, 5, 6, 7, 8, 10)]


def test_psi_occupancy_lists_the_polynomial_coefficients():
    rows = psi_occupancy(BitSequence((1, 4)), 7)
    assert [tuple(n for n, bit in enumerate(row) if bit) for row in rows] == PSI_ROWS_FROM_X_PLUS_X4
    assert all(len(row) == 11 for row in rows)


@pytest.mark.parametrize('support, generations', [((3,), 9), ((0,), 16), ((1, 4), 20), ((0, 2, 7), 12), ((), 3)])
def test_psi_occupancy_equals_psi_iter_bits(support, generations):
    w = BitSequence(support)
    for m, row in enumerate(psi_occupancy(w, generations)):
        assert row == [psi_iter(w, m)[n] for n in range(len(row))]


def test_render_psi_generations_square_geometry():
    palette = Palette(11)
    cell = 4
    w = BitSequence((1, 4))
    image = render_psi_generations(w, 7, palette, geometry='square', cell_size=cell)
    assert (image.width, image.height, image.grid_side) == (44, 28, 11)
    for m, support in enumerate(PSI_ROWS_FROM_X_PLUS_X4):
        for n in range(11):
            expected = palette.color(m) if n in support else BACKGROUND
            assert image.pixel(n * cell + 1, m * cell + 1) == expected
    # the start cells are framed
    assert [rect.framed for rect in image.cells].count(True) == 2
    assert image.pixel(4, 0) == tuple(255 - c for c in palette.color(0))


def test_render_psi_generations_offset_geometry():
    palette = Palette(11)
    image = render_psi_generations(BitSequence((3,)), 4, palette, geometry='offset', cell_size=6)
    assert (image.width, image.height) == (51, 24)
    # row 0 sits three half-cells right of row 3
    assert image.pixel(3 * 6 + 9 + 2, 2) == palette.color(0)
    assert image.pixel(3 * 6 + 2, 3 * 6 + 2) == palette.color(3)
    assert image.pixel(6 * 6 + 2, 3 * 6 + 2) == palette.color(3)


def test_render_psi_generations_arguments_are_checked():
    with pytest.raises(UsageError):
        psi_occupancy(BitSequence((1,)), 0)
    with pytest.raises(UsageError):
        render_psi_generations(BitSequence((1,)), 4, Palette(1), cell_size=5)
