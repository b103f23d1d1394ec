"""
Rasterization of triangle slices, psi generations and delta matrices.

Cells are laid out either on a plain square grid or on an offset grid where row m is shifted right
by m half-cells, which stands in for a honeycomb. Pixels live in an (H, W, 3) uint8 array.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, Literal, Optional

import numpy as np
from PIL import ImageColor

from ztriangle.resources.errors import OrderTooLargeError, UsageError
from ztriangle.resources.f2_engine import BitSequence, psi_iter, sierpinski_row
from ztriangle.resources.primes import PrimeTable
from ztriangle.resources.sequences_stats import delta_matrix
from ztriangle.resources.z_engine import entry_closed_form

_logger = logging.getLogger(__name__)

RGB = tuple[int, int, int]
Geometry = Literal['offset', 'square']

BACKGROUND: RGB = (255, 255, 255)
MAX_RENDER_ORDER = 10
_SATURATION = 65
_VALUE = 90
_MAX_REJECTIONS = 64
_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class Palette:
    """
    Seeded value -> color mapping. The i-th color is the i-th accepted draw of a splitmix64 stream
    over hue at fixed saturation and value, so the mapping only depends on the seed.
    """

    def __init__(self, seed: int) -> None:
        if not 0 <= seed <= _MASK64:
            raise UsageError(f"Palette seeds must fit in 64 bits (received {seed}).")
        self.seed = seed
        self._state = seed
        self._colors: list[RGB] = []
        self._used: set[RGB] = {BACKGROUND}

    def _draw(self) -> RGB:
        self._state, out = _splitmix64(self._state)
        hue = (out % 3600) / 10
        return ImageColor.getrgb(f"hsv({hue},{_SATURATION}%,{_VALUE}%)")[:3]

    def _extend(self) -> None:
        color = self._draw()
        rejections = 0
        while color in self._used and rejections < _MAX_REJECTIONS:
            color = self._draw()
            rejections += 1
        self._used.add(color)
        self._colors.append(color)

    def color(self, value: int) -> RGB:
        if value < 0:
            raise UsageError(f"Palette values must be non-negative (received {value}).")
        while len(self._colors) <= value:
            self._extend()
        return self._colors[value]

    def __getitem__(self, value: int) -> RGB:
        return self.color(value)


@dataclass(frozen=True)
class CellRect:
    x: int
    y: int
    size: int
    color: RGB
    framed: bool = False


@dataclass(frozen=True, eq=False)
class RasterImage:
    width: int
    height: int
    pixels: np.ndarray
    grid_side: int
    cells: tuple[CellRect, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.pixels.shape != (self.height, self.width, 3) or self.pixels.dtype != np.uint8:
            raise UsageError(f"Pixel buffer of shape {self.pixels.shape} does not match "
                             f"{self.width}x{self.height} RGB.")

    def pixel(self, x: int, y: int) -> RGB:
        r, g, b = self.pixels[y, x]
        return int(r), int(g), int(b)

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()


def _inverted(color: RGB) -> RGB:
    return 255 - color[0], 255 - color[1], 255 - color[2]


def _rasterize(width: int, height: int, grid_side: int, cells: list[CellRect]) -> RasterImage:
    pixels = np.empty((height, width, 3), dtype=np.uint8)
    pixels[:, :] = BACKGROUND
    for cell in cells:
        pixels[cell.y:cell.y + cell.size, cell.x:cell.x + cell.size] = cell.color
        if cell.framed:
            frame = _inverted(cell.color)
            last = cell.size - 1
            pixels[cell.y, cell.x:cell.x + cell.size] = frame
            pixels[cell.y + last, cell.x:cell.x + cell.size] = frame
            pixels[cell.y:cell.y + cell.size, cell.x] = frame
            pixels[cell.y:cell.y + cell.size, cell.x + last] = frame
    pixels.setflags(write=False)
    return RasterImage(width, height, pixels, grid_side, tuple(cells))


def _triangle_origin(m: int, n: int, cell_size: int, geometry: Geometry) -> tuple[int, int]:
    shift = m * cell_size // 2 if geometry == 'offset' else 0
    return (n - 1) * cell_size + shift, m * cell_size


def _check_triangle_args(size: int, cell_size: int, geometry: str) -> None:
    if size < 1:
        raise UsageError(f"size must be positive (received {size}).")
    if cell_size < 2 or cell_size % 2:
        raise UsageError(f"cell_size must be an even number >= 2 (received {cell_size}).")
    if geometry not in ('offset', 'square'):
        raise UsageError(f"Unknown geometry {geometry!r}.")


########################################p-renderings########################################
def p_slice_occupancy(k: int, size: int) -> list[list[int]]:
    """
    Occupancy of the p_k-rendering: row m, column n (1 <= n <= size - m) is 1 iff k - n lies in
    S_m, i.e. iff p_k divides a_{m,n} of the prime-start triangle.
    :param k: 1-based prime index
    :param size: number of rows and start width
    :return: one 0/1 list per row, column n stored at index n - 1
    """
    if k < 1:
        raise UsageError(f"Prime indices start at 1 (received {k}).")
    rows = []
    for m in range(size):
        offsets = sierpinski_row(m)
        rows.append([1 if (k - n) in offsets else 0 for n in range(1, size - m + 1)])
    return rows


def render_p_slice(k: int,
                   size: int,
                   palette: Palette,
                   geometry: Geometry = 'offset',
                   cell_size: int = 6,
                   highlight: Optional[Iterable[tuple[int, int]]] = None) -> RasterImage:
    """
    Renders where p_k divides the entries of the prime-start triangle. Occupied cells take the
    palette color of their generation m.
    :param k: 1-based prime index
    :param size: number of rows
    :param palette: color source
    :param geometry: 'offset' or 'square'
    :param cell_size: cell edge in pixels
    :param highlight: (m, n) cells to frame with the inverted color
    :return: the raster image
    """
    _check_triangle_args(size, cell_size, geometry)
    marked = set(highlight or ())
    cells = []
    for m, row in enumerate(p_slice_occupancy(k, size)):
        for n, bit in enumerate(row, start=1):
            framed = (m, n) in marked
            if bit or framed:
                x, y = _triangle_origin(m, n, cell_size, geometry)
                color = palette.color(m) if bit else BACKGROUND
                cells.append(CellRect(x, y, cell_size, color, framed))
    _logger.info("Rendered p-slice (k=%d, size=%d, %d occupied cells)", k, size, len(cells))
    return _rasterize(size * cell_size, size * cell_size, size, cells)


########################################psi generations#####################################
def psi_occupancy(w: BitSequence, generations: int) -> list[list[int]]:
    """
    Coefficients of P_w(X)(1+X)^m for m < generations, all rows padded to the width of the last one.
    """
    if generations < 1:
        raise UsageError(f"generations must be positive (received {generations}).")
    width = (w.support[-1] if w.support else 0) + generations
    rows = []
    for m in range(generations):
        row = psi_iter(w, m)
        rows.append([row[n] for n in range(width)])
    return rows


def render_psi_generations(w: BitSequence,
                           generations: int,
                           palette: Palette,
                           geometry: Geometry = 'offset',
                           cell_size: int = 6) -> RasterImage:
    """
    Renders the generations of the psi game started from w. Row m shows the support of psi_iter(w, m)
    in the palette color of m; the cells of w itself are framed. In offset geometry every row sits half
    a cell left of the one above, so the rows spread like a honeycomb.
    :param w: the start sequence
    :param generations: number of rows
    :param palette: color source
    :param geometry: 'offset' or 'square'
    :param cell_size: cell edge in pixels
    :return: the raster image
    """
    _check_triangle_args(generations, cell_size, geometry)
    rows = psi_occupancy(w, generations)
    columns = len(rows[0])
    cells = []
    for m, row in enumerate(rows):
        shift = (generations - 1 - m) * cell_size // 2 if geometry == 'offset' else 0
        for n, bit in enumerate(row):
            if bit:
                cells.append(CellRect(n * cell_size + shift, m * cell_size, cell_size, palette.color(m), m == 0))
    extra = (generations - 1) * cell_size // 2 if geometry == 'offset' else 0
    _logger.info("Rendered psi generations (support=%s, generations=%d)", w.support, generations)
    return _rasterize(columns * cell_size + extra, generations * cell_size, max(columns, generations), cells)


########################################Delta squares#######################################
def render_delta_square(t: int, palette: Palette, cell_size: Optional[int] = None) -> RasterImage:
    """
    Renders the 2^t x 2^t delta matrix with square cells, cell (i, j) colored by palette(delta).
    :param t: order, 1 <= t <= 10
    :param palette: color source
    :param cell_size: cell edge in pixels, defaults to max(1, 256 // 2^t)
    :return: the raster image
    """
    if not 1 <= t <= MAX_RENDER_ORDER:
        raise OrderTooLargeError(t, 1, MAX_RENDER_ORDER)
    matrix = delta_matrix(t)
    side = matrix.side
    cell_size = max(1, 256 // side) if cell_size is None else cell_size
    if cell_size < 1:
        raise UsageError(f"cell_size must be positive (received {cell_size}).")
    cells = [CellRect(j * cell_size, i * cell_size, cell_size, palette.color(matrix.entry(i, j)))
             for i in range(side) for j in range(side)]
    _logger.info("Rendered delta square (t=%d, %d cells)", t, len(cells))
    return _rasterize(side * cell_size, side * cell_size, side, cells)


########################################Omega triangles#####################################
def render_omega_triangle(depth: int,
                          palette: Palette,
                          table: PrimeTable,
                          geometry: Geometry = 'offset',
                          cell_size: int = 6) -> RasterImage:
    """
    Renders the first depth rows of the prime-start triangle, each cell colored by palette(omega)
    of its closed-form entry.
    :param depth: number of rows
    :param palette: color source
    :param table: prime table covering index depth
    :param geometry: 'offset' or 'square'
    :param cell_size: cell edge in pixels
    :return: the raster image
    """
    _check_triangle_args(depth, cell_size, geometry)
    cells = []
    for m in range(depth):
        for n in range(1, depth - m + 1):
            x, y = _triangle_origin(m, n, cell_size, geometry)
            cells.append(CellRect(x, y, cell_size, palette.color(entry_closed_form(m, n, table).omega)))
    _logger.info("Rendered omega triangle (depth=%d)", depth)
    return _rasterize(depth * cell_size, depth * cell_size, depth, cells)
