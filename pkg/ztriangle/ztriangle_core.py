import logging
from pathlib import Path
from typing import Any, Iterable, Literal, Optional

from ztriangle.resources.engine_config import EngineConfig
from ztriangle.resources.errors import UsageError, prime_range_error, unfactorable_error
from ztriangle.resources.exports.image_api import ImageAPI
from ztriangle.resources.exports.triangle_api import TriangleAPI
from ztriangle.resources.f2_engine import BitSequence, cycle_length, smallest_cycle_length
from ztriangle.resources.primes import PrimeTable, build_table, load_table, save_table
from ztriangle.resources.render import (Palette, RasterImage, render_delta_square, render_omega_triangle,
                                        render_p_slice, render_psi_generations)
from ztriangle.resources.sequences_stats import (RangeExtrema, RangeSums, SequenceRecord, delta_sequence,
                                                 natural_left_edge, range_extrema, range_sums, sorted_dedup)
from ztriangle.resources.z_engine import (FactoredInteger, LeftEdgeEntry, TriangleSlice, binomial_values,
                                          build_triangle, entry_closed_form, factor_row, factor_with_table,
                                          fibonacci_values, left_edge, left_edge_from_iteration, natural_values,
                                          parse_start_file, prime_start, z_op)

_logger = logging.getLogger(__name__)

INITIAL_TABLE_SIZE = 1024
SEQUENCE_NAMES = ('delta', 'natural-left-edge', 'natural-left-edge-sorted')


class ZTriangleCore:

    def __init__(self, config: Optional[EngineConfig] = None) -> None:
        _logger.info("Starting ZTriangleCore")

        # Validate config before touching any engine
        self.config = (config or EngineConfig()).validate()

        # Prime table, from the cache directory if one is configured
        _logger.info("Loading prime table...")
        self._table = self._load_or_build_table()
        _logger.info("Loading prime table...success (limit=%d)", self._table.limit)

        self._image_api = ImageAPI(self.config)

        _logger.info("ZTriangleCore ready")

    ########################################General##################################################
    @property
    def prime_table(self) -> PrimeTable:
        return self._table

    def ensure_primes(self, count: int) -> PrimeTable:
        """
        Makes sure the prime table holds at least count primes, growing (and caching) it if allowed
        :param count: required number of primes
        :return: the current table
        """
        if count <= self._table.limit:
            return self._table
        if not self.config.auto_extend:
            raise prime_range_error(count, self._table.limit)
        self._replace_table(self._table.grown(count, self.config.prime_ceiling))
        return self._table

    def ensure_covering(self, value: int) -> PrimeTable:
        """
        Makes sure the largest prime of the table is at least value
        :param value: value whose prime factors must be indexable
        :return: the current table
        """
        if value <= self._table.largest:
            return self._table
        if not self.config.auto_extend:
            raise unfactorable_error(value, self._table.largest)
        self._replace_table(self._table.covering(value, self.config.prime_ceiling))
        return self._table

    def nth_prime(self, k: int) -> int:
        return self.ensure_primes(k).nth(k)

    def _load_or_build_table(self) -> PrimeTable:
        path = self.config.prime_cache_path
        table = load_table(path) if path is not None else None
        if table is None:
            table = build_table(min(INITIAL_TABLE_SIZE, self.config.prime_ceiling), self.config.prime_ceiling)
            if path is not None:
                save_table(table, path)
        return table

    def _replace_table(self, table: PrimeTable) -> None:
        self._table = table
        if self.config.prime_cache_path is not None:
            save_table(table, self.config.prime_cache_path)

    ########################################Triangle#################################################
    def start_row(self, start: str, count: int) -> list[FactoredInteger]:
        """
        Builds a factored start row from its description
        :param start: 'primes', 'naturals', 'fibonacci', 'binomial:N' or 'file:PATH'
        :param count: number of terms for the unbounded starts
        :return: the start row
        """
        if start == 'primes':
            self.ensure_primes(count)
            return prime_start(count)
        if start == 'naturals':
            values = natural_values(count)
        elif start == 'fibonacci':
            values = fibonacci_values(count)
        elif start.startswith('binomial:'):
            try:
                n = int(start.split(':', 1)[1])
            except ValueError:
                raise UsageError(f"Expected binomial:N with an integer N (received {start!r}).")
            if n < 0:
                raise UsageError(f"Binomial rows are indexed from 0 (received {n}).")
            values = binomial_values(n)
        elif start.startswith('file:'):
            values = parse_start_file(Path(start.split(':', 1)[1]))
        else:
            raise UsageError(f"Unknown start {start!r} (expected primes, naturals, fibonacci, binomial:N "
                             f"or file:PATH).")
        if values:
            self.ensure_covering(max(values))
        return factor_row(values, self._table)

    def triangle(self, start: str, depth: int) -> TriangleSlice:
        return build_triangle(self.start_row(start, depth), depth)

    def z(self, a: int, b: int) -> int:
        """
        Z(a, b) = ab / gcd(a, b)^2 for positive integers
        :param a: first operand
        :param b: second operand
        :return: Z(a, b)
        """
        self.ensure_covering(max(a, b))
        result = z_op(factor_with_table(a, self._table), factor_with_table(b, self._table))
        return result.value(self._table)

    def closed_form(self, m: int, n: int) -> FactoredInteger:
        self.ensure_primes(n + m)
        return entry_closed_form(m, n, self._table)

    def left_edge(self, rows: int) -> list[LeftEdgeEntry]:
        if rows < 1:
            raise UsageError(f"rows must be positive (received {rows}).")
        self.ensure_primes(rows)
        return [left_edge(m, self._table) for m in range(rows)]

    def left_edge_from_iteration(self, m: int) -> LeftEdgeEntry:
        self.ensure_primes(m + 1)
        return left_edge_from_iteration(m)

    def export_triangle(self, triangle: TriangleSlice, fmt: Literal['csv', 'json']) -> str:
        return TriangleAPI(self._table).export_triangle(triangle, fmt)

    def export_left_edge(self, entries: list[LeftEdgeEntry], fmt: Literal['table', 'bfile']) -> str:
        api = TriangleAPI(self._table)
        if fmt == 'table':
            return api.left_edge_table(entries)
        if fmt == 'bfile':
            return api.left_edge_bfile(entries)
        raise UsageError(f"Unknown left-edge format {fmt!r}.")

    ########################################Cycles###################################################
    def cycles_for_unit(self, k: int) -> tuple[int, int]:
        """
        Cycle length of the unit sequence at k, by search and by the closed form L_k
        :param k: position of the single one
        :return: (searched length, L_k)
        """
        return cycle_length(BitSequence.unit(k), self.config.cycle_budget), smallest_cycle_length(k)

    def cycles_for_support(self, support: Iterable[int], budget: Optional[int] = None) -> int:
        w = BitSequence.from_indices(support)
        return cycle_length(w, self.config.cycle_budget if budget is None else budget)

    ########################################Sequences################################################
    def sequence(self, name: str, count: int) -> SequenceRecord:
        if name == 'delta':
            return delta_sequence(count)
        if name in ('natural-left-edge', 'natural-left-edge-sorted'):
            self.ensure_covering(count + 1)
            seq = natural_left_edge(count, self._table)
            return sorted_dedup(seq) if name.endswith('-sorted') else seq
        raise UsageError(f"Unknown sequence {name!r} (expected one of {', '.join(SEQUENCE_NAMES)}).")

    ########################################Statistics###############################################
    def stats(self, x: int, y: int) -> tuple[RangeExtrema, RangeSums]:
        self.ensure_primes(y + 1)
        return (range_extrema(x, y, self._table, self.config.threads),
                range_sums(x, y, self._table, self.config.threads))

    ########################################Render###################################################
    def palette(self) -> Palette:
        return Palette(self.config.palette_seed)

    def render(self,
               what: str,
               size: int,
               highlight: Optional[Iterable[tuple[int, int]]] = None,
               cell_size: Optional[int] = None) -> tuple[RasterImage, str, dict[str, Any]]:
        """
        Renders one of the figures
        :param what: 'p-slice:K', 'psi:I,J,...', 'delta-square:T' or 'omega-triangle'
        :param size: rows of the p-slice, psi game and omega triangle (ignored for delta squares)
        :param highlight: (m, n) cells of the p-slice to frame
        :param cell_size: cell edge in pixels, defaults to the configured one (256 // 2^T for delta squares)
        :return: the image, the operation name and its parameters
        """
        kind, _, argument = what.partition(':')
        palette = self.palette()
        edge = self.config.cell_size if cell_size is None else cell_size
        if kind == 'p-slice':
            k = self._int_argument(what, argument)
            marked = sorted(set(highlight or ()))
            image = render_p_slice(k, size, palette, self.config.geometry, edge, marked)
            return image, 'render_p_slice', {'k': k, 'size': size, 'geometry': self.config.geometry,
                                             'cell_size': edge,
                                             'highlight': [list(pair) for pair in marked]}
        if kind == 'psi':
            w = BitSequence.from_indices(self._support_argument(what, argument))
            image = render_psi_generations(w, size, palette, self.config.geometry, edge)
            return image, 'render_psi_generations', {'support': list(w.support), 'generations': size,
                                                     'geometry': self.config.geometry, 'cell_size': edge}
        if kind == 'delta-square':
            t = self._int_argument(what, argument)
            image = render_delta_square(t, palette, cell_size)
            return image, 'render_delta_square', {'t': t, 'cell_size': image.width // image.grid_side}
        if kind == 'omega-triangle' and not argument:
            self.ensure_primes(size)
            image = render_omega_triangle(size, palette, self._table, self.config.geometry, edge)
            return image, 'render_omega_triangle', {'depth': size, 'geometry': self.config.geometry,
                                                    'cell_size': edge}
        raise UsageError(f"Unknown render target {what!r} (expected p-slice:K, psi:I,J,..., delta-square:T "
                         f"or omega-triangle).")

    def save_image(self,
                   image: RasterImage,
                   out: Path,
                   operation: str,
                   parameters: dict[str, Any],
                   formats: Iterable[str] = ('ppm',)) -> list[Path]:
        return self._image_api.save(image, out, operation, parameters, formats)

    @staticmethod
    def _int_argument(what: str, argument: str) -> int:
        try:
            return int(argument)
        except ValueError:
            raise UsageError(f"Render target {what!r} needs an integer argument.")

    @staticmethod
    def _support_argument(what: str, argument: str) -> list[int]:
        try:
            return [int(token) for token in argument.split(',') if token.strip()]
        except ValueError:
            raise UsageError(f"Render target {what!r} needs comma-separated integer indices.")
