import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, TypeVar, Union

import numpy as np

from ztriangle.resources.errors import OrderTooLargeError, UsageError, prime_range_error
from ztriangle.resources.f2_engine import hamming_delta
from ztriangle.resources.primes import PrimeTable
from ztriangle.resources.z_engine import build_triangle, factor_row, left_edge, natural_values

_logger = logging.getLogger(__name__)

MAX_DELTA_ORDER = 12
PUBLISHED_SORTED_PREFIX = (1, 2, 3, 5, 6, 15, 17, 33, 55, 65, 70, 105)

T = TypeVar('T')

_S55 = np.uint64(0x5555555555555555)
_S33 = np.uint64(0x3333333333333333)
_S0F = np.uint64(0x0F0F0F0F0F0F0F0F)
_S01 = np.uint64(0x0101010101010101)


def bit_count64(arr: np.ndarray) -> np.ndarray:
    """
    Vectorized binary weight of non-negative integers below 2^64 (SWAR popcount).
    """
    arr = arr.astype(np.uint64)
    arr = arr - ((arr >> np.uint64(1)) & _S55)
    arr = (arr & _S33) + ((arr >> np.uint64(2)) & _S33)
    arr = (arr + (arr >> np.uint64(4))) & _S0F
    return ((arr * _S01) >> np.uint64(56)).astype(np.int64)


@dataclass(frozen=True, eq=False)
class DeltaMatrix:
    t: int
    entries: np.ndarray

    @property
    def side(self) -> int:
        return 1 << self.t

    def entry(self, i: int, j: int) -> int:
        return int(self.entries[i, j])

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def anti_diagonal_sums(self) -> np.ndarray:
        """
        entry(i, j) + entry(2^t-1-j, 2^t-1-i) for every cell.
        """
        return self.entries + self.entries[::-1, ::-1].T

    def block(self, big_i: int, big_j: int, size: int) -> np.ndarray:
        return self.entries[big_i * size:(big_i + 1) * size, big_j * size:(big_j + 1) * size]


@dataclass(frozen=True)
class SequenceRecord:
    name: str
    terms: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class RangeExtrema:
    x: int
    y: int
    min_d: int
    min_d_at: int
    max_d: int
    max_d_at: int
    min_omega: int
    min_omega_at: int
    max_omega: int
    max_omega_at: int


@dataclass(frozen=True)
class RangeSums:
    x: int
    y: int
    sum_d: int
    sum_omega: int


########################################Delta###############################################
def delta_matrix(t: int) -> DeltaMatrix:
    """
    The binary weights of 0..4^t-1 laid out in rows of length 2^t
    :param t: order, 1 <= t <= 12
    :return: the delta matrix
    """
    if not 1 <= t <= MAX_DELTA_ORDER:
        raise OrderTooLargeError(t, 1, MAX_DELTA_ORDER)
    side = 1 << t
    # the row index fills the high t bits and the column index the low t bits of 2^t*i + j
    weights = bit_count64(np.arange(side, dtype=np.uint64))
    entries = (weights[:, None] + weights[None, :]).astype(np.int8)
    entries.setflags(write=False)
    return DeltaMatrix(t, entries)


def block_motif(matrix: DeltaMatrix, big_i: int, big_j: int, size: int = 4) -> np.ndarray:
    """
    Difference between block (I, J) and the north-west block; constant delta(I) + delta(J)
    whenever the layout holds.
    """
    return matrix.block(big_i, big_j, size).astype(np.int64) - matrix.block(0, 0, size).astype(np.int64)


def delta_sequence(count: int) -> SequenceRecord:
    if count < 0:
        raise UsageError(f"count must be non-negative (received {count}).")
    terms = bit_count64(np.arange(count, dtype=np.uint64))
    return SequenceRecord('delta', tuple(int(d) for d in terms))


########################################Left edges###########################################
def natural_left_edge(count: int, table: PrimeTable) -> SequenceRecord:
    """
    Left edge of the triangle grown from the positive integers 1..count+1
    :param count: number of terms
    :param table: prime table covering the primes up to count + 1
    :return: the sequence record
    """
    if count < 1:
        raise UsageError(f"count must be positive (received {count}).")
    start = factor_row(natural_values(count + 1), table)
    triangle = build_triangle(start, count)
    terms = tuple(entry.value(table) for entry in triangle.left_column())
    return SequenceRecord('natural-left-edge', terms)


def sorted_dedup(seq: SequenceRecord) -> SequenceRecord:
    return SequenceRecord(f'{seq.name}-sorted', tuple(sorted(set(seq.terms))))


def prefix_stable(reference: SequenceRecord, candidate: SequenceRecord, length: int = 12) -> bool:
    return reference.terms[:length] == candidate.terms[:length]


########################################Range statistics####################################
def _map_range(fn: Callable[[int], T], x: int, y: int, threads: int) -> list[T]:
    if threads <= 1:
        return [fn(m) for m in range(x, y + 1)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, range(x, y + 1)))


def _check_range(x: int, y: int, table: PrimeTable) -> None:
    if x < 0 or x > y:
        raise UsageError(f"Expected 0 <= x <= y (received x={x}, y={y}).")
    if y + 1 > table.limit:
        raise prime_range_error(y + 1, table.limit)


def range_extrema(x: int, y: int, table: PrimeTable, threads: int = 1) -> RangeExtrema:
    """
    Exact extrema of d_m and omega(d_m) over x <= m <= y via the closed form
    :param x: first row
    :param y: last row
    :param table: prime table covering index y + 1
    :param threads: worker cap
    :return: the extrema, each with the first m where it is attained
    """
    _check_range(x, y, table)
    entries = _map_range(lambda m: left_edge(m, table).value, x, y, threads)
    values = [entry.value(table) for entry in entries]
    omegas = [entry.omega for entry in entries]

    def first_at(series: list[int], target: int) -> int:
        return x + series.index(target)

    min_d, max_d = min(values), max(values)
    min_omega, max_omega = min(omegas), max(omegas)
    return RangeExtrema(x, y,
                        min_d, first_at(values, min_d),
                        max_d, first_at(values, max_d),
                        min_omega, first_at(omegas, min_omega),
                        max_omega, first_at(omegas, max_omega))


def range_sums(x: int, y: int, table: PrimeTable, threads: int = 1) -> RangeSums:
    _check_range(x, y, table)
    entries = _map_range(lambda m: left_edge(m, table).value, x, y, threads)
    return RangeSums(x, y,
                     sum(entry.value(table) for entry in entries),
                     sum(entry.omega for entry in entries))


def omega_power_sum(t: int) -> int:
    """
    Sum of 2^delta(m) over m < 2^t, i.e. the total number of odd entries in the first 2^t rows of
    Pascal's triangle.
    """
    return sum(1 << hamming_delta(m) for m in range(1 << t))


########################################Export##############################################
def write_bfile(seq: SequenceRecord, path: Optional[Union[str, Path]] = None, offset: int = 0) -> str:
    """
    Renders the sequence in OEIS b-file form ("index value" per line), optionally writing it
    :param seq: the sequence
    :param path: optional output file
    :param offset: index of the first term
    :return: the b-file text
    """
    text = ''.join(f"{offset + i} {term}\n" for i, term in enumerate(seq.terms))
    if path is not None:
        Path(path).write_text(text, encoding='utf-8')
        _logger.info("Wrote %d terms of %s to %s", seq.length, seq.name, path)
    return text
