"""
The Z(a, b) = ab / gcd(a, b)^2 automaton on exactly factored integers.

Entries are kept as maps prime-index -> exponent. Z acts exponent-wise as an absolute difference,
so a whole triangle is generated as a stack of exponent matrices (one column per prime index),
each row being |row[:-1] - row[1:]| of its predecessor.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import numpy as np

from ztriangle.resources.errors import (EmptyRowError, InsufficientStartError, UsageError, ZeroInStartError,
                                        prime_range_error, unfactorable_error)
from ztriangle.resources.f2_engine import BitSequence, sierpinski_row
from ztriangle.resources.primes import PrimeTable

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactoredInteger:
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous = 0
        for index, exponent in self.factors:
            if index <= previous or exponent < 1:
                raise UsageError(f"Factors must be sorted by prime index with positive exponents "
                                 f"(received {self.factors}).")
            previous = index

    @classmethod
    def one(cls) -> 'FactoredInteger':
        return cls()

    @classmethod
    def from_map(cls, factors: Mapping[int, int]) -> 'FactoredInteger':
        return cls(tuple(sorted((int(k), int(e)) for k, e in factors.items() if e)))

    @classmethod
    def from_prime_indices(cls, indices: Iterable[int]) -> 'FactoredInteger':
        """
        Squarefree product of the primes with the given (distinct) indices.
        """
        return cls(tuple((k, 1) for k in sorted(set(indices))))

    @classmethod
    def from_int(cls, value: int, table: PrimeTable) -> 'FactoredInteger':
        return factor_with_table(value, table)

    @cached_property
    def exponents(self) -> dict[int, int]:
        return dict(self.factors)

    def exponent(self, prime_index: int) -> int:
        return self.exponents.get(prime_index, 0)

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(exponent == 1 for _, exponent in self.factors)

    @property
    def max_index(self) -> int:
        return self.factors[-1][0] if self.factors else 0

    def value(self, table: PrimeTable) -> int:
        return math.prod(table.nth(k) ** e for k, e in self.factors)

    def factorization(self, table: PrimeTable, separator: str = '·') -> str:
        if not self.factors:
            return '1'
        parts = []
        for k, e in self.factors:
            p = table.nth(k)
            parts.append(str(p) if e == 1 else f"{p}^{e}")
        return separator.join(parts)


@dataclass(frozen=True)
class LeftEdgeEntry:
    m: int
    value: FactoredInteger


@dataclass(frozen=True, eq=False)
class TriangleSlice:
    """
    Rows 0..depth-1 of the triangle grown from `start`. Row m holds N - m entries a_{m,n},
    1 <= n <= N - m, stored as an exponent matrix of shape (N - m, P) whose column j is the
    exponent of the (j+1)-th prime.
    """
    start: tuple[FactoredInteger, ...]
    exponents: tuple[np.ndarray, ...]

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def width(self) -> int:
        return len(self.start)

    def row_length(self, m: int) -> int:
        return self.width - m

    def entry(self, m: int, n: int) -> FactoredInteger:
        """
        Returns a_{m,n}, indexed by m >= 0 and n >= 1
        """
        if not 0 <= m < self.depth or not 1 <= n <= self.row_length(m):
            raise UsageError(f"Entry ({m}, {n}) lies outside the triangle of width {self.width} "
                             f"and depth {self.depth}.")
        return _from_exponent_vector(self.exponents[m][n - 1])

    def row(self, m: int) -> list[FactoredInteger]:
        return [_from_exponent_vector(vector) for vector in self.exponents[m]]

    @property
    def rows(self) -> Iterator[list[FactoredInteger]]:
        return (self.row(m) for m in range(self.depth))

    def omega_row(self, m: int) -> np.ndarray:
        return np.count_nonzero(self.exponents[m], axis=1)

    def left_column(self) -> list[FactoredInteger]:
        return [self.entry(m, 1) for m in range(self.depth)]


def _from_exponent_vector(vector: np.ndarray) -> FactoredInteger:
    nonzero = np.flatnonzero(vector)
    return FactoredInteger(tuple((int(j) + 1, int(vector[j])) for j in nonzero))


def _exponent_matrix(row: list[FactoredInteger]) -> np.ndarray:
    width = max((entry.max_index for entry in row), default=0)
    matrix = np.zeros((len(row), width), dtype=np.int32)
    for n, entry in enumerate(row):
        for k, e in entry.factors:
            matrix[n, k - 1] = e
    return matrix


########################################Z operation#########################################
def z_op(a: FactoredInteger, b: FactoredInteger) -> FactoredInteger:
    """
    Z(a, b) = ab / gcd(a, b)^2, computed exponent-wise: nu_p(Z) = |nu_p(a) - nu_p(b)|.
    :param a: first factor
    :param b: second factor
    :return: Z(a, b)
    """
    ea, eb = a.exponents, b.exponents
    return FactoredInteger.from_map({k: abs(ea.get(k, 0) - eb.get(k, 0)) for k in ea.keys() | eb.keys()})


def next_row(row: list[FactoredInteger]) -> list[FactoredInteger]:
    if len(row) < 2:
        raise EmptyRowError(len(row))
    return [z_op(row[n], row[n + 1]) for n in range(len(row) - 1)]


def build_triangle(start: list[FactoredInteger], depth: int) -> TriangleSlice:
    """
    Generates rows 0..depth-1 of the Z-triangle over the start row
    :param start: row 0, of length N >= depth
    :param depth: number of rows
    :return: the triangle slice
    """
    if depth < 1 or len(start) < depth:
        raise InsufficientStartError(len(start), depth)
    _logger.info("Building triangle (width=%d, depth=%d)...", len(start), depth)
    current = _exponent_matrix(start)
    rows = [current]
    for _ in range(1, depth):
        current = np.abs(current[:-1] - current[1:])
        rows.append(current)
    for matrix in rows:
        matrix.setflags(write=False)
    _logger.info("Building triangle (width=%d, depth=%d)...success", len(start), depth)
    return TriangleSlice(tuple(start), tuple(rows))


########################################Closed form#########################################
def entry_closed_form(m: int, n: int, table: PrimeTable) -> FactoredInteger:
    """
    a_{m,n} of the prime-start triangle as the product of p_{n+r} over r in S_m
    :param m: row index, m >= 0
    :param n: column index, n >= 1
    :param table: prime table covering index n + m
    :return: the squarefree entry
    """
    if m < 0 or n < 1:
        raise UsageError(f"Entries are indexed by m >= 0 and n >= 1 (received ({m}, {n})).")
    if n + m > table.limit:
        raise prime_range_error(n + m, table.limit)
    return FactoredInteger.from_prime_indices(n + r for r in sierpinski_row(m).offsets)


def left_edge(m: int, table: PrimeTable) -> LeftEdgeEntry:
    return LeftEdgeEntry(m, entry_closed_form(m, 1, table))


def omega(a: FactoredInteger) -> int:
    return a.omega


########################################Slices#############################################
def exponent_slice(start: list[FactoredInteger], prime_index: int, depth: int) -> list[list[int]]:
    """
    Rows of n -> nu_p(a_{m,n}) for p the prime_index-th prime, as plain exponents.
    """
    if depth < 1 or len(start) < depth:
        raise InsufficientStartError(len(start), depth)
    current = np.array([entry.exponent(prime_index) for entry in start], dtype=np.int64)
    rows = []
    for _ in range(depth):
        rows.append([int(e) for e in current])
        current = np.abs(current[:-1] - current[1:])
    return rows


def p_slice(start: list[FactoredInteger], prime_index: int, depth: int) -> list[BitSequence]:
    """
    Row m is the GF(2) sequence n -> nu_p(a_{m,n}) mod 2, with column n stored at index n - 1.
    :param start: the start row
    :param prime_index: 1-based index of p
    :param depth: number of rows
    :return: one BitSequence per row
    """
    return [BitSequence.from_bits(e & 1 for e in row) for row in exponent_slice(start, prime_index, depth)]


########################################Start rows##########################################
def factor_with_table(value: int, table: PrimeTable) -> FactoredInteger:
    """
    Factors value by trial division against the table primes
    :param value: positive integer
    :param table: prime table whose primes must cover every prime factor of value
    :return: the factored integer
    """
    if value < 1:
        raise UsageError(f"Only positive integers can be factored (received {value}).")
    remaining = value
    factors: dict[int, int] = {}
    for index, p in enumerate(table.primes, start=1):
        p = int(p)
        if remaining == 1 or p * p > remaining:
            break
        while remaining % p == 0:
            remaining //= p
            factors[index] = factors.get(index, 0) + 1
    if remaining > 1:
        # remaining is either a prime of the table or beyond the table's reach
        index = table.index_of(remaining)
        if index is None:
            raise unfactorable_error(value, table.largest)
        factors[index] = factors.get(index, 0) + 1
    return FactoredInteger.from_map(factors)


def factor_row(values: Iterable[int], table: PrimeTable) -> list[FactoredInteger]:
    row = []
    for position, value in enumerate(values, start=1):
        if value <= 0:
            raise ZeroInStartError(value, position)
        row.append(factor_with_table(value, table))
    return row


def prime_start(count: int) -> list[FactoredInteger]:
    return [FactoredInteger(((n, 1),)) for n in range(1, count + 1)]


def natural_values(count: int) -> list[int]:
    return list(range(1, count + 1))


def binomial_values(n: int) -> list[int]:
    return [math.comb(n, k) for k in range(n + 1)]


def fibonacci_values(count: int) -> list[int]:
    values = []
    a, b = 1, 1
    for _ in range(count):
        values.append(a)
        a, b = b, a + b
    return values


def parse_start_file(path: Path) -> list[int]:
    text = path.read_text(encoding='utf-8')
    tokens = text.replace(',', ' ').split()
    try:
        values = [int(token) for token in tokens]
    except ValueError as e:
        raise UsageError(f"Start file {path} must contain integers only ({e}).")
    if not values:
        raise UsageError(f"Start file {path} is empty.")
    return values


def materialize(row: list[FactoredInteger], table: PrimeTable) -> list[int]:
    return [entry.value(table) for entry in row]


def left_edge_from_iteration(m: int) -> LeftEdgeEntry:
    """
    d_m computed by iterating the prime-start triangle instead of the closed form.
    """
    triangle = build_triangle(prime_start(m + 1), m + 1)
    return LeftEdgeEntry(m, triangle.entry(m, 1))
