import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from ztriangle.resources.errors import PrimeCeilingError, PrimeRangeError, prime_range_error

_logger = logging.getLogger(__name__)

CACHE_MAGIC = b'ZTPRIMES'
CACHE_VERSION = 1
DEFAULT_CEILING = 2_000_000
_SEGMENT_SPAN = 1 << 20


def simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p:limit + 1:p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def segmented_sieve(limit: int, span: int = _SEGMENT_SPAN) -> np.ndarray:
    """
    All primes <= limit, sieving odd numbers segment by segment against the base primes up to
    sqrt(limit).
    :param limit: inclusive upper bound
    :param span: number of integers covered by one segment
    :return: the primes in increasing order
    """
    if limit < 2:
        return np.array([], dtype=np.int64)
    base = simple_sieve(math.isqrt(limit) + 1)
    chunks = [np.array([2], dtype=np.int64)]

    low = 3
    while low <= limit:
        high = min(low + span, limit + 1)
        odd_count = (high - low + 1) // 2
        mask = np.ones(odd_count, dtype=bool)
        for p in base[1:]:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2::p] = False
        chunks.append(low + 2 * np.flatnonzero(mask).astype(np.int64))
        low = high if high % 2 == 1 else high + 1
    primes = np.concatenate(chunks)
    return primes[primes <= limit]


def _upper_bound_for_count(count: int) -> int:
    # p_n < n (ln n + ln ln n) for n >= 6
    if count < 6:
        return 13
    n = float(count)
    return int(n * (math.log(n) + math.log(math.log(n)))) + 3


@dataclass(frozen=True, eq=False)
class PrimeTable:
    primes: np.ndarray

    def __post_init__(self) -> None:
        self.primes.setflags(write=False)

    @property
    def limit(self) -> int:
        return int(self.primes.size)

    @property
    def largest(self) -> int:
        return int(self.primes[-1]) if self.primes.size else 1

    def nth(self, k: int) -> int:
        if k < 1:
            raise PrimeRangeError(f"Primes are indexed from 1 (received {k}).")
        if k > self.limit:
            raise prime_range_error(k, self.limit)
        return int(self.primes[k - 1])

    def index_of(self, p: int) -> Optional[int]:
        """
        Returns the 1-based index of p, or None if p is not a prime of the table
        """
        position = int(np.searchsorted(self.primes, p))
        if position < self.limit and int(self.primes[position]) == p:
            return position + 1
        return None

    def head(self, count: int) -> list[int]:
        return [int(p) for p in self.primes[:count]]

    def grown(self, count: int, ceiling: int = DEFAULT_CEILING) -> 'PrimeTable':
        """
        Returns a table holding at least count primes, doubling the current size until it is large
        enough. The current table is left untouched.
        """
        if count <= self.limit:
            return self
        target = max(self.limit, 1)
        while target < count:
            target *= 2
        return build_table(max(count, min(target, ceiling)), ceiling)

    def covering(self, value: int, ceiling: int = DEFAULT_CEILING) -> 'PrimeTable':
        """
        Returns a table whose largest prime is >= value.
        """
        table = self
        while table.largest < value:
            table = table.grown(max(2 * table.limit, 16), ceiling)
        return table


def build_table(count: int, ceiling: int = DEFAULT_CEILING) -> PrimeTable:
    if count < 1:
        raise PrimeRangeError(f"A prime table needs at least one entry (received {count}).")
    if count > ceiling:
        raise PrimeCeilingError(count, ceiling)
    _logger.info("Building prime table (count=%d)...", count)
    primes = segmented_sieve(_upper_bound_for_count(count))[:count]
    _logger.info("Building prime table (count=%d)...success", count)
    return PrimeTable(primes)


def nth_prime(table: PrimeTable, k: int, allow_extension: bool = False,
              ceiling: int = DEFAULT_CEILING) -> int:
    """
    Returns p_k from the table, or from a grown copy if extension is allowed
    :param table: the prime table
    :param k: 1-based prime index
    :param allow_extension: grow the table instead of failing when k exceeds its limit
    :param ceiling: largest table size allowed when growing
    :return: the k-th prime
    """
    if k > table.limit and allow_extension:
        return table.grown(k, ceiling).nth(k)
    return table.nth(k)


def save_table(table: PrimeTable, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    header = CACHE_MAGIC + f' {CACHE_VERSION} {table.limit}\n'.encode('ascii')
    path.write_bytes(header + table.primes.astype('<i8').tobytes())
    _logger.info("Saved %d primes to %s", table.limit, path)


def load_table(path: Path) -> Optional[PrimeTable]:
    """
    Loads a cached table, validating header, length and the first 100 entries against a fresh
    sieve. Returns None if the file is missing or does not validate.
    """
    if not path.is_file():
        return None
    raw = path.read_bytes()
    header, _, body = raw.partition(b'\n')
    fields = header.split(b' ')
    if (len(fields) != 3 or fields[0] != CACHE_MAGIC or fields[1] != str(CACHE_VERSION).encode('ascii')
            or not fields[2].isdigit()):
        _logger.warning("Ignoring prime cache %s: unknown header %r", path, header[:32])
        return None
    count = int(fields[2])
    if len(body) != 8 * count or count < 1:
        _logger.warning("Ignoring prime cache %s: expected %d entries", path, count)
        return None
    primes = np.frombuffer(body, dtype='<i8').astype(np.int64)
    reference = simple_sieve(541)
    checked = min(count, reference.size)
    if not np.array_equal(primes[:checked], reference[:checked]):
        _logger.warning("Ignoring prime cache %s: validation against the built-in sieve failed", path)
        return None
    _logger.info("Loaded %d primes from %s", count, path)
    return PrimeTable(primes)
