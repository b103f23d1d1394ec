"""
GF(2) sequence dynamics.

A finite-support sequence over GF(2) is the coefficient list of a polynomial in F_2[X]. Two games
act on it: psi (left-extending, multiplication by 1+X) and phi (left-edge clipped differences).
Both are expanded through rows of the Sierpinski triangle, whose offsets are the submasks of m.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from ztriangle.resources.errors import CycleBudgetExhausted, UsageError

_logger = logging.getLogger(__name__)

DEFAULT_CYCLE_BUDGET = 2 ** 16


@dataclass(frozen=True)
class BitSequence:
    support: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        previous = -1
        for index in self.support:
            if index <= previous:
                raise UsageError(f"BitSequence support must be strictly increasing and non-negative "
                                 f"(received {self.support}).")
            previous = index

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> 'BitSequence':
        return cls(tuple(sorted(set(indices))))

    @classmethod
    def from_toggles(cls, indices: Iterable[int]) -> 'BitSequence':
        """
        Builds the sequence whose coefficient at n is the parity of the occurrences of n.
        :param indices: indices, possibly repeated
        :return: the reduced sequence
        """
        ones = set()
        for index in indices:
            ones ^= {index}
        return cls(tuple(sorted(ones)))

    @classmethod
    def unit(cls, k: int) -> 'BitSequence':
        return cls((k,))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> 'BitSequence':
        return cls(tuple(n for n, bit in enumerate(bits) if bit & 1))

    def to_bits(self, length: Optional[int] = None) -> list[int]:
        length = (self.support[-1] + 1 if self.support else 0) if length is None else length
        ones = set(self.support)
        return [1 if n in ones else 0 for n in range(length)]

    def truncated(self, length: int) -> 'BitSequence':
        return BitSequence(tuple(n for n in self.support if n < length))

    def shifted(self, offset: int) -> 'BitSequence':
        return BitSequence(tuple(n + offset for n in self.support if n + offset >= 0))

    def symmetric_difference(self, other: 'BitSequence') -> 'BitSequence':
        return BitSequence(tuple(sorted(set(self.support) ^ set(other.support))))

    @cached_property
    def ones(self) -> frozenset[int]:
        return frozenset(self.support)

    def __contains__(self, index: object) -> bool:
        return index in self.ones

    def __getitem__(self, index: int) -> int:
        return 1 if index in self else 0

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self) -> Iterator[int]:
        return iter(self.support)


@dataclass(frozen=True)
class SierpinskiRow:
    m: int
    offsets: tuple[int, ...]

    def __contains__(self, r: object) -> bool:
        return isinstance(r, int) and 0 <= r <= self.m and (r & self.m) == r

    def __len__(self) -> int:
        return len(self.offsets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.offsets)


def binomial_parity(m: int, k: int) -> int:
    """
    Parity of C(m, k), zero outside 0..m. C(m, k) is odd iff k is a submask of m.
    """
    if m < 0 or k < 0 or k > m:
        return 0
    return 1 if (k & m) == k else 0


def hamming_delta(m: int) -> int:
    if m < 0:
        raise UsageError(f"hamming_delta expects a non-negative integer (received {m}).")
    return bin(m).count('1')


def _submasks(m: int) -> list[int]:
    masks = []
    sub = m
    while True:
        masks.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & m
    masks.reverse()
    return masks


def sierpinski_row(m: int) -> SierpinskiRow:
    if m < 0:
        raise UsageError(f"Sierpinski rows are indexed from 0 (received {m}).")
    return SierpinskiRow(m, tuple(_submasks(m)))


def psi_step(w: BitSequence) -> BitSequence:
    # (1 + X) * P_w(X)
    return BitSequence.from_toggles([*w.support, *(n + 1 for n in w.support)])


def psi_iter(w: BitSequence, m: int) -> BitSequence:
    """
    Computes P_w(X) * (1 + X)^m by adding every offset of the m-th Sierpinski row to every index of
    the support and cancelling duplicates mod 2.
    :param w: the starting sequence
    :param m: number of generations
    :return: the m-th generation
    """
    if m < 0:
        raise UsageError(f"psi_iter expects a non-negative generation count (received {m}).")
    offsets = sierpinski_row(m).offsets
    return BitSequence.from_toggles(k + r for k in w.support for r in offsets)


def phi_step(w: BitSequence) -> BitSequence:
    # differences falling on index -1 are discarded
    return BitSequence.from_toggles([*w.support, *(n - 1 for n in w.support if n >= 1)])


def phi_iter(w: BitSequence, m: int) -> BitSequence:
    """
    m-fold composition of phi_step: phi^m(w)(n) is the XOR of w(n + r) over r in S_m.
    :param w: the starting sequence
    :param m: number of generations
    :return: the m-th generation
    """
    if m < 0:
        raise UsageError(f"phi_iter expects a non-negative generation count (received {m}).")
    offsets = sierpinski_row(m).offsets
    return BitSequence.from_toggles(k - r for k in w.support for r in offsets if r <= k)


def smallest_cycle_length(k: int) -> int:
    """
    L_k, the smallest power of two exceeding k.
    """
    if k < 0:
        raise UsageError(f"k must be non-negative (received {k}).")
    return 1 << k.bit_length()


def cycle_length(w: BitSequence, budget: int = DEFAULT_CYCLE_BUDGET) -> int:
    """
    Smallest L >= 1 with phi^L(w) = w, found by direct first-return search.
    :param w: the starting sequence
    :param budget: maximum number of phi steps to try
    :return: the cycle length
    """
    state = w
    for steps in range(1, budget + 1):
        state = phi_step(state)
        if state == w:
            _logger.debug("cycle of length %d found for support %s", steps, w.support)
            return steps
    raise CycleBudgetExhausted(budget)


def ducci_step(values: list[int]) -> list[int]:
    # |w(n+1) - w(n)|, clipped at the left edge
    return [abs(values[n + 1] - values[n]) for n in range(len(values) - 1)]


def ducci_iter(values: list[int], m: int) -> list[int]:
    for _ in range(m):
        values = ducci_step(values)
    return values
