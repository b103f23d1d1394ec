from typing import Any, Iterator

import numpy as np

from ztriangle.patterns.verify.suite_base import InvariantSuite
from ztriangle.resources.f2_engine import (BitSequence, binomial_parity, cycle_length, ducci_iter, hamming_delta,
                                           phi_iter, psi_iter, psi_step, sierpinski_row, smallest_cycle_length)
from ztriangle.resources.sequences_stats import (bit_count64, block_motif, delta_matrix, delta_sequence,
                                                 omega_power_sum)
from ztriangle.resources.z_engine import (build_triangle, entry_closed_form, exponent_slice, left_edge, p_slice,
                                          prime_start)

CYCLE_SEARCH_LIMIT = 201
ORACLE_DEPTH = 64


def _is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


class LeftEdgeOmegaSuite(InvariantSuite):
    """
    omega(d_m) is a power of two, via the closed form for m <= bound and via full iteration of the
    prime-start triangle for m <= min(bound, 256). Both paths must agree.
    """
    name = 'thm1'
    default_bound = 4096
    min_bound = 0
    iteration_limit = 256

    def cases(self) -> Iterator[tuple[Any, bool]]:
        table = self.core.ensure_primes(self.bound + 1)
        closed = [left_edge(m, table).value for m in range(self.bound + 1)]
        for m, entry in enumerate(closed):
            yield ('closed-form', m, entry.omega), _is_power_of_two(entry.omega)

        depth = min(self.bound, self.iteration_limit) + 1
        triangle = build_triangle(prime_start(depth), depth)
        for m, entry in enumerate(triangle.left_column()):
            yield ('iteration', m, entry.omega), entry == closed[m] and _is_power_of_two(entry.omega)


class RowOmegaSuite(InvariantSuite):
    name = 'thm2'
    default_bound = 256

    def cases(self) -> Iterator[tuple[Any, bool]]:
        table = self.core.ensure_primes(self.bound)
        triangle = build_triangle(prime_start(self.bound), self.bound)
        for m in range(self.bound):
            omegas = triangle.omega_row(m)
            expected = left_edge(m, table).value.omega
            yield ('row', m, int(omegas.min()), int(omegas.max())), bool(np.all(omegas == expected))


class CycleSuite(InvariantSuite):
    """
    phi^(2^s) fixes the unit sequence at k whenever k < 2^s <= bound, and the first return of the unit
    sequence happens exactly after L_k steps.
    """
    name = 'thm4'
    default_bound = 256
    min_bound = 2

    def cases(self) -> Iterator[tuple[Any, bool]]:
        power = 2
        while power <= self.bound:
            for k in range(power):
                unit = BitSequence.unit(k)
                yield ('fixed', k, power), phi_iter(unit, power) == unit
            power *= 2

        budget = self.core.config.cycle_budget
        for k in range(min(self.bound, CYCLE_SEARCH_LIMIT)):
            yield ('first-return', k), cycle_length(BitSequence.unit(k), budget) == smallest_cycle_length(k)


class ShiftSuite(InvariantSuite):
    """
    psi^(2^s)(w) = w + (w shifted by 2^s) for s <= 6 on `bound` seeded random supports in [0, 64), and
    the Sierpinski expansion of psi_iter agrees with stepping psi_step up to 64 times.
    """
    name = 'prop1'
    default_bound = 100

    def cases(self) -> Iterator[tuple[Any, bool]]:
        rng = np.random.default_rng(self.core.config.verify_seed)
        for _ in range(self.bound):
            size = int(rng.integers(0, 17))
            w = BitSequence.from_indices(int(i) for i in rng.choice(64, size=size, replace=False))
            for s in range(1, 7):
                shift = 1 << s
                yield ('shift', w.support, s), psi_iter(w, shift) == w.symmetric_difference(w.shifted(shift))

            state = w
            for m in range(1, ORACLE_DEPTH + 1):
                state = psi_step(state)
                yield ('stepping', w.support, m), psi_iter(w, m) == state


class ParitySuite(InvariantSuite):
    name = 'prop2'
    default_bound = 128
    min_bound = 0

    def cases(self) -> Iterator[tuple[Any, bool]]:
        span = range(self.bound + 1)
        for k in span:
            unit = BitSequence.unit(k)
            for m in span:
                row = psi_iter(unit, m)
                yield ('entries', k, m), all(row[n] == binomial_parity(m, n - k) for n in span)
                yield ('diagonal', k, m), row[m] == binomial_parity(m, k)


class SupportSizeSuite(InvariantSuite):
    name = 'prop3'
    default_bound = 1024
    min_bound = 0

    def cases(self) -> Iterator[tuple[Any, bool]]:
        for m in range(self.bound + 1):
            expected = 1 << hamming_delta(m)
            size = len(psi_iter(BitSequence.unit(0), m))
            yield ('support', m, size), size == expected == len(sierpinski_row(m))


class ClosedFormSuite(InvariantSuite):
    """
    entry_closed_form(m, n) equals the iterated entry for all m + n <= bound.
    """
    name = 'closed-vs-iter'
    default_bound = 128

    def cases(self) -> Iterator[tuple[Any, bool]]:
        table = self.core.ensure_primes(self.bound)
        triangle = build_triangle(prime_start(self.bound), self.bound)
        for m in range(self.bound):
            for n in range(1, self.bound - m + 1):
                entry = triangle.entry(m, n)
                yield ('entry', m, n), entry == entry_closed_form(m, n, table) and entry.is_squarefree


class DeltaSuite(InvariantSuite):
    """
    Delta-matrix layout, symmetry and anti-diagonal sums for every order up to bound, plus the fractal
    and increment identities of the binary weight and the 4x4 block motif at order 4.
    """
    name = 'delta'
    default_bound = 8
    max_bound = 10

    def cases(self) -> Iterator[tuple[Any, bool]]:
        for t in range(1, self.bound + 1):
            matrix = delta_matrix(t)
            direct = bit_count64(np.arange(1 << (2 * t), dtype=np.uint64)).reshape(matrix.side, matrix.side)
            yield ('layout', t), bool(np.array_equal(matrix.entries, direct))
            yield ('symmetry', t), matrix.is_symmetric()
            yield ('anti-diagonal', t), bool(np.all(matrix.anti_diagonal_sums() == 2 * t))

        values = np.arange(1 << 16, dtype=np.uint64)
        weights = bit_count64(values)
        for s in range(9):
            yield ('fractal', s), bool(np.array_equal(bit_count64(values << np.uint64(s)), weights))
        for s in range(17):
            low = np.arange(1 << s, dtype=np.uint64)
            yield ('increment', s), bool(np.array_equal(bit_count64(low + np.uint64(1 << s)), bit_count64(low) + 1))

        order_four = delta_matrix(4)
        for big_i in range(4):
            for big_j in range(4):
                motif = block_motif(order_four, big_i, big_j)
                yield ('motif', big_i, big_j), bool(np.all(motif == hamming_delta(big_i) + hamming_delta(big_j)))

        yield ('sequence', 1 << 12), delta_sequence(1 << 12).terms == tuple(hamming_delta(m) for m in range(1 << 12))


class SliceSuite(InvariantSuite):
    """
    For every prime index k <= bound: slicing then phi equals eta then slicing, the integer exponent
    rows follow the absolute-difference game, and nu_{p_k}(d_m) = 1 iff k - 1 lies in S_m.
    """
    name = 'slices'
    default_bound = 64

    def cases(self) -> Iterator[tuple[Any, bool]]:
        start = prime_start(self.bound)
        for k in range(1, self.bound + 1):
            rows = p_slice(start, k, self.bound)
            for m, row in enumerate(rows):
                yield ('phi', k, m), row == phi_iter(rows[0], m).truncated(self.bound - m)
                yield ('left-edge', k, m), row[0] == (1 if (k - 1) in sierpinski_row(m) else 0)
            exponents = exponent_slice(start, k, self.bound)
            yield ('ducci', k), exponents == [ducci_iter(exponents[0], m) for m in range(self.bound)]


class OmegaSumSuite(InvariantSuite):
    """
    sum of omega(d_m) over m < 2^t equals 3^t for t <= bound, with a Pascal-parity brute force as
    the oracle.
    """
    name = 'omega-sum'
    default_bound = 10
    min_bound = 0
    max_bound = 12

    def cases(self) -> Iterator[tuple[Any, bool]]:
        rows = 1 << self.bound
        table = self.core.ensure_primes(rows)

        odd_counts = []
        pascal = np.ones(1, dtype=np.uint8)
        for _ in range(rows):
            odd_counts.append(int(pascal.sum()))
            pascal = np.concatenate(([1], pascal[:-1] ^ pascal[1:], [1])).astype(np.uint8)

        closed = [left_edge(m, table).value.omega for m in range(rows)]
        for t in range(self.bound + 1):
            size = 1 << t
            brute = sum(odd_counts[:size])
            yield ('pascal', t, brute), brute == 3 ** t
            yield ('closed-form', t), sum(closed[:size]) == brute == omega_power_sum(t)
