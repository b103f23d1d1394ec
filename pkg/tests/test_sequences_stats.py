import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint

from ztriangle.resources.errors import OrderTooLargeError, PrimeRangeError, UsageError
from ztriangle.resources.f2_engine import hamming_delta
from ztriangle.resources.primes import build_table
from ztriangle.resources.sequences_stats import (PUBLISHED_SORTED_PREFIX, SequenceRecord, bit_count64, block_motif,
                                                 delta_matrix, delta_sequence, natural_left_edge, omega_power_sum,
                                                 prefix_stable, range_extrema, range_sums, sorted_dedup,
                                                 write_bfile)
from ztriangle.resources.z_engine import left_edge

D15 = 32589158477190044730


@settings(max_examples=200)
@given(st.lists(st.integers(min_value=0, max_value=2 ** 64 - 1), min_size=1, max_size=32))
def test_bit_count64(values):
    counts = bit_count64(np.array(values, dtype=np.uint64))
    assert counts.tolist() == [bin(v).count('1') for v in values]


def test_delta_matrix_examples():
    assert delta_matrix(1).entries.tolist() == [[0, 1], [1, 2]]
    order_four = delta_matrix(4)
    assert order_four.entries[0].tolist() == [0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4]
    assert order_four.entry(0, 15) == 4
    assert np.all(order_four.anti_diagonal_sums() == 8)


@pytest.mark.parametrize('t', range(1, 9))
def test_delta_matrix_identities(t):
    matrix = delta_matrix(t)
    side = 1 << t
    assert matrix.side == side
    assert matrix.is_symmetric()
    assert np.all(matrix.anti_diagonal_sums() == 2 * t)
    for i in range(0, side, max(1, side // 16)):
        for j in range(side):
            assert matrix.entry(i, j) == hamming_delta(side * i + j) == hamming_delta(i) + hamming_delta(j)
            assert matrix.entry(i, j) + matrix.entry(side - 1 - j, side - 1 - i) == 2 * t


def test_delta_matrix_order_bounds():
    with pytest.raises(OrderTooLargeError):
        delta_matrix(0)
    with pytest.raises(OrderTooLargeError):
        delta_matrix(13)


def test_block_motif():
    matrix = delta_matrix(4)
    for big_i in range(4):
        for big_j in range(4):
            motif = block_motif(matrix, big_i, big_j)
            assert np.all(motif == hamming_delta(big_i) + hamming_delta(big_j))


def test_delta_fractal_and_increment_identities():
    for t in range(1 << 12):
        for s in range(9):
            assert hamming_delta(t << s) == hamming_delta(t)
    for s in range(13):
        for j in range(1 << s):
            assert hamming_delta((1 << s) + j) == hamming_delta(j) + 1


def test_delta_sequence():
    seq = delta_sequence(16)
    assert seq.name == 'delta'
    assert seq.terms == (0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4)
    assert delta_sequence(0).length == 0
    with pytest.raises(UsageError):
        delta_sequence(-1)


def test_natural_left_edge(table):
    seq = natural_left_edge(15, table)
    assert seq.terms == (1, 2, 3, 6, 5, 15, 105, 70, 1, 5, 33, 55, 65, 273, 1001)
    assert seq.terms[0] == 1 and seq.terms[8] == 1


def test_natural_left_edge_is_stable_under_extension(table):
    short, long = natural_left_edge(60, table), natural_left_edge(110, table)
    assert short.terms == long.terms[:60]


def test_sorted_dedup():
    assert sorted_dedup(SequenceRecord('x', (3, 1, 3, 2))).terms == (1, 2, 3)
    assert sorted_dedup(SequenceRecord('x', ())).terms == ()
    assert sorted_dedup(SequenceRecord('x', ())).name == 'x-sorted'


def test_sorted_natural_left_edge_prefix(table):
    sorted_terms = sorted_dedup(natural_left_edge(500, table))
    assert sorted_terms.terms[:12] == PUBLISHED_SORTED_PREFIX
    assert prefix_stable(SequenceRecord('published', PUBLISHED_SORTED_PREFIX), sorted_terms)
    assert not prefix_stable(SequenceRecord('other', (1, 2, 4)), sorted_terms)


def test_range_extrema(table):
    full = range_extrema(0, 15, table)
    assert (full.min_d, full.min_d_at, full.max_d, full.max_d_at) == (2, 0, D15, 15)
    assert (full.min_omega, full.min_omega_at, full.max_omega, full.max_omega_at) == (1, 0, 16, 15)

    single = range_extrema(0, 0, table)
    assert single.min_d == single.max_d == 2
    assert single.min_omega == single.max_omega == 1

    middle = range_extrema(8, 11, table)
    assert (middle.min_omega, middle.min_omega_at, middle.max_omega, middle.max_omega_at) == (2, 8, 8, 11)
    assert (middle.min_d, middle.max_d) == (46, 160660290)


def test_range_sums(table):
    assert range_sums(0, 15, table).sum_omega == 81
    assert range_sums(0, 3, table).sum_d == 228
    single = range_sums(7, 7, table)
    assert (single.sum_d, single.sum_omega) == (9699690, 8)


def test_range_statistics_do_not_depend_on_threads(table):
    assert range_extrema(0, 300, table, threads=4) == range_extrema(0, 300, table)
    assert range_sums(0, 300, table, threads=4) == range_sums(0, 300, table)


def test_range_errors():
    small = build_table(10)
    with pytest.raises(UsageError):
        range_sums(5, 4, small)
    with pytest.raises(PrimeRangeError):
        range_sums(0, 10, small)


@pytest.mark.parametrize('t', range(11))
def test_omega_power_sum(t):
    assert omega_power_sum(t) == 3 ** t


def test_write_bfile(tmp_path):
    seq = SequenceRecord('delta', (0, 1, 1, 2))
    assert write_bfile(seq) == '0 0\n1 1\n2 1\n3 2\n'
    path = tmp_path / 'b000120.txt'
    assert write_bfile(seq, path, offset=1) == '1 0\n2 1\n3 1\n4 2\n'
    assert path.read_text() == '1 0\n2 1\n3 1\n4 2\n'


def test_range_extrema_omega_comes_from_the_factored_entries(table):
    extrema = range_extrema(40, 70, table)
    omegas = {m: len(factorint(left_edge(m, table).value.value(table))) for m in range(40, 71)}
    assert extrema.min_omega == min(omegas.values())
    assert extrema.max_omega == max(omegas.values())
    assert omegas[extrema.min_omega_at] == extrema.min_omega
    assert omegas[extrema.max_omega_at] == extrema.max_omega
