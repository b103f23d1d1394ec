import pytest
from hypothesis import given, settings, strategies as st
from sympy import binomial

from ztriangle.resources.errors import CycleBudgetExhausted, UsageError
from ztriangle.resources.f2_engine import (BitSequence, binomial_parity, cycle_length, ducci_iter, ducci_step,
                                           hamming_delta, phi_iter, phi_step, psi_iter, psi_step, sierpinski_row,
                                           smallest_cycle_length)

supports = st.sets(st.integers(min_value=0, max_value=63), max_size=16)


def _seq(*indices):
    return BitSequence.from_indices(indices)


def test_bit_sequence_rejects_unsorted_support():
    with pytest.raises(UsageError):
        BitSequence((4, 1))


def test_bit_sequence_bits():
    w = BitSequence.from_bits([0, 1, 0, 0, 1])
    assert w.support == (1, 4)
    assert w.to_bits() == [0, 1, 0, 0, 1]
    assert w.to_bits(7) == [0, 1, 0, 0, 1, 0, 0]
    assert w[4] == 1 and w[3] == 0
    assert 1 in w and 2 not in w
    assert BitSequence.from_toggles([1, 4, 1, 2]) == _seq(2, 4)


@pytest.mark.parametrize('m, k, expected', [(0, 0, 1), (7, 0, 1), (3, 1, 1), (4, 2, 0), (4, 5, 0), (4, -1, 0)])
def test_binomial_parity_examples(m, k, expected):
    assert binomial_parity(m, k) == expected


def test_binomial_parity_matches_pascal_recurrence():
    row = [1]
    for m in range(513):
        assert [binomial_parity(m, k) for k in range(m + 1)] == row
        row = [1] + [row[k] ^ row[k + 1] for k in range(m)] + [1]


@settings(max_examples=200)
@given(st.integers(min_value=0, max_value=80), st.integers(min_value=0, max_value=80))
def test_binomial_parity_against_sympy(m, k):
    expected = int(binomial(m, k) % 2) if k <= m else 0
    assert binomial_parity(m, k) == expected


@pytest.mark.parametrize('m, offsets', [(0, (0,)), (3, (0, 1, 2, 3)), (5, (0, 1, 4, 5)), (10, (0, 2, 8, 10))])
def test_sierpinski_row(m, offsets):
    row = sierpinski_row(m)
    assert row.offsets == offsets
    assert all(r in row for r in offsets)
    assert 6 not in sierpinski_row(5)


def test_sierpinski_row_size_is_power_of_delta():
    for m in range(1025):
        row = sierpinski_row(m)
        assert len(row) == 2 ** hamming_delta(m)
        assert 0 in row and m in row


@pytest.mark.parametrize('m, expected', [(0, 0), (1, 1), (15, 4), (16, 1), (2047, 11)])
def test_hamming_delta(m, expected):
    assert hamming_delta(m) == expected


def test_hamming_delta_of_powers_of_two():
    assert all(hamming_delta(1 << s) == 1 for s in range(64))


def test_psi_step_examples():
    assert psi_step(_seq(1, 4)) == _seq(1, 2, 4, 5)
    assert psi_step(BitSequence()) == BitSequence()

    w = _seq(1, 4)
    for _ in range(6):
        w = psi_step(w)
    assert w == _seq(1, 3, 4, 5, 6, 7, 8, 10)


def test_psi_iter_examples():
    assert psi_iter(_seq(1, 4), 2) == _seq(1, 3, 4, 6)
    assert psi_iter(_seq(1, 4), 0) == _seq(1, 4)
    assert psi_iter(_seq(1, 4), 8) == _seq(1, 4, 9, 12)
    assert psi_iter(BitSequence.unit(3), 5) == _seq(*(3 + r for r in (0, 1, 4, 5)))


@settings(max_examples=100, deadline=None)
@given(supports, st.integers(min_value=0, max_value=64))
def test_psi_iter_matches_stepping(support, m):
    w = BitSequence.from_indices(support)
    stepped = w
    for _ in range(m):
        stepped = psi_step(stepped)
    assert psi_iter(w, m) == stepped


@settings(max_examples=100, deadline=None)
@given(supports, st.integers(min_value=1, max_value=6))
def test_psi_shift_identity(support, s):
    w = BitSequence.from_indices(support)
    assert psi_iter(w, 2 ** s) == w.symmetric_difference(w.shifted(2 ** s))


def test_psi_iter_of_unit_is_binomial_parity():
    for k in range(0, 40):
        for m in range(0, 40):
            row = psi_iter(BitSequence.unit(k), m)
            assert all(row[n] == binomial_parity(m, n - k) for n in range(90))


def test_phi_step_examples():
    assert phi_step(_seq(0)) == _seq(0)
    assert phi_step(_seq(1)) == _seq(0, 1)
    assert phi_step(BitSequence()) == BitSequence()


def test_phi_iter_examples():
    assert phi_iter(_seq(26), 32) == _seq(26)
    assert phi_iter(_seq(1), 1) == _seq(0, 1)
    for k in range(64):
        assert phi_iter(BitSequence.unit(k), 64) == BitSequence.unit(k)


@settings(max_examples=100, deadline=None)
@given(supports, st.integers(min_value=0, max_value=40))
def test_phi_iter_matches_stepping(support, m):
    w = BitSequence.from_indices(support)
    stepped = w
    for _ in range(m):
        stepped = phi_step(stepped)
    assert phi_iter(w, m) == stepped


@pytest.mark.parametrize('k, expected', [(0, 1), (1, 2), (4, 8), (26, 32), (31, 32), (32, 64)])
def test_cycle_length_of_units(k, expected):
    assert smallest_cycle_length(k) == expected
    assert cycle_length(BitSequence.unit(k)) == expected


def test_cycle_length_of_units_up_to_200():
    for k in range(201):
        assert cycle_length(BitSequence.unit(k)) == smallest_cycle_length(k)


def test_cycle_length_budget():
    with pytest.raises(CycleBudgetExhausted):
        cycle_length(BitSequence.unit(26), budget=31)


def test_ducci_game():
    assert ducci_step([3, 1, 4, 1, 5]) == [2, 3, 3, 4]
    assert ducci_iter([3, 1, 4, 1, 5], 2) == [1, 0, 1]
    assert ducci_iter([3, 1], 0) == [3, 1]
    assert ducci_step([7]) == []


def test_negative_arguments_are_rejected():
    with pytest.raises(UsageError):
        hamming_delta(-1)
    with pytest.raises(UsageError):
        sierpinski_row(-1)
    with pytest.raises(UsageError):
        psi_iter(BitSequence(), -1)
