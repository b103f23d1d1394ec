import numpy as np
import pytest
from sympy import isprime, prime, primerange

from ztriangle.resources.errors import PrimeCeilingError, PrimeRangeError
from ztriangle.resources.primes import (CACHE_MAGIC, build_table, load_table, nth_prime, save_table,
                                        segmented_sieve, simple_sieve)


def test_simple_sieve():
    assert simple_sieve(1).size == 0
    assert simple_sieve(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize('limit, span', [(2, 8), (3, 8), (100, 8), (1000, 64), (10 ** 5, 1000), (10 ** 5, 1 << 20)])
def test_segmented_sieve_matches_sympy(limit, span):
    assert segmented_sieve(limit, span).tolist() == list(primerange(2, limit + 1))


@pytest.mark.parametrize('k, expected', [(1, 2), (2, 3), (8, 19), (16, 53), (26, 101), (100, 541)])
def test_nth_prime_examples(table, k, expected):
    assert nth_prime(table, k) == expected
    assert table.nth(k) == prime(k)


def test_table_matches_sympy_up_to_ten_thousand():
    table = build_table(10 ** 4)
    assert table.limit == 10 ** 4
    primes = table.head(10 ** 4)
    assert primes == list(primerange(2, primes[-1] + 1))
    assert all(isprime(p) for p in primes[::97])
    assert all(a < b for a, b in zip(primes, primes[1:]))


def test_build_table_is_deterministic():
    assert np.array_equal(build_table(5000).primes, build_table(5000).primes)


def test_single_prime_table():
    table = build_table(1)
    assert table.limit == 1
    assert table.nth(1) == 2


def test_table_is_read_only(table):
    with pytest.raises(ValueError):
        table.primes[0] = 4


def test_out_of_range_without_extension():
    table = build_table(10)
    with pytest.raises(PrimeRangeError):
        nth_prime(table, 11)
    with pytest.raises(PrimeRangeError):
        table.nth(0)


def test_extension_grows_a_new_table():
    table = build_table(10)
    assert nth_prime(table, 100, allow_extension=True) == 541
    assert table.limit == 10
    grown = table.grown(100)
    assert grown.limit >= 100


def test_ceiling():
    with pytest.raises(PrimeCeilingError):
        build_table(2000, ceiling=1000)
    with pytest.raises(PrimeCeilingError):
        build_table(10).grown(5000, ceiling=1000)


def test_index_of_and_covering(table):
    assert table.index_of(101) == 26
    assert table.index_of(100) is None
    small = build_table(10)
    assert small.largest == 29
    covered = small.covering(1000)
    assert covered.largest >= 1000
    assert covered.index_of(997) == 168


def test_cache_round_trip(tmp_path, table):
    path = tmp_path / 'cache' / 'primes.bin'
    save_table(table, path)
    assert path.read_bytes().startswith(CACHE_MAGIC + b' 1 4096\n')
    loaded = load_table(path)
    assert np.array_equal(loaded.primes, table.primes)


def test_cache_validation(tmp_path):
    assert load_table(tmp_path / 'missing.bin') is None

    bad_header = tmp_path / 'header.bin'
    bad_header.write_bytes(b'PRIMES 1 1\n' + np.array([2], dtype='<i8').tobytes())
    assert load_table(bad_header) is None

    truncated = tmp_path / 'truncated.bin'
    truncated.write_bytes(CACHE_MAGIC + b' 1 3\n' + np.array([2, 3], dtype='<i8').tobytes())
    assert load_table(truncated) is None

    corrupted = tmp_path / 'corrupted.bin'
    corrupted.write_bytes(CACHE_MAGIC + b' 1 3\n' + np.array([2, 3, 7], dtype='<i8').tobytes())
    assert load_table(corrupted) is None
