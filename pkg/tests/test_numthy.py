import math

import pytest
from hypothesis import given, strategies as st

from qlcm.errors import NonPositive, NotPrime
from qlcm.numthy import (
    BasePDigits,
    base_p_digits,
    divisors,
    euler_totient,
    factorize,
    int_lcm_range,
    is_prime,
    moebius,
    prime_power,
)


def test_divisors_small():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(49) == [1, 7, 49]
    assert divisors(97) == [1, 97]


def test_divisors_rejects_nonpositive():
    with pytest.raises(NonPositive):
        divisors(0)
    with pytest.raises(NonPositive):
        divisors(-5)


@given(st.integers(min_value=1, max_value=5000))
def test_divisors_exactly_the_divisors(n):
    ds = divisors(n)
    assert ds == sorted(ds)
    assert len(set(ds)) == len(ds)
    assert ds == [d for d in range(1, n + 1) if n % d == 0]


def test_factorize():
    assert factorize(1) == []
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(97) == [(97, 1)]


@given(st.integers(min_value=1, max_value=100000))
def test_factorize_reassembles(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f) == n
    assert [p for p, _ in f] == sorted(p for p, _ in f)
    for p, e in f:
        assert is_prime(p) and e >= 1


def test_is_prime_small():
    primes = [p for p in range(2, 60) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(-7)


def test_moebius_values():
    # mu: 1, -1, -1, 0, -1, 1, -1, 0, 0, 1
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@given(st.integers(min_value=1, max_value=2000))
def test_moebius_divisor_sum(n):
    """sum_{d|n} mu(d) = [n == 1], the defining inversion identity."""
    total = sum(moebius(d) for d in divisors(n))
    assert total == (1 if n == 1 else 0)


def test_totient_values():
    assert [euler_totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


@given(st.integers(min_value=1, max_value=2000))
def test_totient_counts_coprimes(n):
    assert euler_totient(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(7) == (7, 1)
    assert prime_power(2048) == (2, 11)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_int_lcm_range_values():
    assert int_lcm_range(1) == 1
    assert int_lcm_range(4) == 12
    assert int_lcm_range(10) == 2520
    with pytest.raises(NonPositive):
        int_lcm_range(0)


def test_int_lcm_range_prefix_consistent():
    for m in range(2, 400):
        v, prev = int_lcm_range(m), int_lcm_range(m - 1)
        assert v % prev == 0
        assert v % m == 0
        assert v == math.lcm(prev, m)


def test_int_lcm_range_deep_no_recursion_limit():
    # a fresh deep call must not blow the interpreter stack
    assert int_lcm_range(6000) % 5999 == 0


def test_base_p_digits_examples():
    d = base_p_digits(10, 3)
    assert d == BasePDigits(p=3, digits=(1, 0, 1), M=2, i0=0)
    assert d.value() == 10
    d = base_p_digits(7, 2)
    assert d.digits == (1, 1, 1) and d.i0 is None and d.M == 2
    d = base_p_digits(5, 2)
    # a_0 = 1 = p - 1, so the first non-maximal digit is a_1
    assert d.digits == (1, 0, 1) and d.i0 == 1


def test_base_p_digits_rejects():
    with pytest.raises(NotPrime):
        base_p_digits(10, 4)
    with pytest.raises(NonPositive):
        base_p_digits(0, 3)


@given(st.integers(min_value=1, max_value=10**6), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_base_p_digits_roundtrip(n, p):
    d = base_p_digits(n, p)
    assert d.value() == n
    assert d.M == len(d.digits) - 1
    assert d.digits[-1] != 0
    if d.i0 is None:
        assert all(a == p - 1 for a in d.digits)
    else:
        assert d.digits[d.i0] != p - 1
        assert all(a == p - 1 for a in d.digits[: d.i0])
