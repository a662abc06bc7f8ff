"""Elementary integer number theory helpers.

Divisor enumeration, the Moebius function, prime-power detection, base-p
digit expansions, and exact big-integer lcm of an initial range.  All
functions are pure and operate on plain Python integers; ranges here are
desk scale (n up to a few thousand), so trial division is enough.
"""

from __future__ import annotations

import dataclasses
import math

from .errors import NonPositive, NotPrime


def _check_positive(n: int, name: str = "n") -> None:
    if n < 1:
        raise NonPositive(f"{name} must be >= 1, got {n}")


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order.

    >>> divisors(12)
    [1, 2, 3, 4, 6, 12]
    >>> divisors(7)
    [1, 7]
    """
    _check_positive(n)
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs in increasing prime order.

    >>> factorize(12)
    [(2, 2), (3, 1)]
    >>> factorize(1)
    []
    """
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division up to sqrt(n).

    >>> [m for m in range(2, 20) if is_prime(m)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def moebius(n: int) -> int:
    """Moebius function: (-1)^k for a product of k distinct primes, else 0.

    >>> [moebius(n) for n in range(1, 11)]
    [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    """
    _check_positive(n)
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def euler_totient(n: int) -> int:
    """Count of integers in [1, n] coprime to n, from the factorization of n.

    >>> [euler_totient(n) for n in (1, 2, 9, 10, 12)]
    [1, 1, 6, 4, 4]
    """
    _check_positive(n)
    t = n
    for p, _ in factorize(n):
        t -= t // p
    return t


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, r) with n = p^r when n >= 2 is a prime power, else None.

    1 is not a prime power here: callers rely on that to keep the d = 1
    cyclotomic case (which evaluates to 0 at q = 1) out of products.

    >>> prime_power(8)
    (2, 3)
    >>> prime_power(6) is None and prime_power(1) is None
    True
    """
    _check_positive(n)
    fac = factorize(n)
    if len(fac) == 1:
        return fac[0]
    return None


@dataclasses.dataclass(frozen=True)
class BasePDigits:
    """Base-p expansion n = sum a_i p^i, least significant digit first.

    M is the index of the most significant digit; i0 is the least index i
    with a_i != p - 1, or None when every digit equals p - 1 (that is,
    when n = p^(M+1) - 1).
    """

    p: int
    digits: tuple[int, ...]
    M: int
    i0: int | None

    def value(self) -> int:
        """Reconstruct n from the digits."""
        return sum(a * self.p**i for i, a in enumerate(self.digits))


def base_p_digits(n: int, p: int) -> BasePDigits:
    """Digit expansion of n in base p with the M and i0 indices filled in.

    >>> base_p_digits(5, 2)
    BasePDigits(p=2, digits=(1, 0, 1), M=2, i0=1)
    >>> base_p_digits(7, 2).i0 is None
    True
    """
    _check_positive(n)
    if not is_prime(p):
        raise NotPrime(f"p must be prime, got {p}")
    digits = []
    m = n
    while m:
        digits.append(m % p)
        m //= p
    i0 = None
    for i, a in enumerate(digits):
        if a != p - 1:
            i0 = i
            break
    return BasePDigits(p=p, digits=tuple(digits), M=len(digits) - 1, i0=i0)


_lcm_run = [1, 1]  # _lcm_run[m] = lcm(1..m); index 0 unused


def int_lcm_range(m: int) -> int:
    """lcm(1, 2, ..., m) as an exact integer; prefixes are cached.

    >>> int_lcm_range(4)
    12
    >>> int_lcm_range(10)
    2520
    """
    _check_positive(m, "m")
    while len(_lcm_run) <= m:
        _lcm_run.append(math.lcm(_lcm_run[-1], len(_lcm_run)))
    return _lcm_run[m]
