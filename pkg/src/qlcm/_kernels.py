"""Single-prime polynomial kernels on int64 coefficient arrays.

Two interchangeable implementations of each kernel: numba-jitted loops
and a pure-numpy fallback.  Selection happens once at import time: the
jit path is used when numba imports successfully and the environment
variable QLCM_NO_JIT is unset; setting QLCM_NO_JIT=1 (any nonempty
value) forces the numpy path.  Both backends compute identical results
on identical inputs; benchmarks/bench_kernels.py times one against the
other and the test suite asserts agreement.

Conventions: polynomials are ascending int64 arrays with entries in
[0, p); the zero polynomial is an empty array.  Primes stay below 2^30
so every intermediate product fits in int64.
"""

from __future__ import annotations

import os

import numpy as np

_WANT_JIT = not os.environ.get("QLCM_NO_JIT")

HAVE_NUMBA = False
if _WANT_JIT:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# 30-bit primes used for CRT reconstruction, largest first.  The list is
# deterministic so every run reduces modulo the same primes.


def _primes_below_2_30(count: int) -> list[int]:
    out = []
    n = (1 << 30) - 1
    while len(out) < count:
        m = n
        composite = False
        d = 3
        if m % 2 == 0:
            composite = True
        while not composite and d * d <= m:
            if m % d == 0:
                composite = True
            d += 2
        if not composite:
            out.append(n)
        n -= 2
    return out

PRIMES30 = _primes_below_2_30(64)


def coeffs_mod_p(coeffs, p: int) -> np.ndarray:
    """Reduce a sequence of Python integers into [0, p) as an int64 array."""
    return np.array([c % p for c in coeffs], dtype=np.int64)


def _trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


# ----- numpy implementations -----


def _np_polmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a * b) mod p via split convolution (15-bit halves keep int64 exact)."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    blo = b & 0x7FFF
    bhi = b >> 15
    lo = np.convolve(a, blo) % p
    hi = np.convolve(a, bhi) % p
    return _trim((lo + (hi << 15)) % p)


def _np_polmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Remainder of a modulo b, mod p.  b must be nonzero mod p."""
    b = _trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial modulus is zero mod p")
    r = _trim(a.copy())
    db = len(b) - 1
    if db == 0:
        return np.zeros(0, dtype=np.int64)
    inv = pow(int(b[db]), p - 2, p)
    da = len(r) - 1
    while da >= db:
        c = int(r[da]) * inv % p
        if c:
            off = da - db
            r[off : da + 1] = (r[off : da + 1] - c * b) % p
        da -= 1
        while da >= 0 and r[da] == 0:
            da -= 1
    return r[: da + 1].copy()


def _np_euclid_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd of a and b mod p by the Euclidean algorithm."""
    A = _trim(a.copy())
    B = _trim(b.copy())
    if len(A) < len(B):
        A, B = B, A
    while len(B) > 0:
        A, B = B, _np_polmod(A, B, p)
    if len(A) == 0:
        return A
    inv = pow(int(A[-1]), p - 2, p)
    return (A * inv) % p


def _np_poldivexact(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Quotient a / b mod p, or None when the remainder is nonzero."""
    b = _trim(b)
    a = _trim(a.copy())
    if len(b) == 0:
        raise ZeroDivisionError("division by zero polynomial mod p")
    if len(a) == 0:
        return a
    if len(a) < len(b):
        return None
    db = len(b) - 1
    inv = pow(int(b[db]), p - 2, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    r = a
    da = len(r) - 1
    while da >= db:
        c = int(r[da]) * inv % p
        q[da - db] = c
        if c:
            off = da - db
            r[off : da + 1] = (r[off : da + 1] - c * b) % p
        da -= 1
        while da >= 0 and r[da] == 0:
            da -= 1
    if da >= 0:
        return None
    return q


# ----- numba implementations -----

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_inv(x, p):
        # Fermat inverse; p prime, x nonzero mod p
        r = 1
        base = x % p
        e = p - 2
        while e:
            if e & 1:
                r = r * base % p
            base = base * base % p
            e >>= 1
        return r

    @njit(cache=True)
    def _nb_polmul_impl(a, b, p):
        la = a.shape[0]
        lb = b.shape[0]
        out = np.zeros(la + lb - 1, dtype=np.int64)
        for i in range(la):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(lb):
                out[i + j] = (out[i + j] + ai * b[j]) % p
        return out

    @njit(cache=True)
    def _nb_polmod_impl(a, b, p):
        db = b.shape[0] - 1
        r = a.copy()
        inv = _nb_inv(b[db], p)
        da = r.shape[0] - 1
        while da >= 0 and r[da] == 0:
            da -= 1
        while da >= db:
            c = r[da] * inv % p
            if c:
                off = da - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
            da -= 1
            while da >= 0 and r[da] == 0:
                da -= 1
        return r[: da + 1].copy()

    @njit(cache=True)
    def _nb_euclid_impl(a, b, p):
        A = a.copy()
        B = b.copy()
        na = A.shape[0]
        while na > 0 and A[na - 1] == 0:
            na -= 1
        nb = B.shape[0]
        while nb > 0 and B[nb - 1] == 0:
            nb -= 1
        A = A[:na]
        B = B[:nb]
        if na < nb:
            A, B = B, A
        while B.shape[0] > 0:
            if B.shape[0] == 1:
                A = B
                B = np.zeros(0, dtype=np.int64)
                break
            R = _nb_polmod_impl(A, B, p)
            A = B
            B = R
        if A.shape[0] == 0:
            return A
        inv = _nb_inv(A[A.shape[0] - 1], p)
        out = A.copy()
        for i in range(out.shape[0]):
            out[i] = out[i] * inv % p
        return out

    @njit(cache=True)
    def _nb_poldivexact_impl(a, b, p):
        # returns (ok, quotient)
        db = b.shape[0] - 1
        la = a.shape[0]
        q = np.zeros(la - db, dtype=np.int64)
        r = a.copy()
        inv = _nb_inv(b[db], p)
        da = la - 1
        while da >= 0 and r[da] == 0:
            da -= 1
        while da >= db:
            c = r[da] * inv % p
            q[da - db] = c
            if c:
                off = da - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
            da -= 1
            while da >= 0 and r[da] == 0:
                da -= 1
        return da < 0, q

    def _nb_polmul(a, b, p):
        if len(a) == 0 or len(b) == 0:
            return np.zeros(0, dtype=np.int64)
        return _trim(_nb_polmul_impl(a, b, p))

    def _nb_polmod(a, b, p):
        b = _trim(b)
        if len(b) == 0:
            raise ZeroDivisionError("polynomial modulus is zero mod p")
        if len(b) == 1:
            return np.zeros(0, dtype=np.int64)
        if len(a) == 0:
            return a
        return _nb_polmod_impl(a, b, p)

    def _nb_euclid(a, b, p):
        return _nb_euclid_impl(a, b, p)

    def _nb_poldivexact(a, b, p):
        b = _trim(b)
        a = _trim(a.copy())
        if len(b) == 0:
            raise ZeroDivisionError("division by zero polynomial mod p")
        if len(a) == 0:
            return a
        if len(a) < len(b):
            return None
        ok, q = _nb_poldivexact_impl(a, b, p)
        return q if ok else None


if BACKEND == "numba":
    polmul_modp = _nb_polmul
    polmod_modp = _nb_polmod
    euclid_gcd_modp = _nb_euclid
    poldivexact_modp = _nb_poldivexact
else:
    polmul_modp = _np_polmul
    polmod_modp = _np_polmod
    euclid_gcd_modp = _np_euclid_gcd
    poldivexact_modp = _np_poldivexact
