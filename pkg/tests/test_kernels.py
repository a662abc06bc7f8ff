import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

from qlcm import _kernels as K

P = 998244353  # any odd prime well under the slot bound works here
SMALL_P = 101


def trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def ref_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def ref_mod(a, b, p):
    a = trim(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        for i in range(len(b)):
            a[len(a) - len(b) + i] = (a[len(a) - len(b) + i] - c * b[i]) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def arr(cs):
    return np.array(cs, dtype=np.int64)


def test_backend_reports_something():
    assert K.BACKEND in ("numba", "numpy")


def test_primes_pool_is_prime_and_descending():
    from qlcm.numthy import is_prime

    ps = list(K.PRIMES30)
    assert all(is_prime(p) for p in ps)
    assert ps == sorted(ps, reverse=True)
    assert all(p < 2**30 for p in ps)  # products of two residues fit in int64


coefs = st.lists(st.integers(min_value=0, max_value=P - 1), min_size=1, max_size=24)


@given(coefs, coefs)
@settings(max_examples=200, deadline=None)
def test_polmul_matches_reference(a, b):
    got = K.polmul_modp(arr(a), arr(b), P)
    assert trim(got) == ref_mul(a, b, P)


@given(coefs, coefs)
@settings(max_examples=200, deadline=None)
def test_polmod_matches_reference(a, b):
    b = b[:]
    if b[-1] == 0:
        b[-1] = 1
    got = K.polmod_modp(arr(a), arr(b), P)
    assert trim(got) == ref_mod(a, b, P)


@given(coefs, coefs, coefs)
@settings(max_examples=100, deadline=None)
def test_euclid_gcd_divides(a, b, c):
    """gcd(ac, bc) is divisible by c (mod p), and comes out monic."""
    ac = K.polmul_modp(arr(a), arr(c), SMALL_P)
    bc = K.polmul_modp(arr(b), arr(c), SMALL_P)
    if not ac.size or not bc.size or ac[-1] == 0 or bc[-1] == 0:
        return
    g = K.euclid_gcd_modp(ac, bc, SMALL_P)
    assert g.size and g[-1] == 1
    r = K.polmod_modp(g, g, SMALL_P)  # sanity: g mod g = 0
    assert not r.size


@given(coefs, coefs)
@settings(max_examples=200, deadline=None)
def test_poldivexact_inverts_mul(a, b):
    if a[-1] == 0 or b[-1] == 0:
        return
    prod = K.polmul_modp(arr(a), arr(b), P)
    q = K.poldivexact_modp(prod, arr(b), P)
    assert q is not None and list(q) == list(arr(a))


def test_poldivexact_rejects_nondivisor():
    a = arr([1, 0, 1])
    b = arr([1, 1])
    assert K.poldivexact_modp(a, b, P) is None


def test_numpy_fallback_subprocess():
    """QLCM_NO_JIT=1 must select the numpy backend and compute identically."""
    prog = (
        "import numpy as np\n"
        "from qlcm import _kernels as K\n"
        "assert K.BACKEND == 'numpy', K.BACKEND\n"
        "a = np.arange(1, 40, dtype=np.int64)\n"
        "b = np.array([3, 1, 4, 1, 5, 9], dtype=np.int64)\n"
        f"print(list(K.polmul_modp(a, b, {P})))\n"
        f"print(list(K.polmod_modp(a, b, {P})))\n"
    )
    env = dict(os.environ, QLCM_NO_JIT="1")
    out = subprocess.run(
        [sys.executable, "-c", prog], capture_output=True, text=True, env=env
    )
    assert out.returncode == 0, out.stderr
    a = np.arange(1, 40, dtype=np.int64)
    b = np.array([3, 1, 4, 1, 5, 9], dtype=np.int64)
    want = f"{list(K.polmul_modp(a, b, P))}\n{list(K.polmod_modp(a, b, P))}\n"
    assert out.stdout == want
