"""CRT candidates for gcds of integer polynomials.

For inputs whose leading coefficients are units mod p, the gcd of the
reductions mod p is divisible by the reduction of the true gcd, so the
true gcd degree is the minimum observed over primes and images of that
minimal degree combine by CRT to the true gcd once enough primes have
been used.  This module only produces stabilized candidates (two
consecutive symmetric lifts agreeing); callers must certify a candidate
by exact divide-back, and can pull further candidates (more primes)
when a certificate fails.  Unlucky primes show up as images of too-high
degree and are discarded by the degree filter.
"""

from __future__ import annotations

from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .errors import InternalError
from .numthy import is_prime


def prime_stream() -> Iterator[int]:
    """Deterministic stream of 30-bit primes, largest first."""
    yield from _kernels.PRIMES30
    n = _kernels.PRIMES30[-1] - 2
    while n > (1 << 29):
        if is_prime(n):
            yield n
        n -= 2


def _crt_merge(r: list[int], mod: int, img: np.ndarray, p: int) -> tuple[list[int], int]:
    """Extend residues r (mod `mod`) by the image mod p."""
    inv = pow(mod % p, p - 2, p)
    out = []
    for i in range(len(r)):
        s = int(img[i]) if i < len(img) else 0
        delta = (s - r[i]) % p
        out.append(r[i] + mod * (delta * inv % p))
    return out, mod * p


def _symmetric(r: list[int], mod: int) -> list[int]:
    half = mod >> 1
    return [(c + half) % mod - half for c in r]


def gcd_candidates(
    red_a: Callable[[int], np.ndarray],
    red_b: Callable[[int], np.ndarray],
    primes: Iterator[int],
    max_primes: int = 48,
    lc_scale: int = 1,
) -> Iterator[list[int]]:
    """Yield stabilized candidate gcds of two polynomials given mod-p images.

    red_a(p), red_b(p) must return the int64 reductions mod p, or an
    empty array to veto a prime (reduction degenerate).  Yields
    ascending-coefficient integer lists (symmetric lift of the monic
    images times lc_scale); the caller certifies each candidate and
    resumes for more primes when certification fails.  lc_scale must be
    a multiple of the true gcd's leading coefficient, e.g.
    gcd(lc(a), lc(b)), so that the lifted images are the reductions of
    one integer polynomial; the candidate is then that multiple of the
    primitive gcd.  Raises InternalError when max_primes primes were
    consumed without the caller accepting a candidate.
    """
    best_deg: int | None = None
    residues: list[int] = []
    mod = 1
    last_lift: list[int] | None = None
    used = 0
    for p in primes:
        if used >= max_primes:
            break
        a_p = red_a(p)
        b_p = red_b(p)
        if len(a_p) == 0 or len(b_p) == 0 or lc_scale % p == 0:
            # input collapsed mod p (content multiple); skip the prime
            continue
        used += 1
        g_p = _kernels.euclid_gcd_modp(a_p, b_p, p)
        d = len(g_p) - 1
        if d == 0:
            yield [1]
            continue
        if lc_scale != 1:
            g_p = g_p * (lc_scale % p) % p
        if best_deg is None or d < best_deg:
            best_deg = d
            residues = [int(c) for c in g_p]
            mod = p
            last_lift = None
            continue
        if d > best_deg:
            continue
        residues, mod = _crt_merge(residues, mod, g_p, p)
        lift = _symmetric(residues, mod)
        if lift == last_lift:
            yield lift
        last_lift = lift
    raise InternalError("modular gcd failed to stabilize within the prime budget")
