"""Exact polynomial arithmetic in big-integer evaluation form.

An integer polynomial P is carried around as the single integer
P(2^t) for a fixed slot width t.  Evaluation at a point is a ring
homomorphism, so sums, differences, products, and exact divisions of
polynomials map to the same operations on plain integers, where GMP
does the heavy lifting.  No width bookkeeping is needed while operating
on evaluations; width only matters when decoding back to coefficients,
and decode() always returns the unique coefficient vector with entries
in [-2^(t-1), 2^(t-1)) whose evaluation equals the stored integer.
Callers that know a bound on the true coefficients (or verify results
by multiply-back, as the lcm engine does) therefore get exact answers.

The degree field is an upper bound used to size decodes; slots above
the true degree decode to zero and are trimmed.
"""

from __future__ import annotations

import dataclasses

try:
    import gmpy2
    from gmpy2 import mpz

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _HAVE_GMPY2 = False

    def mpz(x):  # type: ignore
        return int(x)


class DecodeOverflow(Exception):
    """Decoding failed because coefficients exceed the slot width."""


@dataclasses.dataclass(frozen=True)
class Packed:
    """Polynomial as the exact integer value at q = 2^t.

    deg is an upper bound on the degree (-1 for the zero polynomial).
    """

    ev: object  # mpz (or int in the fallback)
    t: int
    deg: int


def pack(coeffs, t: int) -> Packed:
    """Pack a coefficient sequence (ascending) at slot width t."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return Packed(mpz(0), t, -1)
    if _HAVE_GMPY2:
        pos = [int(c) if c > 0 else 0 for c in cs]
        neg = [-int(c) if c < 0 else 0 for c in cs]
        ev = gmpy2.pack(pos, t)
        if any(neg):
            ev -= gmpy2.pack(neg, t)
    else:
        ev = 0
        for i, c in enumerate(cs):
            ev += int(c) << (t * i)
        ev = mpz(ev)
    return Packed(mpz(ev), t, len(cs) - 1)


def decode(pk: Packed) -> list[int]:
    """Canonical signed coefficients of pk; exact when |coeffs| < 2^(t-1)."""
    if pk.ev == 0:
        return []
    t = pk.t
    m = pk.deg + 1
    half = 1 << (t - 1)
    bias = half * (((mpz(1) << (t * m)) - 1) // ((mpz(1) << t) - 1))
    y = pk.ev + bias
    if y < 0:
        raise DecodeOverflow("negative coefficients exceed slot width")
    if _HAVE_GMPY2:
        digits = gmpy2.unpack(mpz(y), t)
    else:
        digits = []
        mask = (1 << t) - 1
        yy = int(y)
        while yy:
            digits.append(yy & mask)
            yy >>= t
        if not digits:
            digits = [0]
    if len(digits) > m:
        raise DecodeOverflow("coefficients exceed slot width")
    out = [int(d) - half for d in digits]
    out.extend([-half] * (m - len(digits)))
    while out and out[-1] == 0:
        out.pop()
    return out


def mul(a: Packed, b: Packed) -> Packed:
    """Exact product; operands must share the slot width."""
    if a.t != b.t:
        raise ValueError("slot width mismatch")
    if a.deg < 0 or b.deg < 0:
        return Packed(mpz(0), a.t, -1)
    return Packed(a.ev * b.ev, a.t, a.deg + b.deg)


def add(a: Packed, b: Packed) -> Packed:
    if a.t != b.t:
        raise ValueError("slot width mismatch")
    return Packed(a.ev + b.ev, a.t, max(a.deg, b.deg))


def sub(a: Packed, b: Packed) -> Packed:
    if a.t != b.t:
        raise ValueError("slot width mismatch")
    return Packed(a.ev - b.ev, a.t, max(a.deg, b.deg))


def mul_qm_minus_one(a: Packed, m: int) -> Packed:
    """Multiply by q^m - 1 (a shift and a subtraction)."""
    return Packed((a.ev << (a.t * m)) - a.ev, a.t, a.deg + m)


def divexact_qm_minus_one(a: Packed, m: int) -> Packed:
    """Exact division by q^m - 1; caller guarantees divisibility."""
    d = (mpz(1) << (a.t * m)) - 1
    if _HAVE_GMPY2:
        q = gmpy2.divexact(a.ev, d)
    else:
        q = a.ev // d
    return Packed(q, a.t, a.deg - m)


def divexact_q_minus_one_times(a: Packed, m: int) -> Packed:
    """Exact division by [m]_q = (q^m - 1)/(q - 1): multiply by q - 1, then divide."""
    num = (a.ev << a.t) - a.ev
    d = (mpz(1) << (a.t * m)) - 1
    if _HAVE_GMPY2:
        q = gmpy2.divexact(num, d)
    else:
        q = num // d
    return Packed(q, a.t, a.deg - (m - 1))


def repack(pk: Packed, t_new: int) -> Packed:
    """Decode and re-pack at a different slot width (decode must be exact)."""
    if pk.t == t_new:
        return pk
    return pack(decode(pk), t_new)


def one(t: int) -> Packed:
    return Packed(mpz(1), t, 0)
