"""Pairwise lcm folding with a certified fast engine for large operands.

Small operands fold through the textbook primitive-PRS route in
polyarith.  Once degrees grow past SMALL_DEG the fold switches to
packed evaluation form (see _fastpoly) and computes each step's
cofactor c = b / gcd(L, b) from modular images, certifying the step
with exact integer identities rather than trusting the images:

* every division performed is proven by an exact multiply-back on
  evaluations, so "h divides b" style facts are facts, not hopes;
* gcd candidates obey the mod-p degree lower bound, and divisibility
  of the discarded gcd into L is rechecked modulo spare primes that
  never feed the CRT;
* the slot width used for the final decode is validated against an
  accumulated l1-norm bound, and the whole fold restarts at doubled
  width in the (never yet observed) case the bound is not met.

The accelerating observation: if h is any common divisor of the new
element b and of some polynomial already known to divide the running
lcm L, then with u = b/h and X = L/h the true cofactor is

    c  =  b / gcd(L, b)  =  u / gcd(u, X),

which follows by comparing multiplicities of any irreducible factor:
v(u / gcd(u, X)) = max(0, v(u) - v(X)) = max(0, v(b) - v(L)) = v(c),
using v(X) = v(L) - v(h) and v(u) = v(b) - v(h).  When consecutive
list elements share a large common factor -- as the rows of one
q-binomial recurrence chain do -- u is tiny, and the expensive gcd
against L collapses to a gcd of a tiny u against images of
V = L / b_prev that the engine maintains incrementally mod each
working prime.  For unrelated consecutive elements h degenerates to 1
and the step takes the direct (slower, equally certified) route.
"""

from __future__ import annotations

import itertools
import logging
import math

import numpy as np

from . import _fastpoly, _kernels, _modgcd
from ._fastpoly import Packed
from .errors import InternalError
from .polyarith import IntPoly, ONE, poly_divmod, poly_lcm, primitive_positive

log = logging.getLogger(__name__)

SMALL_DEG = 64

_N_POOL = 12   # primes available to the CRT
_N_SPARE = 4   # primes reserved for independent divisibility checks


class _WidthFail(Exception):
    """Slot width proved too small for a rigorous decode; retry wider."""


def _l1_bits(cs) -> int:
    return (sum(abs(c) for c in cs)).bit_length()


def _red_or_veto(cs: list[int], p: int) -> np.ndarray:
    """Reduction mod p, or an empty veto when the leading coeff vanishes."""
    img = _kernels.coeffs_mod_p(cs, p)
    if len(img) and img[-1] == 0:
        return np.zeros(0, dtype=np.int64)
    return img


def _series_quotient(num: list[int], den: list[int], s: int) -> list[int] | None:
    """Quotient of num by den when exact and of degree s, from top coefficients.

    Works on the reversed polynomials: the first s+1 coefficients of
    rev(num)/rev(den) determine the whole quotient when the division is
    exact.  Returns None when a division step is non-integral; an exact
    multiply-back by the caller is still required, since only the top
    window of num is inspected here.
    """
    rn = num[::-1]
    rd = den[::-1]
    lead = rd[0]
    q = [0] * (s + 1)
    for j in range(s + 1):
        acc = rn[j] if j < len(rn) else 0
        top = min(j, len(rd) - 1)
        for i in range(1, top + 1):
            acc -= rd[i] * q[j - i]
        if lead != 1:
            c, r = divmod(acc, lead)
            if r:
                return None
            q[j] = c
        else:
            q[j] = acc
    return q[::-1]


def _certified_quotient(
    num_cs: list[int], num_pk: Packed | None, den_cs: list[int], t: int
) -> list[int] | None:
    """num/den with an exact multiply-back proof, or None when den does not divide."""
    s = (len(num_cs) - 1) - (len(den_cs) - 1)
    if s < 0:
        return None
    q = _series_quotient(num_cs, den_cs, s)
    if q is None:
        return None
    # verify at a width provably wide enough for the product coefficients
    tc = max(_l1_bits(den_cs) + max(abs(c) for c in q).bit_length() + 2, t)
    den_pk = _fastpoly.pack(den_cs, tc)
    q_pk = _fastpoly.pack(q, tc)
    if num_pk is None or num_pk.t != tc:
        num_pk = _fastpoly.pack(num_cs, tc)
    if _fastpoly.mul(den_pk, q_pk).ev != num_pk.ev:
        return None
    return q


class _BigState:
    def __init__(self, t_row: int, t_big: int):
        self.t_row = t_row
        self.t_big = t_big
        self.L: Packed = _fastpoly.one(t_big)
        self.L_cs: list[int] | None = [1]
        self.log_b1 = 1
        self.seen: set = set()
        self.b_prev: list[int] | None = None
        self.b_prev_pk: Packed | None = None
        self.prev_images: dict[int, np.ndarray] = {}
        primes = _kernels.PRIMES30
        self.pool = list(primes[_N_SPARE : _N_SPARE + _N_POOL])
        self.spares = list(primes[:_N_SPARE])
        self.V: dict[int, np.ndarray] | None = None  # None = needs rebuild

    # -- maintained data ------------------------------------------------

    def L_coeffs(self) -> list[int]:
        if self.L_cs is None:
            if self.log_b1 + 2 > self.t_big:
                raise _WidthFail
            try:
                self.L_cs = _fastpoly.decode(self.L)
            except _fastpoly.DecodeOverflow:
                raise _WidthFail from None
        return self.L_cs

    def prev_image(self, p: int) -> np.ndarray:
        img = self.prev_images.get(p)
        if img is None:
            img = _red_or_veto(self.b_prev, p)
            self.prev_images[p] = img
        return img

    def V_image(self, p: int) -> np.ndarray | None:
        """Image of L / b_prev mod p, built on demand; None if p unusable."""
        if self.V is None:
            self.V = {}
        vp = self.V.get(p)
        if vp is None:
            L_p = _red_or_veto(self.L_coeffs(), p)
            b_p = self.prev_image(p)
            if len(L_p) == 0 or len(b_p) == 0:
                return None
            vp = _kernels.poldivexact_modp(L_p, b_p, p)
            if vp is None:
                raise InternalError("maintained divisor fails to divide the lcm")
            self.V[p] = vp
        return vp

    def ensure_V_pool(self) -> None:
        for p in self.pool + self.spares:
            self.V_image(p)

    def mul_into_L(self, c_cs: list[int]) -> None:
        self.L = _fastpoly.mul(self.L, _fastpoly.pack(c_cs, self.t_big))
        self.log_b1 += _l1_bits(c_cs)
        self.L_cs = None


def _candidate_primes(st: _BigState):
    pooled = set(st.pool) | set(st.spares)
    return itertools.chain(
        st.pool, (p for p in _modgcd.prime_stream() if p not in pooled)
    )


def _fold_step_big(st: _BigState, b: IntPoly) -> None:
    b_cs = list(b.coeffs)
    b_pk = _fastpoly.pack(b_cs, st.t_row)
    if b_pk.ev in st.seen:
        # identical to an already-folded element: lcm unchanged, and the
        # element provably divides L, so it can serve as the next bridge
        st.b_prev = b_cs
        st.b_prev_pk = b_pk
        st.prev_images = {}
        st.V = None
        return
    if st.L.deg == 0:
        # lcm so far is 1
        st.L = _fastpoly.pack(b_cs, st.t_big)
        st.L_cs = b_cs
        st.log_b1 = _l1_bits(b_cs)
        st.seen.add(b_pk.ev)
        st.b_prev = b_cs
        st.b_prev_pk = b_pk
        st.prev_images = {}
        st.V = {p: np.ones(1, dtype=np.int64) for p in st.pool + st.spares}
        return

    b_images: dict[int, np.ndarray] = {}

    def red_b(p: int) -> np.ndarray:
        img = b_images.get(p)
        if img is None:
            img = _red_or_veto(b_cs, p)
            b_images[p] = img
        return img

    u = cprev = None
    if st.b_prev is not None and len(st.b_prev) > 1:
        u, cprev = _bridge_split(st, b_cs, b_pk, red_b)
    if u is None:
        c = _direct_cofactor(st, b_cs, b_pk, red_b)
        if len(c) > 1 or c[0] != 1:
            st.mul_into_L(c)
        st.V = None
    else:
        _bridged_fold(st, b_cs, u, cprev)
    st.seen.add(b_pk.ev)
    st.b_prev = b_cs
    st.b_prev_pk = b_pk
    st.prev_images = b_images


def _bridge_split(st: _BigState, b_cs, b_pk, red_b):
    """Certified u = b/h, cprev = b_prev/h for a stabilized h = gcd(b_prev, b).

    Returns (None, None) when the bridge is useless (h constant) or a
    candidate never certifies; the caller then takes the direct route.
    """
    lcs = math.gcd(st.b_prev[-1], b_cs[-1])
    try:
        for cand in _modgcd.gcd_candidates(
            st.prev_image, red_b, _candidate_primes(st), lc_scale=lcs
        ):
            if len(cand) == 1:
                return None, None
            # when both cofactors are large the certified quotients cost
            # more than the direct route saves; bail out early
            s1 = len(st.b_prev) - len(cand)
            s2 = len(b_cs) - len(cand)
            if s1 + s2 > max(128, len(b_cs) - 1):
                return None, None
            cand = list(primitive_positive(IntPoly(cand)).coeffs)
            u = _certified_quotient(b_cs, b_pk, cand, st.t_row)
            if u is None:
                continue
            cprev = _certified_quotient(st.b_prev, st.b_prev_pk, cand, st.t_row)
            if cprev is None:
                continue
            return u, cprev
    except InternalError:
        log.debug("bridge gcd did not stabilize; taking the direct route")
    return None, None


def _bridged_fold(st: _BigState, b_cs, u: list[int], cprev: list[int]) -> None:
    """Fold b into L given the certified split b = h*u, b_prev = h*cprev."""
    st.ensure_V_pool()
    if len(u) == 1:
        # b divides b_prev, hence already divides L; only V moves:
        # L/b = (L/b_prev) * (b_prev/b) = V * cprev / u
        newV = _update_V(st.V, cprev, [1], u)
        if newV is None:
            raise InternalError("division invariant failed on a contained element")
        st.V = newV
        return

    u_im: dict[int, np.ndarray] = {}
    cprev_im: dict[int, np.ndarray] = {}

    def red_u(p: int) -> np.ndarray:
        img = u_im.get(p)
        if img is None:
            img = _red_or_veto(u, p)
            u_im[p] = img
        return img

    def red_X(p: int) -> np.ndarray:
        vp = st.V_image(p)
        if vp is None:
            return np.zeros(0, dtype=np.int64)
        ci = cprev_im.get(p)
        if ci is None:
            ci = _red_or_veto(cprev, p)
            cprev_im[p] = ci
        if len(ci) == 0:
            return ci
        return _kernels.polmul_modp(vp, ci, p)

    for w in _modgcd.gcd_candidates(
        red_u, red_X, _candidate_primes(st), lc_scale=abs(u[-1])
    ):
        w = list(primitive_positive(IntPoly(w)).coeffs)
        quot, rem = poly_divmod(IntPoly(u), IntPoly(w))
        if not rem.is_zero:
            continue
        c = list(quot.coeffs)
        newV = _update_V(st.V, cprev, c, u)
        if newV is None:
            # w fails to divide X modulo some maintained prime: not the gcd
            continue
        if len(c) > 1 or c[0] != 1:
            st.mul_into_L(c)
        st.V = newV
        return
    raise InternalError("no certifiable cofactor found (bridged route)")


def _update_V(V, cprev: list[int], c: list[int], u: list[int]):
    """Per-prime V := V * cprev * c / u; None when some division is inexact.

    The division being exact modulo every maintained prime is exactly
    the statement that the chosen w divides X there, which certifies
    gcd candidates beyond the primes the CRT consumed.
    """
    out = {}
    for p, vp in V.items():
        cp = _red_or_veto(cprev, p)
        up = _red_or_veto(u, p)
        if len(cp) == 0 or len(up) == 0:
            continue  # prime lost to a vanished leading coefficient
        num = _kernels.polmul_modp(vp, cp, p)
        num = _kernels.polmul_modp(num, _kernels.coeffs_mod_p(c, p), p)
        if len(num) == 0:
            continue
        q = _kernels.poldivexact_modp(num, up, p)
        if q is None:
            return None
        out[p] = q
    if not out:
        raise InternalError("all maintained primes became degenerate")
    return out


def _direct_cofactor(st: _BigState, b_cs, b_pk, red_b) -> list[int]:
    """c = b / gcd(L, b) with certificates, no bridge assumptions."""
    L_cs = st.L_coeffs()
    L_images: dict[int, np.ndarray] = {}

    def red_L(p: int) -> np.ndarray:
        img = L_images.get(p)
        if img is None:
            img = _red_or_veto(L_cs, p)
            L_images[p] = img
        return img

    for w in _modgcd.gcd_candidates(
        red_L, red_b, _candidate_primes(st), lc_scale=abs(b_cs[-1])
    ):
        if len(w) == 1:
            return list(b_cs)
        w = list(primitive_positive(IntPoly(w)).coeffs)
        c = _certified_quotient(b_cs, b_pk, w, st.t_row)
        if c is None:
            continue
        ok = True
        for p in st.spares:
            wp = _red_or_veto(w, p)
            lp = red_L(p)
            if len(wp) == 0 or len(lp) == 0:
                continue  # prime unusable; other spares still apply
            if len(_kernels.polmod_modp(lp, wp, p)) != 0:
                ok = False
                break
        if ok:
            return c
    raise InternalError("no certifiable cofactor found (direct route)")


def _run_big_fold(polys: list[IntPoly], start_L: IntPoly, t_row: int, t_big: int) -> IntPoly:
    st = _BigState(t_row, t_big)
    if start_L.degree > 0:
        st.L = _fastpoly.pack(list(start_L.coeffs), t_big)
        st.L_cs = list(start_L.coeffs)
        st.log_b1 = _l1_bits(start_L.coeffs)
    for b in polys:
        _fold_step_big(st, b)
    if st.log_b1 + 2 > st.t_big:
        raise _WidthFail
    return IntPoly(st.L_coeffs())


def lcm_fold(ps: list[IntPoly]) -> IntPoly:
    """Fold lcm over nonzero polynomials; primitive, positive leading."""
    L = ONE
    queue = [primitive_positive(p) for p in ps]
    idx = 0
    # stay on the textbook route while everything is small
    while idx < len(queue):
        b = queue[idx]
        if b.degree > SMALL_DEG or L.degree > SMALL_DEG:
            break
        if b.degree > 0:
            L = poly_lcm(L, b)
        idx += 1
    if idx == len(queue):
        return primitive_positive(L)

    rest = [b for b in queue[idx:] if b.degree > 0]
    mb = max(
        max((abs(c).bit_length() for c in b.coeffs), default=1)
        for b in rest + [L]
    )
    t_row = mb + 8
    t_big = max(3 * mb + 96, 2 * t_row)
    for _ in range(4):
        try:
            return primitive_positive(_run_big_fold(rest, L, t_row, t_big))
        except _WidthFail:
            log.info("slot width %d insufficient for rigorous decode; retrying", t_big)
            t_big *= 2
    raise InternalError("slot width kept failing to accommodate the lcm")
