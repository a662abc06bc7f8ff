"""Cyclotomic polynomials, cyclotomic-product factorizations, and values at 1.

Phi_d is computed by the Moebius quotient
prod_{e|d, mu(d/e)=+1} (q^e - 1) / prod_{e|d, mu(d/e)=-1} (q^e - 1),
an exact division of integer polynomials.  The products and the
quotient run in big-integer evaluation form at a slot width derived
from the Mignotte divisor bound (any monic divisor g of a monic f
satisfies log2 |g|_inf <= deg g + log2 sqrt(deg f + 1) + log2 |f|_inf),
so the decoded coefficients are provably the exact quotient.  A
factorization is a map d -> exponent with d >= 2; d = 1 is banned so
that evaluation at q = 1 (where Phi_1 vanishes) stays meaningful.
"""

from __future__ import annotations

import functools
import math

from . import _fastpoly
from .errors import IndexTooSmall, InternalError, NonPositive
from .numthy import divisors, euler_totient, moebius, prime_power, _check_positive
from .polyarith import IntPoly, ONE, poly_mul

__all__ = [
    "CycFactorization",
    "cyclotomic_poly",
    "factorization_to_poly",
    "phi_at_one",
    "factorization_value_at_one",
]


class CycFactorization:
    """Product of cyclotomic polynomials as a map d -> exponent.

    Keys are indices d >= 2; stored exponents are >= 1 (zero exponents
    are dropped on construction, negative ones rejected).  Equality is
    map equality.  Renders as "Phi_3 * Phi_4" with a "^e" suffix for
    exponents above 1; the empty product renders as "1".

    >>> str(CycFactorization({3: 1, 4: 1}))
    'Phi_3 * Phi_4'
    >>> str(CycFactorization({}))
    '1'
    >>> CycFactorization({2: 1, 3: 0}) == CycFactorization({2: 1})
    True
    """

    __slots__ = ("_exp",)

    def __init__(self, exponents=()):
        exp = dict(exponents)
        for d, e in list(exp.items()):
            if d < 2:
                raise IndexTooSmall(f"cyclotomic index must be >= 2, got {d}")
            if e < 0:
                raise NonPositive(f"exponent for Phi_{d} must be >= 0, got {e}")
            if e == 0:
                del exp[d]
        self._exp = dict(sorted(exp.items()))

    @property
    def exponents(self) -> dict[int, int]:
        """The d -> e map (a copy; the factorization itself is immutable)."""
        return dict(self._exp)

    def items(self):
        return self._exp.items()

    def __iter__(self):
        return iter(self._exp)

    def __len__(self) -> int:
        return len(self._exp)

    def __contains__(self, d: int) -> bool:
        return d in self._exp

    def __getitem__(self, d: int) -> int:
        return self._exp[d]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycFactorization):
            return NotImplemented
        return self._exp == other._exp

    def __hash__(self):
        return hash(tuple(self._exp.items()))

    def __repr__(self) -> str:
        return f"CycFactorization({self._exp!r})"

    def __str__(self) -> str:
        if not self._exp:
            return "1"
        return " * ".join(
            f"Phi_{d}" if e == 1 else f"Phi_{d}^{e}" for d, e in self._exp.items()
        )

    def merged(self, other: "CycFactorization") -> "CycFactorization":
        """Product of the two factorizations (exponents add)."""
        exp = dict(self._exp)
        for d, e in other.items():
            exp[d] = exp.get(d, 0) + e
        return CycFactorization(exp)

    def lcm_merged(self, other: "CycFactorization") -> "CycFactorization":
        """Least common multiple (exponents take the maximum)."""
        exp = dict(self._exp)
        for d, e in other.items():
            exp[d] = max(exp.get(d, 0), e)
        return CycFactorization(exp)

    def without(self, other: "CycFactorization") -> "CycFactorization":
        """Exact quotient (exponents subtract; must stay nonnegative)."""
        exp = dict(self._exp)
        for d, e in other.items():
            exp[d] = exp.get(d, 0) - e
        return CycFactorization(exp)

    def to_json_obj(self) -> list[dict[str, int]]:
        """JSON form: [{"d": ..., "e": ...}] ascending by d."""
        return [{"d": d, "e": e} for d, e in self._exp.items()]


@functools.cache
def cyclotomic_poly(d: int) -> IntPoly:
    """The monic cyclotomic polynomial Phi_d, by the Moebius quotient.

    >>> str(cyclotomic_poly(1))
    '-1 + q'
    >>> str(cyclotomic_poly(2))
    '1 + q'
    >>> str(cyclotomic_poly(6))
    '1 - q + q^2'
    """
    _check_positive(d, "d")
    if d == 1:
        return IntPoly((-1, 1))
    num: list[int] = []
    den: list[int] = []
    for e in divisors(d):
        mu = moebius(d // e)
        if mu == 1:
            num.append(e)
        elif mu == -1:
            den.append(e)
    deg = euler_totient(d)
    deg_num = sum(num)
    # Mignotte: |Phi_d|_inf <= 2^deg * sqrt(deg_num + 1) * |numerator|_inf,
    # and the numerator's coefficients are bounded by 2^len(num)
    t = max(64, deg + len(num) + (deg_num + 1).bit_length() + 8)
    nv = _fastpoly.one(t)
    for e in num:
        nv = _fastpoly.mul_qm_minus_one(nv, e)
    dv = _fastpoly.one(t)
    for e in den:
        dv = _fastpoly.mul_qm_minus_one(dv, e)
    quot, rem = divmod(nv.ev, dv.ev)
    if rem != 0:
        raise InternalError(f"Moebius quotient for Phi_{d} left a remainder")
    coeffs = _fastpoly.decode(_fastpoly.Packed(quot, t, deg))
    return IntPoly(coeffs)


@functools.cache
def _phi_l1_bits(d: int) -> int:
    """Bit length of the l1 norm of Phi_d, for product width accounting."""
    return sum(abs(c) for c in cyclotomic_poly(d).coeffs).bit_length()


def factorization_to_poly(f: CycFactorization) -> IntPoly:
    """Expand prod Phi_d^e into a polynomial; the empty product is 1.

    >>> str(factorization_to_poly(CycFactorization({3: 1, 4: 1})))
    '1 + q + 2*q^2 + q^3 + q^4'
    >>> factorization_to_poly(CycFactorization({})) == ONE
    True
    """
    total_deg = sum(euler_totient(d) * e for d, e in f.items())
    if total_deg <= 256:
        out = ONE
        for d, e in f.items():
            phi = cyclotomic_poly(d)
            for _ in range(e):
                out = poly_mul(out, phi)
        return out
    # big products run packed; the slot width dominates the coefficient
    # l1-norm product bound, so the single decode at the end is exact
    t = sum(_phi_l1_bits(d) * e for d, e in f.items()) + 8
    acc = _fastpoly.one(t)
    for d, e in f.items():
        phi = _fastpoly.pack(cyclotomic_poly(d).coeffs, t)
        for _ in range(e):
            acc = _fastpoly.mul(acc, phi)
    return IntPoly(_fastpoly.decode(acc))


def phi_at_one(d: int) -> int:
    """Phi_d(1) for d >= 2: p when d is a prime power p^r, else 1.

    >>> [phi_at_one(d) for d in (2, 3, 4, 6, 7, 12)]
    [2, 3, 2, 1, 7, 1]
    """
    if d < 2:
        raise IndexTooSmall(
            f"phi_at_one requires d >= 2 (Phi_1(1) = 0 would poison products), got {d}"
        )
    pp = prime_power(d)
    return pp[0] if pp else 1


def factorization_value_at_one(f: CycFactorization) -> int:
    """Exact integer value of prod Phi_d(1)^e.

    >>> factorization_value_at_one(CycFactorization({3: 1, 4: 1}))
    6
    >>> factorization_value_at_one(CycFactorization({}))
    1
    """
    return math.prod(phi_at_one(d) ** e for d, e in f.items())
