"""Exact dense polynomial arithmetic over arbitrary-precision integers.

The polynomial type is a dense ascending coefficient vector; the zero
polynomial is the empty vector.  Multiplication is schoolbook, division
is exact long division that refuses inexact quotients, and gcd is a
primitive pseudo-remainder sequence.  These routines favour obvious
correctness over speed: they serve as the independent oracle against
which the structured (cyclotomic) computations are checked, so they must
not share any ideas with them.  Large lcm folds dispatch to a faster
internal engine that produces identical values and certifies each step
by exact multiply-back.

Text format, used by the CLI and tests: terms ascending, joined with
" + " or " - ", coefficient 1 written bare ("q", "q^2"), for example
"1 + q + 2*q^2 + q^3 + q^4".
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import re

from .errors import NonExactDivision, ZeroPolynomialInput


@dataclasses.dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of q^i.

    The trailing (highest-index) stored coefficient is never zero; the
    zero polynomial stores an empty tuple.

    >>> IntPoly((1, 2, 0)).coeffs
    (1, 2)
    >>> IntPoly(()).is_zero
    True
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of a nonzero polynomial; the zero polynomial has none."""
        if not self.coeffs:
            raise ZeroPolynomialInput("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        """Leading coefficient of a nonzero polynomial."""
        if not self.coeffs:
            raise ZeroPolynomialInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(
            a + b
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(
            a - b
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return poly_mul(self, other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __str__(self) -> str:
        return poly_to_str(self)


ZERO = IntPoly(())
ONE = IntPoly((1,))


def monomial(c: int, e: int) -> IntPoly:
    """The single-term polynomial c * q^e."""
    if c == 0:
        return ZERO
    return IntPoly((0,) * e + (c,))


def q_power_minus_one(m: int) -> IntPoly:
    """q^m - 1 for m >= 1."""
    return IntPoly((-1,) + (0,) * (m - 1) + (1,))


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact schoolbook product.

    >>> str(poly_mul(IntPoly((1, 1)), IntPoly((-1, 1))))
    '-1 + q^2'
    """
    if a.is_zero or b.is_zero:
        return ZERO
    ac, bc = a.coeffs, b.coeffs
    out = [0] * (len(ac) + len(bc) - 1)
    for i, ai in enumerate(ac):
        if ai == 0:
            continue
        for j, bj in enumerate(bc):
            out[i + j] += ai * bj
    return IntPoly(out)


def poly_divmod(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Long division a = b*quot + rem over the integers.

    Raises NonExactDivision whenever a quotient coefficient would be
    non-integral, so this succeeds exactly when the division stays in
    integer polynomials all the way down.
    """
    if b.is_zero:
        raise ZeroPolynomialInput("division by the zero polynomial")
    if a.is_zero:
        return ZERO, ZERO
    if a.degree < b.degree:
        return ZERO, a
    rem = list(a.coeffs)
    bc = b.coeffs
    lead = bc[-1]
    qdeg = len(rem) - len(bc)
    quot = [0] * (qdeg + 1)
    for i in range(qdeg, -1, -1):
        top = rem[i + len(bc) - 1]
        if top == 0:
            continue
        c, r = divmod(top, lead)
        if r:
            raise NonExactDivision(
                f"coefficient {top} not divisible by leading coefficient {lead}"
            )
        quot[i] = c
        for j, bj in enumerate(bc):
            rem[i + j] -= c * bj
    return IntPoly(quot), IntPoly(rem)


def poly_exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient c with a = b*c exactly; NonExactDivision otherwise.

    >>> str(poly_exact_div(q_power_minus_one(6), q_power_minus_one(2)))
    '1 + q^2 + q^4'
    """
    quot, rem = poly_divmod(a, b)
    if not rem.is_zero:
        raise NonExactDivision(f"nonzero remainder {rem} dividing {a} by {b}")
    return quot


def content(a: IntPoly) -> int:
    """Positive gcd of the coefficients; 0 for the zero polynomial."""
    return math.gcd(*a.coeffs) if a.coeffs else 0


def primitive_positive(a: IntPoly) -> IntPoly:
    """Divide out the content and make the leading coefficient positive."""
    if a.is_zero:
        return ZERO
    c = content(a)
    if a.leading < 0:
        c = -c
    return IntPoly(x // c for x in a.coeffs)


def _pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of a by b: rem(lc(b)^(da-db+1) * a, b), always integral."""
    d = a.degree - b.degree
    scaled = IntPoly(c * b.leading ** (d + 1) for c in a.coeffs)
    _, rem = poly_divmod(scaled, b)
    return rem


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient, by primitive PRS.

    Each pseudo-remainder is reduced to its primitive part, which keeps
    coefficient growth controlled without assuming anything about where
    the inputs came from.

    >>> str(poly_gcd(q_power_minus_one(2), q_power_minus_one(3)))
    '-1 + q'
    """
    if a.is_zero and b.is_zero:
        raise ZeroPolynomialInput("gcd(0, 0) is undefined")
    if a.is_zero:
        return primitive_positive(b)
    if b.is_zero:
        return primitive_positive(a)
    r0, r1 = primitive_positive(a), primitive_positive(b)
    if r0.degree < r1.degree:
        r0, r1 = r1, r0
    while not r1.is_zero:
        if r1.degree == 0:
            return ONE
        rem = _pseudo_rem(r0, r1)
        r0, r1 = r1, primitive_positive(rem)
    return primitive_positive(r0)


def poly_lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    """lcm(a, b) = exact_div(a*b, gcd(a, b)), primitive with positive lead."""
    if a.is_zero or b.is_zero:
        raise ZeroPolynomialInput("lcm with the zero polynomial")
    prod = poly_mul(a, b)
    return primitive_positive(poly_exact_div(prod, poly_gcd(a, b)))


def poly_lcm_many(ps) -> IntPoly:
    """Pairwise lcm fold over a sequence of nonzero polynomials.

    The empty sequence yields 1.  The result is primitive with positive
    leading coefficient.  Large monic operands are folded by a faster
    internal engine; its every division is certified by an exact
    multiply-back, and its values coincide with the naive fold.

    >>> str(poly_lcm_many([q_power_minus_one(1), q_power_minus_one(2)]))
    '-1 + q^2'
    """
    ps = list(ps)
    for p in ps:
        if p.is_zero:
            raise ZeroPolynomialInput("lcm over a sequence containing 0")
    if not ps:
        return ONE
    from . import _bigfold

    return _bigfold.lcm_fold(ps)


def poly_eval(a: IntPoly, x: int) -> int:
    """Exact value a(x) by Horner's rule.

    >>> poly_eval(IntPoly((1, 1, 1)), 1)
    3
    """
    v = 0
    for c in reversed(a.coeffs):
        v = v * x + c
    return v


def poly_to_str(a: IntPoly) -> str:
    """Render ascending, e.g. "1 + q + 2*q^2"; coefficient 1 is left bare."""
    if a.is_zero:
        return "0"
    parts: list[str] = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            power = "q" if i == 1 else f"q^{i}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM_RE = re.compile(
    r"""^(?:
        (?P<num>\d+)                       # bare integer
      | (?:(?P<coef>\d+)\*)?q(?:\^(?P<exp>\d+))?   # [c*]q[^e]
    )$""",
    re.VERBOSE,
)


def poly_parse(text: str) -> IntPoly:
    """Parse the poly_to_str format back into a polynomial.

    >>> poly_parse("1 + q + 2*q^2 + q^3 + q^4").coeffs
    (1, 1, 2, 1, 1)
    >>> poly_parse("-1 + q").coeffs
    (-1, 1)
    """
    s = text.strip()
    if s == "0":
        return ZERO
    # split into sign/term pairs
    chunks = re.split(r"\s*([+-])\s*", s)
    if chunks[0] == "":
        chunks = chunks[1:]
    else:
        chunks = ["+"] + chunks
    if len(chunks) % 2 != 0:
        raise ValueError(f"cannot parse polynomial: {text!r}")
    coeffs: dict[int, int] = {}
    for sign, term in zip(chunks[::2], chunks[1::2]):
        if sign not in "+-" or not term:
            raise ValueError(f"cannot parse polynomial: {text!r}")
        m = _TERM_RE.match(term.replace(" ", ""))
        if not m:
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        if m.group("num") is not None:
            c, e = int(m.group("num")), 0
        else:
            c = int(m.group("coef")) if m.group("coef") else 1
            e = int(m.group("exp")) if m.group("exp") else 1
        if sign == "-":
            c = -c
        coeffs[e] = coeffs.get(e, 0) + c
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return IntPoly(out)
