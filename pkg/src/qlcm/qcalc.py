"""q-integers, Gaussian binomials, carries, and the lcm identity checks.

The central object is the identity

    lcm of the n-th row of Gaussian binomials
        = lcm([1]_q, ..., [n+1]_q) / [n+1]_q,

checked at two depths.  At factored depth both sides become sets of
cyclotomic indices: the left side collects every d in [2, n] for which
some k produces a carry (floor criterion), decided through the
constructive witness k = (n+1) mod d; the right side collects every
d in [2, n] not dividing n + 1.  At polynomial depth the row lcm is
recomputed by the generic polynomial lcm fold and compared against the
expanded cyclotomic products and against the q-integer chain quotient,
all as exact integer polynomials.

The q -> 1 degeneration lands on the integer statement
lcm(C(n,0..n)) = lcm(1..n+1)/(n+1), which is checked by plain
big-integer folds, together with the base-p carry bookkeeping (digit
formula, brute-force maximum, witnesses, and common witnesses for
level subsets).
"""

from __future__ import annotations

import dataclasses
import functools
import logging
import math
import typing

from . import _fastpoly
from .cyclotomic import (
    CycFactorization,
    factorization_to_poly,
    factorization_value_at_one,
)
from .errors import (
    HypothesisViolated,
    InternalError,
    NonExactDivision,
    NonPositive,
    NotPrime,
    OutOfRange,
)
from .numthy import (
    _check_positive,
    base_p_digits,
    divisors,
    int_lcm_range,
    is_prime,
)
from .polyarith import IntPoly, ONE, ZERO, poly_exact_div, poly_lcm_many

try:
    import gmpy2

    _mpz = gmpy2.mpz
    _int_lcm2 = gmpy2.lcm
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int
    _int_lcm2 = math.lcm

log = logging.getLogger(__name__)

__all__ = [
    "QBinomialSpec",
    "VerificationReport",
    "ClassicalCheck",
    "q_integer",
    "q_integer_factorization",
    "carry_condition",
    "q_binomial_factorization",
    "q_binomial_poly",
    "exists_witness_k",
    "lcm_qbinomials_factorization",
    "rhs_factorization",
    "verify_main_identity",
    "carry_sum_for_k",
    "carry_count_lhs",
    "carry_count_rhs",
    "witness_all_carries",
    "corollary_common_witness",
    "classical_farhi_check",
    "limit_consistency_check",
    "bounds_check",
]


@dataclasses.dataclass(frozen=True)
class QBinomialSpec:
    """Row index n and column index k of a Gaussian binomial."""

    n: int
    k: int


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check at index n.

    poly_equal is None unless the polynomial depth ran (poly_checked).
    witness_table maps each left-side index d to its carry witness k.
    """

    n: int
    lhs_factors: CycFactorization
    rhs_factors: CycFactorization
    factor_equal: bool
    poly_checked: bool
    poly_equal: bool | None = None
    witness_table: dict[int, int] | None = None

    def __post_init__(self):
        if self.poly_equal is not None and not self.poly_checked:
            raise InternalError("poly_equal set without the polynomial check running")

    @property
    def passed(self) -> bool:
        return self.factor_equal and (not self.poly_checked or bool(self.poly_equal))


class ClassicalCheck(typing.NamedTuple):
    """Equality verdict plus both exact integer values."""

    equal: bool
    lhs: int
    rhs: int


def q_integer(n: int) -> IntPoly:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q is the zero polynomial.

    >>> str(q_integer(5))
    '1 + q + q^2 + q^3 + q^4'
    >>> q_integer(0).is_zero
    True
    """
    if n < 0:
        raise NonPositive(f"q_integer requires n >= 0, got {n}")
    return IntPoly((1,) * n)


def q_integer_factorization(k: int) -> CycFactorization:
    """[k]_q as the product of Phi_d over divisors d > 1 of k.

    >>> str(q_integer_factorization(6))
    'Phi_2 * Phi_3 * Phi_6'
    >>> len(q_integer_factorization(1))
    0
    """
    _check_positive(k, "k")
    return CycFactorization({d: 1 for d in divisors(k) if d > 1})


def carry_condition(n: int, k: int, d: int) -> bool:
    """Floor criterion: does adding k and n-k carry at scale d?

    >>> carry_condition(4, 2, 3)
    True
    >>> carry_condition(4, 2, 2)
    False
    """
    if n < 1 or not 0 <= k <= n or d < 1:
        raise OutOfRange(f"need 1 <= n, 0 <= k <= n, d >= 1; got n={n} k={k} d={d}")
    return k // d + (n - k) // d < n // d


def q_binomial_factorization(s: QBinomialSpec) -> CycFactorization:
    """Indices d in [2, n] whose carry condition holds for this (n, k).

    >>> str(q_binomial_factorization(QBinomialSpec(4, 2)))
    'Phi_3 * Phi_4'
    >>> len(q_binomial_factorization(QBinomialSpec(7, 0)))
    0
    """
    n, k = s.n, s.k
    if n < 0 or not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n} k={k}")
    nk = n - k
    return CycFactorization(
        {d: 1 for d in range(2, n + 1) if k // d + nk // d < n // d}
    )


def _divexact_packed(a: _fastpoly.Packed, m: int) -> _fastpoly.Packed:
    """Divide by q^m - 1 in evaluation form, insisting on a zero remainder."""
    quot, rem = divmod(a.ev, (_mpz(1) << (a.t * m)) - 1)
    if rem != 0:
        raise InternalError(f"division by q^{m} - 1 left a remainder")
    return _fastpoly.Packed(quot, a.t, a.deg - m)


def q_binomial_poly(s: QBinomialSpec) -> IntPoly:
    """The Gaussian binomial as an expanded polynomial.

    Accumulates the full numerator prod_{i=1..k} (q^(n-k+i) - 1) and then
    divides by the denominator factors q^i - 1 in ascending i; every
    intermediate quotient is a polynomial, so each division is exact.

    >>> str(q_binomial_poly(QBinomialSpec(4, 2)))
    '1 + q + 2*q^2 + q^3 + q^4'
    >>> q_binomial_poly(QBinomialSpec(9, 9)) == ONE
    True
    """
    n, k = s.n, s.k
    if n < 0 or not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n} k={k}")
    # final coefficients are at most C(n, k) < 2^n, so this width makes
    # the one decode at the end exact; intermediate sizes never matter
    # in evaluation form
    t = max(n, 2) + 6
    acc = _fastpoly.one(t)
    for i in range(1, k + 1):
        acc = _fastpoly.mul_qm_minus_one(acc, n - k + i)
    for i in range(1, k + 1):
        acc = _divexact_packed(acc, i)
    return IntPoly(_fastpoly.decode(acc))


def exists_witness_k(n: int, d: int) -> int | None:
    """Carry witness k = (n+1) mod d, or None when d divides n + 1.

    >>> exists_witness_k(5, 3) is None
    True
    >>> exists_witness_k(5, 4)
    2
    """
    _check_positive(n)
    if not 1 <= d <= n:
        raise OutOfRange(f"need 1 <= d <= n, got d={d} n={n}")
    c = (n + 1) % d
    if c == 0:
        return None
    if not carry_condition(n, c, d):
        raise InternalError(f"witness k={c} fails the carry condition at n={n} d={d}")
    return c


def lcm_qbinomials_factorization(n: int) -> CycFactorization:
    """Factored lcm of row n: every d in [2, n] owning a carry witness.

    Existence is decided by the constructive witness k = (n+1) mod d
    with its carry condition verified; the exhaustive k-scan oracle
    lives in _lcm_qbinomials_scan and the test suite compares the two.

    >>> str(lcm_qbinomials_factorization(5))
    'Phi_4 * Phi_5'
    >>> len(lcm_qbinomials_factorization(1))
    0
    """
    _check_positive(n)
    exp = {}
    m = n + 1
    for d in range(2, n + 1):
        c = m % d
        # witness k = c has k//d = 0 since 0 < c < d
        if c and (n - c) // d < n // d:
            exp[d] = 1
    return CycFactorization(exp)


def _lcm_qbinomials_scan(n: int) -> CycFactorization:
    """Oracle twin of lcm_qbinomials_factorization: scan every k per d."""
    _check_positive(n)
    exp = {}
    for d in range(2, n + 1):
        nd = n // d
        for k in range(1, n + 1):
            if k // d + (n - k) // d < nd:
                exp[d] = 1
                break
    return CycFactorization(exp)


def rhs_factorization(n: int) -> CycFactorization:
    """Right side factored: every d in [2, n] not dividing n + 1.

    >>> str(rhs_factorization(6))
    'Phi_2 * Phi_3 * Phi_4 * Phi_5 * Phi_6'
    >>> len(rhs_factorization(1))
    0
    """
    _check_positive(n)
    m = n + 1
    return CycFactorization({d: 1 for d in range(2, n + 1) if m % d})


def _rhs_factorization_merge(n: int) -> CycFactorization:
    """Oracle twin of rhs_factorization via factored q-integers:
    max-merge of [1]_q..[n+1]_q minus the factors of [n+1]_q."""
    _check_positive(n)
    acc = CycFactorization({})
    for j in range(2, n + 2):
        acc = acc.lcm_merged(q_integer_factorization(j))
    return acc.without(q_integer_factorization(n + 1))


# -- polynomial-depth machinery -----------------------------------------


def _qbinomial_row_polys(n: int) -> list[IntPoly]:
    """All Gaussian binomials of row n, by the quotient recurrence
    b_(k+1) = b_k * (q^(n-k) - 1) / (q^(k+1) - 1) in evaluation form.

    Produces the same polynomials as q_binomial_poly at each k (the
    test suite compares them); this stream form costs two big-integer
    operations per row instead of two per numerator factor.
    """
    t = max(n, 2) + 6
    out = [ONE]
    b = _fastpoly.one(t)
    for k in range(n):
        b = _divexact_packed(_fastpoly.mul_qm_minus_one(b, n - k), k + 1)
        out.append(IntPoly(_fastpoly.decode(b)))
    return out


# lcm of [1]_q..[m]_q, extended one q-integer at a time; each extension
# folds through poly_lcm_many, the cache only spares refolding prefixes
_chain_state: tuple[int, IntPoly] = (1, ONE)


def _qint_chain_lcm(m: int) -> IntPoly:
    global _chain_state
    top, L = _chain_state
    if m < top:
        top, L = 1, ONE
    for j in range(top + 1, m + 1):
        L = poly_lcm_many([L, q_integer(j)])
    if m > _chain_state[0]:
        _chain_state = (m, L)
    return L


def _divide_by_q_integer(a: IntPoly, m: int) -> IntPoly:
    """Exact quotient a / [m]_q, in evaluation form with a remainder check.

    Matches poly_exact_div(a, q_integer(m)) in value and in raising
    NonExactDivision, but runs at big-integer speed; falls back to the
    schoolbook division in the (theorem-violating) case the quotient
    coefficients outgrow the slot width.
    """
    _check_positive(m, "m")
    if a.is_zero:
        return ZERO
    t = max(abs(c).bit_length() for c in a.coeffs) + 16
    pk = _fastpoly.pack(a.coeffs, t)
    num = (pk.ev << t) - pk.ev  # multiply by q - 1, then divide by q^m - 1
    quot, rem = divmod(num, (_mpz(1) << (t * m)) - 1)
    if rem != 0:
        raise NonExactDivision(f"[{m}]_q does not divide the given polynomial")
    try:
        return IntPoly(_fastpoly.decode(_fastpoly.Packed(quot, t, pk.deg - (m - 1))))
    except _fastpoly.DecodeOverflow:
        return poly_exact_div(a, q_integer(m))


def verify_main_identity(n: int, depth: str = "factored") -> VerificationReport:
    """Check the row-lcm identity at index n.

    Factored depth compares the carry-witness factorization of the row
    lcm with the divisor-criterion factorization of the chain quotient.
    Polynomial depth additionally folds the literal row polynomials
    through poly_lcm_many, divides the folded q-integer chain by
    [n+1]_q, and requires both to equal the expanded products of each
    factored side.  Identity failure is a report outcome, never an
    exception.
    """
    _check_positive(n)
    if depth not in ("factored", "polynomial"):
        raise OutOfRange(f"depth must be 'factored' or 'polynomial', got {depth!r}")
    lhs = lcm_qbinomials_factorization(n)
    rhs = rhs_factorization(n)
    factor_equal = lhs == rhs
    m = n + 1
    witness_table = {d: m % d for d in lhs}
    poly_checked = depth == "polynomial"
    poly_equal = None
    if poly_checked:
        row_lcm = poly_lcm_many(_qbinomial_row_polys(n))
        chain_quot = _divide_by_q_integer(_qint_chain_lcm(m), m)
        lhs_poly = factorization_to_poly(lhs)
        rhs_poly = lhs_poly if factor_equal else factorization_to_poly(rhs)
        poly_equal = row_lcm == lhs_poly and chain_quot == rhs_poly and row_lcm == chain_quot
    return VerificationReport(
        n=n,
        lhs_factors=lhs,
        rhs_factors=rhs,
        factor_equal=factor_equal,
        poly_checked=poly_checked,
        poly_equal=poly_equal,
        witness_table=witness_table,
    )


# -- base-p carry bookkeeping -------------------------------------------


def carry_sum_for_k(n: int, k: int, p: int) -> int:
    """Number of carries when adding k and n-k in base p (floor-sum form).

    >>> carry_sum_for_k(5, 2, 2)
    1
    >>> carry_sum_for_k(7, 3, 2)
    0
    """
    if not is_prime(p):
        raise NotPrime(f"p must be prime, got {p}")
    if n < 1 or not 0 <= k <= n:
        raise OutOfRange(f"need 1 <= n and 0 <= k <= n, got n={n} k={k}")
    s = 0
    q = p
    while q <= n:  # terms with p^r > n are identically zero
        s += n // q - k // q - (n - k) // q
        q *= p
    return s


def carry_count_lhs(n: int, p: int) -> int:
    """Digit formula: 0 when every base-p digit of n is p - 1, else M - i0.

    >>> carry_count_lhs(5, 2)
    1
    >>> carry_count_lhs(7, 2)
    0
    >>> carry_count_lhs(10, 3)
    2
    """
    dg = base_p_digits(n, p)
    return 0 if dg.i0 is None else dg.M - dg.i0


def carry_count_rhs(n: int, p: int) -> int:
    """Brute-force maximum of carry_sum_for_k over k = 0..n (oracle).

    >>> carry_count_rhs(10, 3)
    2
    """
    if not is_prime(p):
        raise NotPrime(f"p must be prime, got {p}")
    _check_positive(n)
    best = 0
    for k in range(n + 1):
        s = 0
        q = p
        while q <= n:
            s += n // q - k // q - (n - k) // q
            q *= p
        if s > best:
            best = s
    return best


def witness_all_carries(n: int, p: int) -> int:
    """The witness k = p^M - 1 attaining the maximal carry count.

    >>> witness_all_carries(10, 3)
    8
    >>> witness_all_carries(7, 2)
    3
    """
    if not is_prime(p):
        raise NotPrime(f"p must be prime, got {p}")
    if n < p:
        raise OutOfRange(f"need n >= p so the top digit index M >= 1, got n={n} p={p}")
    return p ** base_p_digits(n, p).M - 1


@functools.cache
def _level_has_witness(n: int, p: int, r: int) -> bool:
    """Does some k <= n produce a carry at exactly level r (floor-diff 1)?"""
    q = p**r
    return any(n // q - k // q - (n - k) // q == 1 for k in range(n + 1))


def _corollary_details(n: int, p: int, rs: tuple[int, ...]) -> tuple[int, bool]:
    """(common witness k, whether exhaustive fallback was needed)."""
    for r in rs:
        if not _level_has_witness(n, p, r):
            raise HypothesisViolated(
                f"no k <= {n} produces a carry at level r={r} for p={p}"
            )

    def hits_all(k: int) -> bool:
        return all(n // p**r - k // p**r - (n - k) // p**r == 1 for r in rs)

    k = p ** base_p_digits(n, p).M - 1
    if k >= 1 and hits_all(k):
        return k, False
    for k in range(1, n + 1):
        if hits_all(k):
            return k, True
    raise InternalError(
        f"levels {list(rs)} individually witnessed but no common witness exists"
    )


def corollary_common_witness(n: int, p: int, rs) -> int:
    """A single k <= n carrying at every level in rs simultaneously.

    Verifies the hypothesis (each level individually witnessed) by
    scanning, then tries the closed-form k = p^M - 1 and only falls
    back to exhaustive search if that fails; which route succeeded is
    logged.

    >>> corollary_common_witness(10, 3, [1, 2])
    8
    """
    if not is_prime(p):
        raise NotPrime(f"p must be prime, got {p}")
    _check_positive(n)
    rs = tuple(rs)
    if not rs or any(r < 1 for r in rs) or list(rs) != sorted(set(rs)):
        raise OutOfRange(f"rs must be ascending distinct positive integers, got {rs}")
    k, fell_back = _corollary_details(n, p, rs)
    if fell_back:
        log.warning(
            "closed-form witness failed for n=%d p=%d rs=%s; exhaustive search found k=%d",
            n, p, list(rs), k,
        )
    else:
        log.debug("closed-form witness k=%d for n=%d p=%d rs=%s", k, n, p, list(rs))
    return k


# -- integer degenerations ----------------------------------------------


def _binomial_row_lcm(n: int) -> int:
    """lcm of C(n, 0..n) by a plain big-integer fold.

    Runs over k <= n/2 only; the upper half repeats by the symmetry
    C(n, k) = C(n, n-k).
    """
    L = _mpz(1)
    c = _mpz(1)
    for k in range(1, n // 2 + 1):
        c = c * (n - k + 1) // k
        L = _int_lcm2(L, c)
    return int(L)


def classical_farhi_check(n: int) -> ClassicalCheck:
    """lcm of the binomial row versus lcm(1..n+1)/(n+1), both exact.

    >>> classical_farhi_check(5)
    ClassicalCheck(equal=True, lhs=10, rhs=10)
    """
    _check_positive(n)
    lhs = _binomial_row_lcm(n)
    big = int_lcm_range(n + 1)
    rhs, rem = divmod(big, n + 1)
    if rem != 0:
        raise InternalError(f"{n + 1} does not divide lcm(1..{n + 1})")
    return ClassicalCheck(lhs == rhs, lhs, rhs)


def limit_consistency_check(n: int) -> bool:
    """Tie the factored sides at q = 1 to the integer identity.

    Checks that the left factorization evaluates at 1 to the binomial
    row lcm, the right one to lcm(1..n+1)/(n+1), and that the prime
    product over p <= n with exponent carry_count_rhs(n, p) gives the
    same left value.

    >>> limit_consistency_check(4)
    True
    """
    _check_positive(n)
    left_val = factorization_value_at_one(lcm_qbinomials_factorization(n))
    right_val = factorization_value_at_one(rhs_factorization(n))
    classical = classical_farhi_check(n)
    prime_prod = math.prod(
        p ** carry_count_rhs(n, p) for p in range(2, n + 1) if is_prime(p)
    )
    return (
        left_val == classical.lhs
        and right_val == classical.rhs
        and prime_prod == left_val
    )


def bounds_check(n: int) -> bool:
    """2^(n-1) <= lcm(1..n) <= 3^n, exact big-integer comparisons.

    >>> all(bounds_check(n) for n in (1, 4, 60))
    True
    """
    _check_positive(n)
    v = int_lcm_range(n)
    return (1 << (n - 1)) <= v <= 3**n
