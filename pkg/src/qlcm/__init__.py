"""Exact q-analogue arithmetic and verification of a Gaussian-binomial lcm identity.

The package computes with integer polynomials, q-integers, Gaussian
binomial coefficients, and cyclotomic polynomials, and machine-checks
that the lcm of a row of Gaussian binomials equals
lcm([1]_q, ..., [n+1]_q) / [n+1]_q, in factored and in expanded
polynomial form, together with the carry-counting facts that drive the
identity.  Every structured computation is cross-checked against an
independent brute-force route.
"""

from .cyclotomic import (
    CycFactorization,
    cyclotomic_poly,
    factorization_to_poly,
    factorization_value_at_one,
    phi_at_one,
)
from .errors import (
    HypothesisViolated,
    IndexTooSmall,
    InternalError,
    NonExactDivision,
    NonPositive,
    NotPrime,
    OutOfRange,
    QlcmError,
    ZeroPolynomialInput,
)
from .numthy import (
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
from .polyarith import (
    IntPoly,
    ONE,
    ZERO,
    poly_divmod,
    poly_eval,
    poly_exact_div,
    poly_gcd,
    poly_lcm,
    poly_lcm_many,
    poly_mul,
    poly_parse,
    poly_to_str,
    primitive_positive,
)
from .qcalc import (
    ClassicalCheck,
    QBinomialSpec,
    VerificationReport,
    bounds_check,
    carry_condition,
    carry_count_lhs,
    carry_count_rhs,
    carry_sum_for_k,
    classical_farhi_check,
    corollary_common_witness,
    exists_witness_k,
    lcm_qbinomials_factorization,
    limit_consistency_check,
    q_binomial_factorization,
    q_binomial_poly,
    q_integer,
    q_integer_factorization,
    rhs_factorization,
    verify_main_identity,
    witness_all_carries,
)

__version__ = "0.1.0"
