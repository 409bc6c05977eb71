"""
q-combinatorics over LaurentPoly.

Every helper takes its base as an exponent of u = q^{1/2}: base 2 is q,
base 4 is q^2, base 1 is q^{1/2}.
"""

from functools import lru_cache

from .laurent import LaurentPoly
from .scalar import ONE, Scalar

_ONE_POLY = LaurentPoly.constant(1)


@lru_cache(maxsize=4096)
def q_pochhammer(base_exponent: int, length: int) -> LaurentPoly:
    """(p; p)_m = prod_{k=1}^{m} (1 - p^k) with p = u^base_exponent"""
    if length < 0:
        raise ValueError(f"q-Pochhammer length must be >= 0, got {length}")
    if length == 0:
        return _ONE_POLY
    return q_pochhammer(base_exponent, length - 1) * _one_minus(base_exponent * length)


@lru_cache(maxsize=4096)
def q_pochhammer_quotient(base_exponent: int, upper: int, lower: int) -> LaurentPoly:
    """(p; p)_upper / (p; p)_lower as the polynomial prod_{k=lower+1}^{upper} (1 - p^k)"""
    if lower < 0 or upper < lower:
        raise ValueError(f"q-Pochhammer quotient needs 0 <= lower <= upper, got {lower}, {upper}")
    result = _ONE_POLY
    for k in range(lower + 1, upper + 1):
        result = result * _one_minus(base_exponent * k)
    return result


@lru_cache(maxsize=16384)
def q_binomial(m: int, k: int, base_exponent: int) -> LaurentPoly:
    """
    Gaussian binomial (p;p)_m / ((p;p)_k (p;p)_{m-k}) with p = u^base_exponent.

    Zero when k < 0 or k > m. Built with the recurrence
    binom(m, k) = binom(m-1, k) + p^{m-k} binom(m-1, k-1).
    """
    if k < 0 or k > m:
        return LaurentPoly()
    if k == 0 or k == m:
        return _ONE_POLY
    return q_binomial(m - 1, k, base_exponent) + q_binomial(m - 1, k - 1, base_exponent).shift(
        base_exponent * (m - k)
    )


def q_integer(m: int, base_exponent: int) -> LaurentPoly:
    """[m]_p = (p^m - p^{-m}) / (p - p^{-1}), expanded as a Laurent polynomial"""
    if m < 0:
        return -q_integer(-m, base_exponent)
    return LaurentPoly({base_exponent * (m - 1 - 2 * j): 1 for j in range(m)})


@lru_cache(maxsize=1024)
def q_integer_factorial(m: int, base_exponent: int) -> Scalar:
    """[m]_p! with [0]_p! = 1"""
    if m < 0:
        raise ValueError(f"q-factorial needs m >= 0, got {m}")
    result = ONE
    for j in range(1, m + 1):
        result = result * Scalar(q_integer(j, base_exponent))
    return result


def _one_minus(exponent: int) -> LaurentPoly:
    return LaurentPoly({0: 1, exponent: -1}) if exponent else LaurentPoly()
