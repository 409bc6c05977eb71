import random
from fractions import Fraction

import pytest

from app.algebra import (
    GaussianRational,
    IMAG,
    LaurentPoly,
    ONE,
    Q,
    Scalar,
    ScalarDivisionError,
    imaginary_power,
    q_binomial,
    q_integer,
    q_integer_factorial,
    q_pochhammer,
    u_power,
)


def poly(**terms):
    """poly(u0=1, u4=-1) -> 1 - u^4"""
    return LaurentPoly({int(key[1:]): value for key, value in terms.items()})


def test_quotient_reduces_to_canonical_form():
    ratio = Scalar(poly(u0=1, u4=-1), poly(u0=1, u2=-1))
    assert ratio == 1 + Q
    assert ratio.is_laurent()
    assert str(ratio) == "(1 + u^2)/(1)"


def test_equal_fractions_share_one_representation():
    left = Scalar(poly(u0=1, u2=-1), poly(u0=2, u2=-2))
    assert left == Scalar(Fraction(1, 2))
    assert hash(left) == hash(Scalar(Fraction(1, 2)))


def test_denominator_is_normalised():
    value = (1 + Q) / (1 - Q)
    assert value.denominator.coefficient(0) == GaussianRational(1)
    assert str(value) == "(1 + u^2)/(1 - u^2)"


def test_powers_and_inverses():
    assert u_power(4) == Q ** 2
    assert Q * Q.inverse() == ONE
    assert Q ** -2 == u_power(-4)
    assert imaginary_power(2) == -1
    assert IMAG * IMAG == -1


def test_division_by_zero_raises():
    with pytest.raises(ScalarDivisionError):
        ONE / Scalar(0)
    with pytest.raises(ScalarDivisionError):
        Scalar(1, 0)


def test_q_pochhammer():
    assert q_pochhammer(4, 0) == LaurentPoly.constant(1)
    assert q_pochhammer(4, 2) == poly(u0=1, u4=-1) * poly(u0=1, u8=-1)


def test_q_binomial_and_integers():
    assert q_binomial(2, 1, 2) == poly(u0=1, u2=1)
    assert q_binomial(3, 4, 2).is_zero()
    assert q_integer(2, 2) == poly(**{"u-2": 1, "u2": 1})
    assert q_integer_factorial(2, 2) == u_power(-2) + u_power(2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_q_binomial_matches_pochhammer_quotient(m):
    for k in range(m + 1):
        expected = Scalar(q_pochhammer(2, m), q_pochhammer(2, k) * q_pochhammer(2, m - k))
        assert Scalar(q_binomial(m, k, 2)) == expected


def test_gaussian_rationals():
    i = GaussianRational(0, 1)
    assert i ** 2 == GaussianRational(-1)
    assert (GaussianRational(1, 1) * GaussianRational(1, -1)) == GaussianRational(2)
    assert GaussianRational(3, 4).inverse() == GaussianRational(Fraction(3, 25), Fraction(-4, 25))


def random_scalar(rng):
    """Quotient of small random Laurent polynomials with Gaussian coefficients"""

    def random_poly():
        while True:
            terms = {
                rng.randint(-3, 3): GaussianRational(rng.randint(-3, 3), rng.randint(-1, 1))
                for _ in range(rng.randint(1, 3))
            }
            value = LaurentPoly(terms)
            if not value.is_zero():
                return value

    return Scalar(random_poly(), random_poly())


@pytest.mark.parametrize("seed", range(6))
def test_field_axioms(seed):
    rng = random.Random(seed)
    x, y, z = (random_scalar(rng) for _ in range(3))
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == Scalar(0)
    assert x * x.inverse() == ONE
    assert (x / y) * y == x


@pytest.mark.parametrize("seed", range(6))
def test_canonical_form_is_idempotent(seed):
    x = random_scalar(random.Random(100 + seed))
    again = Scalar(x.numerator, x.denominator)
    assert again == x
    assert str(again) == str(x)
    assert x.denominator.coefficient(0) == GaussianRational(1)


@pytest.mark.parametrize("m", range(1, 9))
def test_q_binomial_pascal_rule(m):
    for k in range(m + 1):
        shifted = LaurentPoly({2 * k: 1}) * q_binomial(m - 1, k, 2)
        assert q_binomial(m, k, 2) == shifted + q_binomial(m - 1, k - 1, 2)


@pytest.mark.parametrize("m", range(9))
def test_q_binomial_symmetry(m):
    for k in range(m + 1):
        assert q_binomial(m, k, 2) == q_binomial(m, m - k, 2)
        assert q_binomial(m, k, 4) == q_binomial(m, m - k, 4)
