from __future__ import annotations

from fractions import Fraction
from typing import Union

from .gaussian import GaussianRational, ScalarDivisionError
from .laurent import LaurentPoly, cancel_common_factor, format_laurent

ScalarLike = Union[int, Fraction, GaussianRational, LaurentPoly, "Scalar"]


class Scalar:
    """
    Exact rational function in u = q^{1/2} over the Gaussian rationals.

    Canonical form: the denominator is a polynomial whose constant term is 1
    and which shares no polynomial factor with the numerator. Two scalars
    are equal iff their canonical parts are equal.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, numerator: ScalarLike = 0, denominator: ScalarLike = 1) -> None:
        num = _as_poly(numerator)
        den = _as_poly(denominator)
        if den.is_zero():
            raise ScalarDivisionError("Scalar with zero denominator")
        self._num, self._den = _canonical(num, den)

    @classmethod
    def _from_canonical(cls, num: LaurentPoly, den: LaurentPoly) -> Scalar:
        scalar = cls.__new__(cls)
        scalar._num = num
        scalar._den = den
        return scalar

    @classmethod
    def coerce(cls, value: ScalarLike) -> Scalar:
        if isinstance(value, Scalar):
            return value
        return cls(value)

    @property
    def numerator(self) -> LaurentPoly:
        return self._num

    @property
    def denominator(self) -> LaurentPoly:
        return self._den

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is 1"""
        return self._den == _ONE_POLY

    # --- arithmetic -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational, LaurentPoly)):
            other = Scalar(other)
        if isinstance(other, Scalar):
            return self._num == other._num and self._den == other._den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __add__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._den == other._den:
            return Scalar._reduce(self._num + other._num, self._den)
        return Scalar._reduce(
            self._num * other._den + other._num * self._den, self._den * other._den
        )

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._from_canonical(-self._num, self._den)

    def __sub__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        return Scalar._reduce(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ScalarDivisionError("division by the zero Scalar")
        return Scalar(self._den, self._num)

    def __truediv__(self, other):
        other = _maybe_scalar(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> Scalar:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    @classmethod
    def _reduce(cls, num: LaurentPoly, den: LaurentPoly) -> Scalar:
        num, den = _canonical(num, den)
        return cls._from_canonical(num, den)

    # --- serialization ----------------------------------------------------

    def canonical_string(self) -> str:
        return f"({format_laurent(self._num)})/({format_laurent(self._den)})"

    def __str__(self) -> str:
        return self.canonical_string()

    def __repr__(self) -> str:
        return f"Scalar({self.canonical_string()})"


_ONE_POLY = LaurentPoly.constant(1)


def _as_poly(value: ScalarLike) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return LaurentPoly.constant(value)
    raise TypeError(f"Cannot build a Scalar part from {type(value).__name__}")


def _maybe_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, GaussianRational, LaurentPoly)):
        return Scalar(value)
    return None


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return LaurentPoly(), _ONE_POLY
    low = den.low_degree()
    lead = den.coefficient(low)
    unit = lead.inverse()
    den = den.shift(-low)
    num = num.shift(-low)
    if lead != 1:
        den = den * unit
        num = num * unit
    if den.is_monomial():
        return num, den
    num, den = cancel_common_factor(num, den)
    constant = den.coefficient(0)
    if constant != 1:
        unit = constant.inverse()
        num = num * unit
        den = den * unit
    return num, den


def scalar_from(value: ScalarLike) -> Scalar:
    return Scalar.coerce(value)


def u_power(exponent: int, coeff: Union[int, Fraction, GaussianRational] = 1) -> Scalar:
    """coeff · u^exponent, i.e. coeff · q^{exponent/2}"""
    return Scalar._from_canonical(LaurentPoly.monomial(exponent, coeff), _ONE_POLY)


def d_constant(base_exponent: int) -> Scalar:
    """
    d = p/(p - p^{-1})^2 with p = u^base_exponent.

    base_exponent 2 gives d, 1 gives d_1 (q -> q^{1/2}) and 4 gives d_2 (q -> q^2).
    """
    p = u_power(base_exponent)
    return p / (p - p.inverse()) ** 2


def imaginary_power(exponent: int) -> Scalar:
    """i^exponent"""
    return Scalar(GaussianRational(0, 1) ** (exponent % 4))


ZERO = Scalar._from_canonical(LaurentPoly(), _ONE_POLY)
ONE = Scalar._from_canonical(_ONE_POLY, _ONE_POLY)
U = u_power(1)
Q = u_power(2)
IMAG = Scalar(GaussianRational(0, 1))
