from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class ScalarDivisionError(ZeroDivisionError):
    """Raised when an exact quantity is divided by zero"""


class GaussianRational:
    """Exact complex number p + q·i with rational p, q"""

    __slots__ = ("_real", "_imag", "_hash")

    def __init__(self, real: Rational = 0, imag: Rational = 0) -> None:
        self._real = Fraction(real)
        self._imag = Fraction(imag)
        self._hash = None

    @property
    def real(self) -> Fraction:
        return self._real

    @property
    def imag(self) -> Fraction:
        return self._imag

    @classmethod
    def coerce(cls, value: Union[int, Fraction, "GaussianRational"]) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        raise TypeError(f"Cannot coerce {type(value).__name__} to GaussianRational")

    def is_zero(self) -> bool:
        return self._real == 0 and self._imag == 0

    def is_real(self) -> bool:
        return self._imag == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self._real, -self._imag)

    def norm(self) -> Fraction:
        return self._real * self._real + self._imag * self._imag

    def __repr__(self) -> str:
        return f"GaussianRational({self._real}, {self._imag})"

    def __str__(self) -> str:
        if self._imag == 0:
            return str(self._real)
        if self._real == 0:
            return _imag_part(self._imag)
        sign = "+" if self._imag > 0 else "-"
        return f"({self._real}{sign}{_imag_part(abs(self._imag))})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self._real == other._real and self._imag == other._imag
        if isinstance(other, (int, Fraction)):
            return self._imag == 0 and self._real == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._real, self._imag)) if self._imag else hash(self._real)
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self._real + other, self._imag)
        if isinstance(other, GaussianRational):
            return GaussianRational(self._real + other._real, self._imag + other._imag)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self._real, -self._imag)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self + (-GaussianRational.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self._real * other, self._imag * other)
        if isinstance(other, GaussianRational):
            if other._imag == 0:
                return GaussianRational(self._real * other._real, self._imag * other._real)
            if self._imag == 0:
                return GaussianRational(self._real * other._real, self._real * other._imag)
            return GaussianRational(
                self._real * other._real - self._imag * other._imag,
                self._real * other._imag + self._imag * other._real,
            )
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        if self.is_zero():
            raise ScalarDivisionError("GaussianRational division by zero")
        n = self.norm()
        return GaussianRational(self._real / n, -self._imag / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * GaussianRational.coerce(other).inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> GaussianRational:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __complex__(self) -> complex:
        return complex(float(self._real), float(self._imag))


def _imag_part(value: Fraction) -> str:
    if value == 1:
        return "i"
    if value == -1:
        return "-i"
    return f"{value}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
