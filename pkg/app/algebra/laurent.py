from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Tuple, Union

import sympy
from sympy.polys.domains import QQ_I

from .gaussian import GaussianRational, ScalarDivisionError

Coefficient = Union[int, Fraction, GaussianRational]

_U = sympy.Symbol("u")


class LaurentPoly:
    """
    Finite Laurent polynomial in u = q^{1/2} with Gaussian-rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coefficient] = None) -> None:
        cleaned: Dict[int, GaussianRational] = {}
        if terms:
            for exponent, coeff in terms.items():
                value = GaussianRational.coerce(coeff)
                if not value.is_zero():
                    cleaned[int(exponent)] = value
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[int, GaussianRational]) -> LaurentPoly:
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value: Coefficient) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: Coefficient = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    # --- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[int, GaussianRational]:
        return self._terms

    def items(self) -> Iterator[Tuple[int, GaussianRational]]:
        """Terms in ascending order of the u-exponent"""
        for exponent in sorted(self._terms):
            yield exponent, self._terms[exponent]

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms)

    def high_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def coefficient(self, exponent: int) -> GaussianRational:
        return self._terms.get(exponent, GaussianRational(0))

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    # --- arithmetic -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            total = result.get(exponent)
            total = coeff if total is None else total + coeff
            if total.is_zero():
                result.pop(exponent, None)
            else:
                result[exponent] = total
        return LaurentPoly._trusted(result)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._trusted({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            factor = GaussianRational.coerce(other)
            if factor.is_zero():
                return LaurentPoly()
            return LaurentPoly._trusted({e: c * factor for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        result: Dict[int, GaussianRational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = e1 + e2
                product = c1 * c2
                total = result.get(exponent)
                result[exponent] = product if total is None else total + product
        return LaurentPoly._trusted({e: c for e, c in result.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentPoly:
        if exponent < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly({-e * (-exponent): c.inverse() ** (-exponent)})
        result = LaurentPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, offset: int) -> LaurentPoly:
        """Multiply by u^offset"""
        return LaurentPoly._trusted({e + offset: c for e, c in self._terms.items()})

    def scale(self, factor: GaussianRational) -> LaurentPoly:
        return self * factor

    def substitute_power(self, power: int) -> LaurentPoly:
        """Replace u by u^power"""
        return LaurentPoly._trusted({e * power: c for e, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)})"

    def __str__(self) -> str:
        return format_laurent(self)


def format_laurent(poly: LaurentPoly) -> str:
    """Serialize with terms in ascending u-exponent, e.g. ``1 - u^2 + i*u^3``"""
    if poly.is_zero():
        return "0"
    pieces = []
    for position, (exponent, coeff) in enumerate(poly.items()):
        monomial = "" if exponent == 0 else ("u" if exponent == 1 else f"u^{exponent}")
        negative = coeff.is_real() and coeff.real < 0
        magnitude = -coeff if negative else coeff
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if position == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


# --- polynomial gcd through sympy's Gaussian-rational domain --------------

def _to_sympy_poly(poly: LaurentPoly) -> sympy.Poly:
    """Convert a polynomial (no negative exponents) to a sympy Poly over QQ_I"""
    rep = {
        (exponent,): sympy.Rational(c.real.numerator, c.real.denominator)
        + sympy.I * sympy.Rational(c.imag.numerator, c.imag.denominator)
        for exponent, c in poly.terms.items()
    }
    return sympy.Poly.from_dict(rep, _U, domain=QQ_I)


def _from_sympy_poly(poly: sympy.Poly) -> LaurentPoly:
    terms = {}
    for (exponent,), coeff in poly.as_dict(native=False).items():
        real, imag = sympy.sympify(coeff).as_real_imag()
        terms[exponent] = GaussianRational(
            Fraction(int(real.p), int(real.q)), Fraction(int(imag.p), int(imag.q))
        )
    return LaurentPoly(terms)


@lru_cache(maxsize=65536)
def cancel_common_factor(numerator: LaurentPoly, denominator: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    Remove the polynomial gcd of a fraction whose parts have no negative exponents.

    Returns the reduced (numerator, denominator); powers of u in the gcd are
    ignored since the callers keep denominators with a nonzero constant term.
    """
    if denominator.is_zero():
        raise ScalarDivisionError("denominator is zero")
    num_low = numerator.low_degree()
    num = numerator.shift(-num_low)
    g = _to_sympy_poly(num).gcd(_to_sympy_poly(denominator))
    if g.degree() <= 0:
        return numerator, denominator
    reduced_num = _from_sympy_poly(_to_sympy_poly(num).exquo(g)).shift(num_low)
    reduced_den = _from_sympy_poly(_to_sympy_poly(denominator).exquo(g))
    return reduced_num, reduced_den
