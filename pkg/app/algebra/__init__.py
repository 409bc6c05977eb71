"""
Exact algebra package

Rational functions in u = q^{1/2} over the Gaussian rationals and the
q-series helpers built on them.
"""

from .gaussian import GaussianRational, ScalarDivisionError
from .laurent import LaurentPoly, format_laurent
from .qseries import (
    q_binomial,
    q_integer,
    q_integer_factorial,
    q_pochhammer,
    q_pochhammer_quotient,
)
from .scalar import (
    IMAG,
    ONE,
    Q,
    U,
    ZERO,
    Scalar,
    d_constant,
    imaginary_power,
    u_power,
)

__all__ = [
    # Field elements
    "GaussianRational",
    "LaurentPoly",
    "Scalar",
    "ScalarDivisionError",
    "format_laurent",
    # Constants
    "IMAG",
    "ONE",
    "Q",
    "U",
    "ZERO",
    "d_constant",
    "imaginary_power",
    "u_power",
    # q-series
    "q_binomial",
    "q_integer",
    "q_integer_factorial",
    "q_pochhammer",
    "q_pochhammer_quotient",
]
