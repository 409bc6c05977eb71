"""
Modular layer: the non-compact quantum dilogarithm φ, the boundary wave
functions χ_b and point evaluations of the modular 3D R kernel.

φ and χ_b each have two evaluation routes:

- ``integral``: adaptive quadrature of the defining Fourier integral along
  R + iε, cut where the exponential tails fall under tolerance. Needs the
  argument inside the strip |Im| < Re η.
- ``product``: q-Pochhammer products in (q, q̄). Needs Im(b²) > 0 (φ is
  symmetric under b -> 1/b, so for φ any Im(b²) != 0 will do).

``auto`` takes the integral in the inner part of the strip and the product
near its edge and outside it; the integral only serves the edge when no
product is available. χ_b for Im(b²) < 0 is continued there through
χ_b χ_{1/b} = φ((σ+iη)/2) / φ((σ-iη)/2).

All evaluation is in log space; exp is taken once at the end.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.integrate import quad_vec

from app.config import settings

logger = logging.getLogger(__name__)

ROUTES = ("auto", "integral", "product")
GAUGES = ("symmetric", "reduced")
APPENDIX_IDENTITIES = ("appendixA1", "appendixA2")

_PI = math.pi
_LOG2 = math.log(2.0)
_MAX_PRODUCT_TERMS = 200_000
_TAIL_STEPS = 10
# fraction of the strip half-width kept for the integral route under `auto`
_STRIP_INTERIOR = 0.9


class RegimeError(ValueError):
    """Raised when b or an argument lies outside every available route"""


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature misses its tolerance"""

    def __init__(self, message: str, estimate: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate


class TailBoundError(QuadratureError):
    """Raised when no cutoff brings the tail estimate under tolerance"""


@dataclass(frozen=True)
class QuadratureSettings:
    limit: int = 2000
    epsabs: float = 1e-12
    epsrel: float = 1e-12
    tail_tolerance: float = 1e-13
    # None means half the distance to the nearest pole above the real axis
    contour_offset: Optional[float] = None

    def refined(self, factor: float = 0.5) -> "QuadratureSettings":
        return replace(
            self,
            epsabs=self.epsabs * factor,
            epsrel=self.epsrel * factor,
            tail_tolerance=self.tail_tolerance * factor,
        )


@dataclass(frozen=True)
class QDilogContext:
    """
    Immutable modular parameter b with its derived quantities.

    q = e^{iπb²}, q̃ = e^{iπ/b²}, q̄ = e^{-iπ/b²}, η = (b + 1/b)/2.
    """

    b: complex
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    product_tolerance: float = 1e-17

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))
        if not self.b.real > 0:
            raise RegimeError(f"Re(b) must be positive, got b={self.b}")

    @property
    def q(self) -> complex:
        return cmath.exp(1j * _PI * self.b * self.b)

    @property
    def q_half(self) -> complex:
        return cmath.exp(0.5j * _PI * self.b * self.b)

    @property
    def q_tilde(self) -> complex:
        return cmath.exp(1j * _PI / (self.b * self.b))

    @property
    def q_bar(self) -> complex:
        return cmath.exp(-1j * _PI / (self.b * self.b))

    @property
    def eta(self) -> complex:
        return (self.b + 1 / self.b) / 2

    @property
    def product_regime(self) -> bool:
        return (self.b * self.b).imag > 0

    @property
    def strong_coupling(self) -> bool:
        eta = self.eta
        return abs(abs(self.b) - 1) < 1e-12 and 0 < eta.real < 1 and abs(eta.imag) < 1e-12

    @property
    def regime(self) -> str:
        if self.strong_coupling:
            return "strong-coupling"
        if self.product_regime:
            return "product"
        return "generic"

    def dual(self) -> "QDilogContext":
        """The same settings with b -> 1/b"""
        return replace(self, b=1 / self.b)

    def with_quadrature(self, **changes) -> "QDilogContext":
        return replace(self, quadrature=replace(self.quadrature, **changes))

    def in_strip(self, z: complex, fraction: float = 1.0) -> bool:
        return abs(complex(z).imag) < fraction * self.eta.real

    def to_json(self) -> Dict:
        return {
            "b": [self.b.real, self.b.imag],
            "eta": [self.eta.real, self.eta.imag],
            "regime": self.regime,
            "quad_limit": self.quadrature.limit,
            "quad_epsabs": self.quadrature.epsabs,
            "quad_epsrel": self.quadrature.epsrel,
        }


def context_from_settings(kind: str = "strong-coupling") -> QDilogContext:
    """Default context for ``kind`` in {"strong-coupling", "product"} from app settings"""
    if kind == "strong-coupling":
        b = complex(settings.STRONG_COUPLING_B_RE, settings.STRONG_COUPLING_B_IM)
    elif kind == "product":
        b = complex(settings.PRODUCT_REGIME_B_RE, settings.PRODUCT_REGIME_B_IM)
    else:
        raise RegimeError(f"unknown regime '{kind}'")
    return make_context(b)


def make_context(b: complex) -> QDilogContext:
    quadrature = QuadratureSettings(
        limit=settings.QUAD_LIMIT,
        epsabs=settings.QUAD_EPSABS,
        epsrel=settings.QUAD_EPSREL,
        tail_tolerance=settings.QUAD_EPSABS / 10,
    )
    return QDilogContext(b=complex(b), quadrature=quadrature)


# --- quadrature plumbing -----------------------------------------------------

def _integrate(
    integrand: Callable[[float], complex],
    lower: float,
    upper: float,
    quadrature: QuadratureSettings,
    points: Sequence[float] = (),
) -> Tuple[complex, float]:
    """Integrate a complex function of a real variable; returns (value, error)"""

    def pair(x: float) -> np.ndarray:
        value = integrand(x)
        return np.array([value.real, value.imag])

    breaks = [p for p in points if lower < p < upper] or None
    result, error = quad_vec(
        pair,
        lower,
        upper,
        epsabs=quadrature.epsabs,
        epsrel=quadrature.epsrel,
        limit=quadrature.limit,
        points=breaks,
    )
    value = complex(result[0], result[1])
    error = float(error)
    if not (math.isfinite(error) and cmath.isfinite(value)):
        raise QuadratureError("quadrature produced a non-finite value", estimate=error)
    budget = 1e3 * max(quadrature.epsabs, quadrature.epsrel * abs(value))
    if error > budget:
        raise QuadratureError(
            f"quadrature error {error:.3e} above budget {budget:.3e}", estimate=error
        )
    return value, error


def _tail_cutoffs(
    magnitude: Callable[[float], float],
    left_rate: float,
    right_rate: float,
    tolerance: float,
    start: float = 1.0,
) -> Tuple[float, float]:
    """
    Interval [-L_left, L_right] outside of which an exponentially decaying
    integrand contributes less than ``tolerance``.

    The tail beyond L is bounded by |f(L)| / rate.
    """
    cutoffs = []
    for sign, rate in ((-1.0, left_rate), (1.0, right_rate)):
        side = "left" if sign < 0 else "right"
        if rate <= 0:
            raise TailBoundError(f"integrand does not decay on the {side}")
        cutoff = max(start, math.log(1.0 / tolerance) / rate)
        estimate = math.inf
        for _ in range(_TAIL_STEPS):
            estimate = magnitude(sign * cutoff) / rate
            if estimate < tolerance:
                break
            cutoff *= 1.5
        else:
            raise TailBoundError(
                f"{side} tail estimate {estimate:.3e} above {tolerance:.3e}", estimate=estimate
            )
        cutoffs.append(cutoff)
    return -cutoffs[0], cutoffs[1]


def _log_sinh(a: complex) -> complex:
    if a.real >= 0:
        return a - _LOG2 + cmath.log(1 - cmath.exp(-2 * a))
    return -a - _LOG2 + cmath.log(1 - cmath.exp(2 * a)) + 1j * _PI


def _log_cosh(a: complex) -> complex:
    if a.real < 0:
        a = -a
    return a - _LOG2 + cmath.log(1 + cmath.exp(-2 * a))


def _fourier_log(
    z: complex,
    ctx: QDilogContext,
    log_denominator: Callable[[complex], complex],
    weight: float,
    pole_distance: float,
) -> complex:
    """
    weight * ∫_{R+iε} e^{-2izw} / (D(w) w) dw with log D = ``log_denominator``.

    D has a zero at w = 0 and its next zero above the axis at height
    ``pole_distance``; the denominator grows like e^{2 Re η |Re w|}.
    """
    quadrature = ctx.quadrature
    base = pole_distance / 2
    offset = quadrature.contour_offset or base
    if not 0 < offset < pole_distance:
        raise RegimeError(f"contour offset {offset} outside (0, {pole_distance})")
    # keeps |e^{-2izw}| <= e^2 along the contour
    if z.real > 0:
        offset = min(offset, 1.0 / z.real)

    def integrand(x: float) -> complex:
        w = complex(x, offset)
        return cmath.exp(-2j * z * w - log_denominator(w) - cmath.log(w))

    eta = ctx.eta.real
    lower, upper = _tail_cutoffs(
        lambda x: abs(integrand(x)),
        2 * (eta + z.imag),
        2 * (eta - z.imag),
        quadrature.tail_tolerance / weight,
    )
    value, _ = _integrate(integrand, lower, upper, quadrature, points=(0.0,))
    return weight * value


def _log_product(prefactor: complex, ratio: complex, tolerance: float) -> complex:
    """sum_{k>=0} log(1 + prefactor * ratio^k) with principal logarithms"""
    size = abs(ratio)
    if size >= 1:
        raise RegimeError(f"product ratio has modulus {size:.6f} >= 1")
    if prefactor == 0:
        return 0j
    terms = max(0, math.ceil((math.log(abs(prefactor)) - math.log(tolerance)) / -math.log(size))) + 1
    if terms > _MAX_PRODUCT_TERMS:
        raise RegimeError(f"product needs {terms} factors")
    powers = prefactor * np.power(ratio, np.arange(terms))
    return complex(np.sum(np.log1p(powers)))


# --- φ -----------------------------------------------------------------------

def _phi_product_context(ctx: QDilogContext) -> QDilogContext:
    square = ctx.b * ctx.b
    if square.imag > 0:
        return ctx
    if square.imag < 0:
        return ctx.dual()
    raise RegimeError(f"no product representation of φ for real b²={square}")


def _log_qdilog_integral(z: complex, ctx: QDilogContext) -> complex:
    if not ctx.in_strip(z):
        raise RegimeError(f"Im z={z.imag:.6f} outside the strip |Im z| < {ctx.eta.real:.6f}")
    b = ctx.b
    return _fourier_log(
        z,
        ctx,
        lambda w: _log_sinh(w * b) + _log_sinh(w / b),
        0.25,
        _PI * min(b.real, (1 / b).real),
    )


def _log_qdilog_product(z: complex, ctx: QDilogContext) -> complex:
    c = _phi_product_context(ctx)
    tol = ctx.product_tolerance
    w = cmath.exp(2 * _PI * c.b * z)
    w_bar = cmath.exp(2 * _PI * z / c.b)
    q, q_bar = c.q, c.q_bar
    return _log_product(q * w, q * q, tol) - _log_product(q_bar * w_bar, q_bar * q_bar, tol)


def _phi_route(z: complex, ctx: QDilogContext, route: str) -> str:
    if route not in ROUTES:
        raise ValueError(f"unknown route '{route}', expected one of {ROUTES}")
    if route != "auto":
        return route
    if ctx.in_strip(z, _STRIP_INTERIOR):
        return "integral"
    if (ctx.b * ctx.b).imag != 0:
        return "product"
    if ctx.in_strip(z):
        return "integral"
    raise RegimeError(f"z={z} is outside the strip and b² is real")


def log_qdilog(z: complex, ctx: QDilogContext, route: str = "auto") -> complex:
    """log φ(z); the branch is whatever the chosen route sums to"""
    z = complex(z)
    if _phi_route(z, ctx, route) == "integral":
        return _log_qdilog_integral(z, ctx)
    return _log_qdilog_product(z, ctx)


def qdilog(z: complex, ctx: QDilogContext, route: str = "auto") -> complex:
    """The non-compact quantum dilogarithm φ(z)"""
    return cmath.exp(log_qdilog(z, ctx, route))


def fast_route(ctx: QDilogContext) -> str:
    """Cheapest φ route valid for every argument under ``ctx``"""
    return "product" if (ctx.b * ctx.b).imag != 0 else "integral"


def qdilog_mpmath(z: complex, ctx: QDilogContext, dps: int = 30) -> complex:
    """φ(z) from mpmath q-Pochhammer symbols at ``dps`` digits"""
    c = _phi_product_context(ctx)
    with mpmath.workdps(dps):
        b = mpmath.mpc(c.b.real, c.b.imag)
        z = mpmath.mpc(complex(z).real, complex(z).imag)
        q = mpmath.exp(1j * mpmath.pi * b * b)
        q_bar = mpmath.exp(-1j * mpmath.pi / (b * b))
        w = mpmath.exp(2 * mpmath.pi * b * z)
        w_bar = mpmath.exp(2 * mpmath.pi * z / b)
        value = mpmath.qp(-q * w, q * q) / mpmath.qp(-q_bar * w_bar, q_bar * q_bar)
        return complex(value)


# --- χ_b ---------------------------------------------------------------------

def _log_chi_integral(sigma: complex, ctx: QDilogContext) -> complex:
    if not ctx.in_strip(sigma):
        raise RegimeError(
            f"Im σ={sigma.imag:.6f} outside the strip |Im σ| < {ctx.eta.real:.6f}"
        )
    b = ctx.b
    return _fourier_log(
        sigma,
        ctx,
        lambda w: _log_sinh(w * b) + _log_cosh(w / b),
        0.125,
        min(_PI * (1 / b).real, _PI * b.real / 2),
    )


def _log_chi_product(sigma: complex, ctx: QDilogContext) -> complex:
    if not ctx.product_regime:
        raise RegimeError(f"χ_b product needs Im(b²) > 0, got b={ctx.b}")
    tol = ctx.product_tolerance
    half_w = cmath.exp(_PI * ctx.b * sigma)
    w_bar = cmath.exp(2 * _PI * sigma / ctx.b)
    q, q_half, q_bar = ctx.q, ctx.q_half, ctx.q_bar
    q_bar4 = q_bar ** 4
    total = (
        _log_product(1j * q_half * half_w, q, tol)
        - _log_product(-1j * q_half * half_w, q, tol)
        + _log_product(q_bar ** 3 * w_bar, q_bar4, tol)
        - _log_product(q_bar * w_bar, q_bar4, tol)
    )
    return total / 2


def _log_chi_continued(sigma: complex, ctx: QDilogContext) -> complex:
    partner = ctx.dual()
    if not partner.product_regime:
        raise RegimeError(f"no continuation of χ_b for b={ctx.b}")
    eta = ctx.eta
    return (
        log_qdilog((sigma + 1j * eta) / 2, ctx)
        - log_qdilog((sigma - 1j * eta) / 2, ctx)
        - log_chi_b(sigma, partner)
    )


def _chi_route(sigma: complex, ctx: QDilogContext, route: str) -> str:
    if route not in ROUTES:
        raise ValueError(f"unknown route '{route}', expected one of {ROUTES}")
    if route != "auto":
        return route
    if ctx.in_strip(sigma, _STRIP_INTERIOR):
        return "integral"
    if ctx.product_regime:
        return "product"
    if (ctx.b * ctx.b).imag < 0:
        return "continuation"
    if ctx.in_strip(sigma):
        return "integral"
    raise RegimeError(f"σ={sigma} is outside the strip and b² is real")


def log_chi_b(sigma: complex, ctx: QDilogContext, route: str = "auto") -> complex:
    """log χ_b(σ)"""
    sigma = complex(sigma)
    chosen = _chi_route(sigma, ctx, route)
    if chosen == "integral":
        return _log_chi_integral(sigma, ctx)
    if chosen == "product":
        return _log_chi_product(sigma, ctx)
    return _log_chi_continued(sigma, ctx)


def chi_b(sigma: complex, ctx: QDilogContext, route: str = "auto") -> complex:
    """Boundary wave function χ_b(σ)"""
    return cmath.exp(log_chi_b(sigma, ctx, route))


def sqrt_phi_chi(sigma: complex, ctx: QDilogContext) -> complex:
    """sqrt(φ(σ)) χ_b(σ) as the single product (-i q^{1/2} w^{1/2}; q) / (-q̄ w̄; q̄⁴)"""
    if not ctx.product_regime:
        raise RegimeError(f"product forms need Im(b²) > 0, got b={ctx.b}")
    sigma = complex(sigma)
    tol = ctx.product_tolerance
    half_w = cmath.exp(_PI * ctx.b * sigma)
    w_bar = cmath.exp(2 * _PI * sigma / ctx.b)
    q_bar = ctx.q_bar
    return cmath.exp(
        _log_product(1j * ctx.q_half * half_w, ctx.q, tol)
        - _log_product(q_bar * w_bar, q_bar ** 4, tol)
    )


def chi_over_sqrt_phi(sigma: complex, ctx: QDilogContext) -> complex:
    """χ_b(σ) / sqrt(φ(σ)) as the single product (-q̄³ w̄; q̄⁴) / (i q^{1/2} w^{1/2}; q)"""
    if not ctx.product_regime:
        raise RegimeError(f"product forms need Im(b²) > 0, got b={ctx.b}")
    sigma = complex(sigma)
    tol = ctx.product_tolerance
    half_w = cmath.exp(_PI * ctx.b * sigma)
    w_bar = cmath.exp(2 * _PI * sigma / ctx.b)
    q_bar = ctx.q_bar
    return cmath.exp(
        _log_product(q_bar ** 3 * w_bar, q_bar ** 4, tol)
        - _log_product(-1j * ctx.q_half * half_w, ctx.q, tol)
    )


# --- identity sides ------------------------------------------------------------

def nearest_root_residual(lhs: complex, radicand: complex) -> float:
    """|lhs - r| for the square root r of ``radicand`` closest to ``lhs``"""
    root = cmath.sqrt(radicand)
    return min(abs(lhs - root), abs(lhs + root))


def difference_sides(sigma: complex, ctx: QDilogContext, dual: bool = False) -> Tuple[complex, complex]:
    """φ(σ - ip/2) / φ(σ + ip/2) against 1 + e^{2πpσ}, p = b or 1/b"""
    p = 1 / ctx.b if dual else ctx.b
    sigma = complex(sigma)
    lhs = cmath.exp(log_qdilog(sigma - 0.5j * p, ctx) - log_qdilog(sigma + 0.5j * p, ctx))
    return lhs, 1 + cmath.exp(2 * _PI * p * sigma)


def gauge_sides(sigma: complex, ctx: QDilogContext) -> Tuple[complex, complex]:
    """φ(σ) / φ(σ + ib) against 1 + q e^{2πbσ}"""
    sigma = complex(sigma)
    lhs = cmath.exp(log_qdilog(sigma, ctx) - log_qdilog(sigma + 1j * ctx.b, ctx))
    return lhs, a_minus_radicand(sigma, ctx)


def reflection_sides(sigma: float, ctx: QDilogContext) -> Tuple[complex, complex]:
    """χ_b(σ) / χ_b(-σ) against e^{-πσ/(2b)}"""
    sigma = complex(sigma)
    lhs = cmath.exp(log_chi_b(sigma, ctx) - log_chi_b(-sigma, ctx))
    return lhs, cmath.exp(-_PI * sigma / (2 * ctx.b))


def chi_product_identity_sides(sigma: complex, ctx: QDilogContext) -> Tuple[complex, complex]:
    """χ_b(σ) χ_{1/b}(σ) against φ((σ+iη)/2) / φ((σ-iη)/2)"""
    sigma = complex(sigma)
    eta = ctx.eta
    lhs = cmath.exp(log_chi_b(sigma, ctx) + log_chi_b(sigma, ctx.dual()))
    rhs = cmath.exp(
        log_qdilog((sigma + 1j * eta) / 2, ctx) - log_qdilog((sigma - 1j * eta) / 2, ctx)
    )
    return lhs, rhs


def _half_shift_sides(sigma: complex, chi_ctx: QDilogContext) -> Tuple[complex, complex]:
    p = chi_ctx.b
    lhs = cmath.exp(log_chi_b(sigma - 0.5j * p, chi_ctx) - log_chi_b(sigma + 0.5j * p, chi_ctx))
    x = 1j * cmath.exp(_PI * p * sigma)
    return lhs, (1 + x) / (1 - x)


def _full_shift_sides(sigma: complex, chi_ctx: QDilogContext) -> Tuple[complex, complex]:
    p = chi_ctx.b
    shift = 1j / p
    lhs = cmath.exp(log_chi_b(sigma - shift, chi_ctx) - log_chi_b(sigma + shift, chi_ctx))
    radicand = (1 + cmath.exp(2 * _PI * (sigma + shift / 2) / p)) / (
        1 + cmath.exp(2 * _PI * (sigma - shift / 2) / p)
    )
    return lhs, radicand


def chi_swap_sides(sigma: complex, ctx: QDilogContext) -> Dict[str, Tuple[complex, complex]]:
    """
    (ratio, radicand) for the four boundary difference equations.

    Each of χ_b and χ_{1/b} is tested against one half-step and one
    full-step equation.
    """
    sigma = complex(sigma)
    partner = ctx.dual()
    return {
        "chi_b half-step": _half_shift_sides(sigma, ctx),
        "chi_b full-step": _full_shift_sides(sigma, ctx),
        "chi_1/b full-step": _full_shift_sides(sigma, partner),
        "chi_1/b half-step": _half_shift_sides(sigma, partner),
    }


def appendix_offset(ctx: QDilogContext) -> float:
    """Imaginary part δ added to λ so both Fourier integrals converge"""
    return min((1 / ctx.b).real, ctx.eta.real) / 4


def appendix_sides(identity: str, lam: float, ctx: QDilogContext) -> Dict:
    """
    Both sides of the Fourier identities for χ_b² and χ_b χ_{1/b}, at λ + iδ.

    Returns {"lhs", "rhs", "lambda", "error"}; "error" is the quadrature
    estimate of the left side.
    """
    if identity not in APPENDIX_IDENTITIES:
        raise ValueError(f"unknown identity '{identity}', expected one of {APPENDIX_IDENTITIES}")
    lam = complex(lam)
    if lam.imag == 0:
        lam += 1j * appendix_offset(ctx)
    b, eta = ctx.b, ctx.eta
    partner = ctx.dual()
    square_route = "product" if ctx.product_regime else "auto"

    if identity == "appendixA1":
        def log_integrand(sigma: float) -> complex:
            return 2 * log_chi_b(sigma, ctx, square_route) - 2j * _PI * sigma * lam

        right_rate = _PI * (1 / b).real - 2 * _PI * lam.imag
        rhs = cmath.exp(
            -_PI / (2 * b) * (2 * lam - 1j * eta) + 2 * log_chi_b(1j * eta - 2 * lam, ctx)
        ) / cmath.cosh(_PI * b * lam)
    else:
        def log_integrand(sigma: float) -> complex:
            return log_chi_b(sigma, ctx) + log_chi_b(sigma, partner) - 2j * _PI * sigma * lam

        right_rate = _PI * eta.real - 2 * _PI * lam.imag
        rhs = 2 * cmath.exp(
            -0.5j * _PI * eta * eta
            + log_qdilog(2 * lam, ctx)
            - log_qdilog(2 * lam - 1j * eta, ctx)
            + 2 * _PI * lam * eta
        )

    def integrand(sigma: float) -> complex:
        return cmath.exp(log_integrand(sigma))

    quadrature = ctx.quadrature
    lower, upper = _tail_cutoffs(
        lambda x: abs(integrand(x)), 2 * _PI * lam.imag, right_rate, quadrature.tail_tolerance
    )
    lhs, error = _integrate(integrand, lower, upper, quadrature)
    logger.debug(f"{identity} at λ={lam}: lhs={lhs}, rhs={rhs}, window=[{lower:.2f}, {upper:.2f}]")
    return {"lhs": lhs, "rhs": rhs, "lambda": lam, "error": error}


# --- modular representation helpers --------------------------------------------

def modular_k(sigma: complex, ctx: QDilogContext) -> complex:
    """Eigenvalue of k on |σ>: -i e^{πbσ}"""
    return -1j * cmath.exp(_PI * ctx.b * complex(sigma))


def a_plus_radicand(sigma: complex, ctx: QDilogContext) -> complex:
    """1 - q^{-1} k(σ)², the square of the a⁺ factor"""
    k = modular_k(sigma, ctx)
    return 1 - k * k / ctx.q


def a_minus_radicand(sigma: complex, ctx: QDilogContext) -> complex:
    """1 - q k(σ)², the square of the a⁻ factor"""
    k = modular_k(sigma, ctx)
    return 1 - ctx.q * k * k


def a_plus_factor(sigma: complex, ctx: QDilogContext) -> complex:
    return cmath.sqrt(a_plus_radicand(sigma, ctx))


def a_minus_factor(sigma: complex, ctx: QDilogContext) -> complex:
    return cmath.sqrt(a_minus_radicand(sigma, ctx))


def modular_h(sigma: complex, ctx: QDilogContext, dual: bool = False) -> complex:
    """Eigenvalue of h on |σ>: -iσ/b, or -ibσ in the dual copy"""
    sigma = complex(sigma)
    return -1j * ctx.b * sigma if dual else -1j * sigma / ctx.b


def spectral_z(lam: complex, ctx: QDilogContext) -> complex:
    """Multiplicative spectral parameter z = e^{-2πbλ}"""
    return cmath.exp(-2 * _PI * ctx.b * complex(lam))


def kd_weight(alpha: float, beta_prime: float, ctx: QDilogContext) -> complex:
    """Zig-zag weight of (K_d ⊗ 1) S (1 ⊗ K_d^{-1}) on <α,·|S|·,β'>"""
    return cmath.exp(_PI * ctx.eta * (complex(alpha) - complex(beta_prime)))


# --- kernel --------------------------------------------------------------------

@dataclass(frozen=True)
class KernelPoint:
    """Arguments <σ1,σ2,σ3| R |σ1',σ2',σ3'> of the delta-stripped kernel"""

    sigma: Tuple[complex, complex, complex]
    sigma_prime: Tuple[complex, complex, complex]

    def __post_init__(self):
        if len(self.sigma) != 3 or len(self.sigma_prime) != 3:
            raise ValueError("kernel points carry three bra and three ket arguments")
        object.__setattr__(self, "sigma", tuple(complex(s) for s in self.sigma))
        object.__setattr__(self, "sigma_prime", tuple(complex(s) for s in self.sigma_prime))

    @classmethod
    def from_free(cls, sigma1: complex, sigma_prime: Sequence[complex]) -> "KernelPoint":
        """Fill σ2, σ3 from σ1 and σ' so both deltas hold"""
        p1, p2, p3 = sigma_prime
        sigma2 = p1 + p2 - sigma1
        sigma3 = p2 + p3 - sigma2
        return cls((sigma1, sigma2, sigma3), (p1, p2, p3))

    def conserves(self, tolerance: float = 1e-12) -> bool:
        s1, s2, s3 = self.sigma
        p1, p2, p3 = self.sigma_prime
        scale = 1 + max(abs(x) for x in self.sigma + self.sigma_prime)
        return (
            abs(s1 + s2 - p1 - p2) <= tolerance * scale
            and abs(s2 + s3 - p2 - p3) <= tolerance * scale
        )

    def to_json(self) -> Dict:
        return {
            "sigma": [[s.real, s.imag] for s in self.sigma],
            "sigma_prime": [[s.real, s.imag] for s in self.sigma_prime],
        }


def reduced_kernel(
    sigma1: complex,
    sigma3: complex,
    sigma_prime: Sequence[complex],
    ctx: QDilogContext,
    route: Optional[str] = None,
) -> Tuple[complex, float]:
    """
    K0 = e^{-iπ(σ1σ3 - iη(σ1+σ3-σ2'))} ∫ du e^{2πiu(σ2'-iη)}
         φ(u+(σ1'+σ3'+iη)/2) φ(u+(-σ1-σ3+iη)/2) / φ(u+(σ1-σ3-iη)/2) φ(u+(σ3-σ1-iη)/2)

    Returns (value, error estimate).
    """
    route = route or fast_route(ctx)
    p1, p2, p3 = (complex(s) for s in sigma_prime)
    sigma1, sigma3 = complex(sigma1), complex(sigma3)
    eta = ctx.eta
    upper_shifts = ((p1 + p3 + 1j * eta) / 2, (-sigma1 - sigma3 + 1j * eta) / 2)
    lower_shifts = ((sigma1 - sigma3 - 1j * eta) / 2, (sigma3 - sigma1 - 1j * eta) / 2)

    def integrand(u: float) -> complex:
        value = 2j * _PI * u * (p2 - 1j * eta)
        for shift in upper_shifts:
            value += log_qdilog(u + shift, ctx, route)
        for shift in lower_shifts:
            value -= log_qdilog(u + shift, ctx, route)
        return cmath.exp(value)

    quadrature = ctx.quadrature
    rate = _PI * eta.real
    lower, upper = _tail_cutoffs(lambda u: abs(integrand(u)), rate, rate, quadrature.tail_tolerance)
    integral, error = _integrate(integrand, lower, upper, quadrature)
    prefactor = cmath.exp(-1j * _PI * (sigma1 * sigma3 - 1j * eta * (sigma1 + sigma3 - p2)))
    return prefactor * integral, abs(prefactor) * error


def symmetric_prefactor(point: KernelPoint, ctx: QDilogContext) -> complex:
    """sqrt(φ(σ1)φ(σ2)φ(σ3) / φ(σ1')φ(σ2')φ(σ3')) as exp of half the log sum"""
    total = sum(log_qdilog(s, ctx) for s in point.sigma)
    total -= sum(log_qdilog(s, ctx) for s in point.sigma_prime)
    return cmath.exp(total / 2)


def kernel_eval(
    point: KernelPoint,
    ctx: QDilogContext,
    gauge: str = "symmetric",
    route: Optional[str] = None,
) -> complex:
    """
    Delta-stripped kernel <σ|R|σ'>. Points off the conservation surface
    return 0 without any quadrature.
    """
    if gauge not in GAUGES:
        raise ValueError(f"unknown gauge '{gauge}', expected one of {GAUGES}")
    if not point.conserves():
        return 0j
    sigma1, _, sigma3 = point.sigma
    value, _ = reduced_kernel(sigma1, sigma3, point.sigma_prime, ctx, route)
    if gauge == "reduced":
        return value
    return value * symmetric_prefactor(point, ctx)


def kernel_relation_sides(
    sigma1: float, sigma_prime: Sequence[float], ctx: QDilogContext
) -> Tuple[complex, complex]:
    """
    Reduced-gauge form of R a⁺_2 = (a⁺_1 a⁺_3 - k_1 k_3 a⁺_2) R at one point:

        (1 + q e^{2πbσ2'}) K0(σ; σ' + ib e2)
          = (1 + q^{-1} e^{2πbσ1})(1 + q^{-1} e^{2πbσ3}) K0(σ - ib(e1+e3); σ')
          + e^{πb(σ1+σ3)} (1 + q^{-1} e^{2πbσ2}) K0(σ - ib e2; σ')

    σ2 and σ3 are fixed by the deltas of the left-hand kernel.
    """
    b = ctx.b
    if not (abs(b) < 1 and b.real < ctx.eta.real / 2 and ctx.product_regime):
        raise RegimeError(
            f"kernel relation needs |b| < 1, Re b < Re η / 2 and Im(b²) > 0, got b={b}"
        )
    p1, p2, p3 = (complex(s) for s in sigma_prime)
    sigma1 = complex(sigma1)
    sigma2 = p1 + p2 + 1j * b - sigma1
    sigma3 = p3 + sigma1 - p1
    shift = 1j * b

    shifted, _ = reduced_kernel(sigma1, sigma3, (p1, p2 + shift, p3), ctx)
    outer, _ = reduced_kernel(sigma1 - shift, sigma3 - shift, (p1, p2, p3), ctx)
    middle, _ = reduced_kernel(sigma1, sigma3, (p1, p2, p3), ctx)

    lhs = a_minus_radicand(p2, ctx) * shifted
    k1k3 = (1j * modular_k(sigma1, ctx)) * (1j * modular_k(sigma3, ctx))
    rhs = (
        a_plus_radicand(sigma1, ctx) * a_plus_radicand(sigma3, ctx) * outer
        + k1k3 * a_plus_radicand(sigma2, ctx) * middle
    )
    return lhs, rhs


def modular_S_element(
    s: int,
    t: int,
    lam: complex,
    external: Sequence[float],
    ctx: QDilogContext,
    n: int = 1,
    zigzag: bool = False,
) -> Tuple[complex, float]:
    """
    <α,β| S^{s,t}(λ) |α',β'> for one site:

        ∫ dσ0 χ^{(s)}(σ0) e^{2πiλσ0} <α,β,σ0|R|α',β',σ1> χ^{(t)}(σ1),  σ1 = β + σ0 - β'

    with χ^{(1)} = χ_b and χ^{(2)} = χ_{1/b}. Returns (value, error estimate).
    """
    if n != 1:
        raise ValueError(f"modular S elements are implemented for n = 1, got n={n}")
    if s not in (1, 2) or t not in (1, 2):
        raise ValueError(f"boundary labels must be 1 or 2, got s={s}, t={t}")
    alpha, beta, alpha_p, beta_p = (complex(x) for x in external)
    scale = 1 + max(abs(alpha), abs(beta), abs(alpha_p), abs(beta_p))
    if abs(alpha + beta - alpha_p - beta_p) > 1e-12 * scale:
        return 0j, 0.0

    lam = complex(lam)
    bra_ctx = ctx if s == 1 else ctx.dual()
    ket_ctx = ctx if t == 1 else ctx.dual()

    def integrand(sigma0: float) -> complex:
        sigma1 = beta + sigma0 - beta_p
        point = KernelPoint((alpha, beta, sigma0), (alpha_p, beta_p, sigma1))
        weight = cmath.exp(
            log_chi_b(sigma0, bra_ctx) + 2j * _PI * lam * sigma0 + log_chi_b(sigma1, ket_ctx)
        )
        return weight * kernel_eval(point, ctx)

    quadrature = ctx.quadrature
    rate = _PI * ctx.eta.real / 2
    lower, upper = _tail_cutoffs(
        lambda x: abs(integrand(x)), rate, rate, quadrature.tail_tolerance
    )
    value, error = _integrate(integrand, lower, upper, quadrature)
    if zigzag:
        weight = kd_weight(alpha, beta_p, ctx)
        value, error = value * weight, error * abs(weight)
    logger.info(f"S^{s},{t} element at λ={lam} {tuple(external)}: {value} ± {error:.2e}")
    return value, error
