import math
from typing import Dict

from app.checks.check_registry import register_check
from app.services.modular_service import (
    QDilogContext,
    RegimeError,
    appendix_sides,
    chi_b,
    chi_over_sqrt_phi,
    chi_product_identity_sides,
    chi_swap_sides,
    difference_sides,
    gauge_sides,
    nearest_root_residual,
    qdilog,
    qdilog_mpmath,
    reflection_sides,
    sqrt_phi_chi,
)

from .numeric_check import NumericCheck, scaled_residual


@register_check("difference")
class DifferenceCheck(NumericCheck):
    """φ(σ - ib/2) = (1 + e^{2πbσ}) φ(σ + ib/2), the same with 1/b, and φ(σ) = (1 + q e^{2πbσ}) φ(σ + ib)"""

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        return {
            "difference-b": scaled_residual(*difference_sides(sample, ctx)),
            "difference-1/b": scaled_residual(*difference_sides(sample, ctx, dual=True)),
            "gauge": scaled_residual(*gauge_sides(sample, ctx)),
        }


@register_check("unitarity")
class UnitarityCheck(NumericCheck):
    """|φ(σ)| = 1 for real σ when |b| = 1"""

    def require(self, ctx: QDilogContext) -> None:
        if abs(abs(ctx.b) - 1) > 1e-12:
            raise RegimeError(f"unitarity needs |b| = 1, got |b|={abs(ctx.b)}")

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        return {"|φ|=1": abs(abs(qdilog(sample, ctx)) - 1)}


@register_check("reflection")
class ReflectionCheck(NumericCheck):
    """χ_b(σ) = e^{-πσ/(2b)} χ_b(-σ)"""

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        return {"reflection": scaled_residual(*reflection_sides(sample, ctx))}


@register_check("product_identity")
class ProductIdentityCheck(NumericCheck):
    """χ_b(σ) χ_{1/b}(σ) = φ((σ+iη)/2) / φ((σ-iη)/2)"""

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        return {"χ_b χ_1/b": scaled_residual(*chi_product_identity_sides(sample, ctx))}


@register_check("chi_swap")
class ChiSwapCheck(NumericCheck):
    """
    The four boundary difference equations, a half-step and a full-step one
    for each of χ_b and χ_{1/b}. The ratios are compared with the
    nearest square root of their radicands.
    """

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        return {
            name: nearest_root_residual(ratio, radicand) / max(1.0, abs(ratio))
            for name, (ratio, radicand) in chi_swap_sides(sample, ctx).items()
        }


class AppendixCheck(NumericCheck):
    """Fourier transform identity of a χ product, sampled in λ"""

    identity = ""
    tolerance_setting = "INTEGRAL_TOLERANCE"
    samples_setting = "APPENDIX_LAMBDAS"

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        sides = appendix_sides(self.identity, sample, ctx)
        return {self.identity: scaled_residual(sides["lhs"], sides["rhs"])}


@register_check("appendixA1")
class ChiSquareFourierCheck(AppendixCheck):
    """∫ χ_b(σ)² e^{-2πiλσ} dσ in closed form"""

    identity = "appendixA1"


@register_check("appendixA2")
class ChiPairFourierCheck(AppendixCheck):
    """∫ χ_b(σ) χ_{1/b}(σ) e^{-2πiλσ} dσ in closed form"""

    identity = "appendixA2"


@register_check("routes")
class RouteAgreementCheck(NumericCheck):
    """
    Integral, product and mpmath evaluations of φ agree, the integral does
    not depend on the contour offset, and both χ_b routes agree up to sign.
    """

    regime = "product"

    def require(self, ctx: QDilogContext) -> None:
        if not ctx.product_regime:
            raise RegimeError(f"route comparison needs Im(b²) > 0, got b={ctx.b}")

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        integral = qdilog(sample, ctx, "integral")
        product = qdilog(sample, ctx, "product")
        shifted = ctx.with_quadrature(contour_offset=math.pi * min(ctx.b.real, (1 / ctx.b).real) / 4)
        chi_integral = chi_b(sample, ctx, "integral")
        chi_product = chi_b(sample, ctx, "product")
        return {
            "φ integral/product": scaled_residual(integral, product),
            "φ product/mpmath": scaled_residual(product, qdilog_mpmath(sample, ctx)),
            "φ contour offset": scaled_residual(qdilog(sample, shifted, "integral"), integral),
            "χ integral/product": min(
                scaled_residual(chi_integral, chi_product), scaled_residual(chi_integral, -chi_product)
            ),
            "√φ χ product forms": scaled_residual(
                sqrt_phi_chi(sample, ctx) * chi_over_sqrt_phi(sample, ctx), chi_integral ** 2
            ),
            "√φ χ / (χ/√φ)": scaled_residual(
                sqrt_phi_chi(sample, ctx) / chi_over_sqrt_phi(sample, ctx), integral
            ),
        }
