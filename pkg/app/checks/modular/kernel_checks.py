from dataclasses import replace
from typing import Any, Dict, List

from app.checks.check_registry import register_check
from app.services.modular_service import (
    KernelPoint,
    QDilogContext,
    RegimeError,
    kernel_eval,
    kernel_relation_sides,
)

from .numeric_check import NumericCheck, scaled_residual

# (σ1, σ1', σ2', σ3'); σ2 and σ3 follow from conservation
DEFAULT_KERNEL_POINTS = [[0.15, 0.3, -0.2, 0.1], [-0.1, 0.05, 0.2, -0.25]]


class KernelCheck(NumericCheck):
    """Checks on the R kernel at points given as [σ1, σ1', σ2', σ3']"""

    tolerance_setting = "DILOG_TOLERANCE"

    def work_units(self) -> List[Any]:
        return [list(point) for point in self.params.get("points", DEFAULT_KERNEL_POINTS)]

    @staticmethod
    def point(unit: Any) -> KernelPoint:
        sigma1, *sigma_prime = unit
        return KernelPoint.from_free(sigma1, sigma_prime)


@register_check("kernel_symmetry")
class KernelSymmetryCheck(KernelCheck):
    """The symmetric-gauge kernel is invariant under b -> 1/b"""

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        point = self.point(sample)
        value = kernel_eval(point, ctx)
        return {"b<->1/b": scaled_residual(kernel_eval(point, ctx.dual()), value)}


@register_check("kernel_convergence")
class KernelConvergenceCheck(KernelCheck):
    """The kernel is stable when every quadrature tolerance is tightened tenfold"""

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        point = self.point(sample)
        refined = replace(ctx, quadrature=ctx.quadrature.refined(0.1))
        return {"refined": scaled_residual(kernel_eval(point, refined), kernel_eval(point, ctx))}


@register_check("kernel_relation")
class KernelRelationCheck(KernelCheck):
    """The a⁺_2 intertwining relation carried by the kernel, in the reduced gauge"""

    regime = "kernel-relation"
    tolerance_setting = "KERNEL_RELATION_TOLERANCE"

    def work_units(self) -> List[Any]:
        return [list(point) for point in self.params.get("points", DEFAULT_KERNEL_POINTS[:1])]

    def require(self, ctx: QDilogContext) -> None:
        b = ctx.b
        if not (abs(b) < 1 and b.real < ctx.eta.real / 2 and ctx.product_regime):
            raise RegimeError(f"kernel relation is not available at b={b}")

    def residuals(self, sample, ctx: QDilogContext) -> Dict[str, float]:
        sigma1, *sigma_prime = sample
        return {"R a+_2": scaled_residual(*kernel_relation_sides(sigma1, sigma_prime, ctx))}
