from typing import Any, Dict, List, Optional

from app.checks.base_check import BaseCheck, UnitOutcome
from app.config import settings
from app.services.modular_service import QDilogContext, make_context

DEFAULT_B = {
    "strong-coupling": ("STRONG_COUPLING_B_RE", "STRONG_COUPLING_B_IM"),
    "product": ("PRODUCT_REGIME_B_RE", "PRODUCT_REGIME_B_IM"),
    "kernel-relation": ("KERNEL_RELATION_B_RE", "KERNEL_RELATION_B_IM"),
}


def scaled_residual(lhs: complex, rhs: complex) -> float:
    """|lhs - rhs|, relative once |rhs| exceeds 1"""
    return abs(lhs - rhs) / max(1.0, abs(rhs))


class NumericCheck(BaseCheck):
    """
    Identity checked at sample points to a tolerance.

    Params: ``b_re``/``b_im`` (default from ``regime``), ``tol`` (default from
    ``tolerance_setting``) and ``samples`` (default from ``samples_setting``).
    Subclasses return named residuals per sample from ``residuals``.
    """

    kind = "numeric"
    regime = "strong-coupling"
    tolerance_setting = "DILOG_TOLERANCE"
    samples_setting = "DILOG_SAMPLES"

    @property
    def tolerance(self) -> Optional[float]:
        return float(self.params.get("tol", getattr(settings, self.tolerance_setting)))

    @property
    def b(self) -> complex:
        re_key, im_key = DEFAULT_B[self.regime]
        return complex(
            float(self.params.get("b_re", getattr(settings, re_key))),
            float(self.params.get("b_im", getattr(settings, im_key))),
        )

    def context(self) -> QDilogContext:
        return make_context(self.b)

    def require(self, ctx: QDilogContext) -> None:
        """Raise RegimeError when ``ctx`` cannot host the identity"""

    def validate_params(self) -> None:
        if not self.tolerance > 0:
            raise ValueError(f"tol must be positive, got {self.tolerance}")
        self.require(self.context())
        if not self.work_units():
            raise ValueError("no sample points given")

    def work_units(self) -> List[Any]:
        return list(self.params.get("samples", getattr(settings, self.samples_setting)))

    def residuals(self, sample: Any, ctx: QDilogContext) -> Dict[str, float]:
        raise NotImplementedError

    def check_unit(self, unit: Any) -> UnitOutcome:
        ctx = self.context()
        found = self.residuals(unit, ctx)
        tol = self.tolerance
        witnesses = [
            {"relation": name, "state": unit, "residual": residual, "tolerance": tol}
            for name, residual in sorted(found.items())
            if not residual <= tol
        ]
        self.logger.debug(f"{self.name} at {unit}: {found}")
        return UnitOutcome(checked=1, witnesses=witnesses, max_residual=max(found.values()))
