from pydantic import BaseModel, ConfigDict, Field
from typing import Optional, List, Dict, Any

from app.checks.base_check import CheckResult


class ReportBase(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(..., alias="pass")
    status: str = Field(..., description="passed, failed or error")
    witnesses: List[Dict[str, Any]] = Field(default_factory=list, description="First witnesses, capped")
    witness_count: int = 0
    message: str = ""
    params: Dict[str, Any] = Field(default_factory=dict)


class VerificationReport(ReportBase):
    """Outcome of an exact check"""
    relation: str
    N: Optional[int] = Field(None, description="Fock cutoff of the enumerated states")
    states_checked: int = 0

    @classmethod
    def from_result(cls, result: CheckResult) -> "VerificationReport":
        return cls(
            relation=result.name,
            N=result.params.get("cutoff"),
            states_checked=result.states_checked,
            passed=result.passed,
            status=result.status.value,
            witnesses=result.witnesses,
            witness_count=result.witness_count,
            message=result.message,
            params=result.params,
        )


class IdentityReport(ReportBase):
    """Outcome of a numeric identity check"""
    identity: str
    samples: int = 0
    max_residual: Optional[float] = None
    tolerance: Optional[float] = None

    @classmethod
    def from_result(cls, result: CheckResult) -> "IdentityReport":
        return cls(
            identity=result.name,
            samples=result.samples,
            max_residual=result.max_residual,
            tolerance=result.tolerance,
            passed=result.passed,
            status=result.status.value,
            witnesses=result.witnesses,
            witness_count=result.witness_count,
            message=result.message,
            params=result.params,
        )
