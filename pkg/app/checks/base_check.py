from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence
import logging

from app.algebra import Scalar
from app.fock import FockVector

logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    """Outcome of a verification"""
    PASSED = "passed"
    FAILED = "failed"
    ERROR = "error"


@dataclass
class UnitOutcome:
    """What one work unit found"""
    checked: int
    witnesses: List[Dict[str, Any]] = None
    max_residual: Optional[float] = None

    def __post_init__(self):
        if self.witnesses is None:
            self.witnesses = []

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "UnitOutcome":
        return cls(**data)


@dataclass
class CheckResult:
    """Result of a whole check, merged over its work units"""
    name: str
    status: CheckStatus
    states_checked: int = 0
    witnesses: List[Dict[str, Any]] = None
    witness_count: int = 0
    max_residual: Optional[float] = None
    tolerance: Optional[float] = None
    samples: int = 0
    message: str = ""
    params: Dict[str, Any] = None

    def __post_init__(self):
        if self.witnesses is None:
            self.witnesses = []
        if self.params is None:
            self.params = {}

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASSED


class BaseCheck(ABC):
    """Base class for all checks"""

    # exact checks compare Scalars, numeric checks compare residuals
    kind = "exact"

    def __init__(self, name: str, params: Dict[str, Any]):
        self.name = name
        self.params = dict(params)
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    @abstractmethod
    def validate_params(self) -> None:
        """
        Check preconditions on ``self.params``
        Raises ValueError on invalid parameters
        """
        pass

    @abstractmethod
    def work_units(self) -> List[Any]:
        """
        Split the check into JSON-serialisable work units
        Units are processed independently and merged in order
        """
        pass

    @abstractmethod
    def check_unit(self, unit: Any) -> UnitOutcome:
        """Verify one work unit"""
        pass

    @property
    def tolerance(self) -> Optional[float]:
        return None

    def int_param(self, key: str, default: int, choices: Optional[Sequence[int]] = None, minimum: int = 0) -> int:
        """Read an integer parameter, raising ValueError when it is out of range"""
        value = self.params.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"{key} must be an integer, got {value!r}")
        if choices is not None and value not in choices:
            raise ValueError(f"{key} must be one of {list(choices)}, got {value}")
        if value < minimum:
            raise ValueError(f"{key} must be >= {minimum}, got {value}")
        return value

    def log_check_start(self, units: int):
        self.logger.info(f"Starting check {self.name} with {units} work units, params={self.params}")

    def log_check_complete(self, result: CheckResult):
        self.logger.info(
            f"Check {self.name} finished. "
            f"Status: {result.status.value}, "
            f"checked: {result.states_checked}, "
            f"witnesses: {result.witness_count}"
        )
        for witness in result.witnesses:
            self.logger.error(f"Witness for {self.name}: {witness}")

    def create_error_result(self, message: str) -> CheckResult:
        """Create an error result"""
        return CheckResult(
            name=self.name,
            status=CheckStatus.ERROR,
            message=message,
            tolerance=self.tolerance,
            params=self.params,
        )

    def create_result(self, outcomes: Sequence[UnitOutcome], witness_cap: int) -> CheckResult:
        """Merge unit outcomes; witnesses are sorted and capped, the total count is kept"""
        witnesses = [w for outcome in outcomes for w in outcome.witnesses]
        witnesses.sort(key=_witness_key)
        residuals = [o.max_residual for o in outcomes if o.max_residual is not None]
        checked = sum(o.checked for o in outcomes)
        status = CheckStatus.FAILED if witnesses else CheckStatus.PASSED
        message = (
            f"{len(witnesses)} witnesses in {checked} checked"
            if witnesses
            else f"Verified {checked} {'samples' if self.kind == 'numeric' else 'states'}"
        )
        return CheckResult(
            name=self.name,
            status=status,
            states_checked=checked,
            witnesses=witnesses[:witness_cap],
            witness_count=len(witnesses),
            max_residual=max(residuals) if residuals else None,
            tolerance=self.tolerance,
            samples=checked if self.kind == "numeric" else 0,
            message=message,
            params=self.params,
        )


def _witness_key(witness: Dict[str, Any]) -> str:
    return repr(sorted(witness.items()))


def vector_witness(relation: str, state: Sequence[int], lhs: FockVector, rhs: FockVector) -> Optional[Dict[str, Any]]:
    """Witness for lhs != rhs on ``state``, or None when they agree"""
    diff = lhs.difference_witness(rhs)
    if diff is None:
        return None
    index, left, right = diff
    return {
        "relation": relation,
        "state": list(state),
        "component": list(index),
        "lhs": str(left),
        "rhs": str(right),
    }


def scalar_witness(relation: str, state: Any, lhs: Scalar, rhs: Scalar) -> Optional[Dict[str, Any]]:
    if lhs == rhs:
        return None
    return {"relation": relation, "state": state, "lhs": str(lhs), "rhs": str(rhs)}
