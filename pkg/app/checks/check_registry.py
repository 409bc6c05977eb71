from typing import Any, Dict, List, Optional, Type
import logging

from app.checks.base_check import BaseCheck, CheckResult, CheckStatus, UnitOutcome
from app.config import settings

logger = logging.getLogger(__name__)


class CheckRegistry:
    """Registry for managing verification checks"""

    _checks: Dict[str, Type[BaseCheck]] = {}
    _names: Dict[str, str] = {}

    @classmethod
    def register(cls, name: str, check_class: Type[BaseCheck]):
        """Register a check under a name"""
        cls._checks[name.lower()] = check_class
        cls._names[name.lower()] = name
        logger.info(f"Registered check {name}: {check_class.__name__}")

    @classmethod
    def get_check(cls, name: str) -> Optional[Type[BaseCheck]]:
        """Get check class for a name"""
        return cls._checks.get(name.lower())

    @classmethod
    def get_available_checks(cls) -> List[str]:
        """Get list of registered check names"""
        return sorted(cls._names.values())

    @classmethod
    def create_check(cls, name: str, params: Dict[str, Any]) -> Optional[BaseCheck]:
        """Create a check instance"""
        check_class = cls.get_check(name)
        if not check_class:
            logger.error(f"No check registered under: {name}")
            return None
        return check_class(cls._names[name.lower()], params)


# Decorator for auto-registering checks
def register_check(name: str):
    """Decorator to automatically register checks"""
    def decorator(check_class: Type[BaseCheck]):
        CheckRegistry.register(name, check_class)
        return check_class
    return decorator


def run_unit(name: str, params: Dict[str, Any], unit: Any) -> Dict[str, Any]:
    """Rebuild the check from (name, params) and verify one unit; used by workers"""
    check = CheckRegistry.create_check(name, params)
    if check is None:
        raise KeyError(f"Unknown check: {name}")
    return check.check_unit(unit).to_dict()


def run_check(name: str, params: Dict[str, Any], workers: Optional[int] = None) -> CheckResult:
    """Validate, dispatch the work units and merge their outcomes in unit order"""
    from app.tasks.sweep_tasks import dispatch_units

    check = CheckRegistry.create_check(name, params)
    if not check:
        return CheckResult(
            name=name,
            status=CheckStatus.ERROR,
            message=f"No check available for: {name}",
            params=params,
        )

    try:
        check.validate_params()
        units = check.work_units()
        check.log_check_start(len(units))
        outputs = dispatch_units(check.name, check.params, units, workers)
        result = check.create_result(
            [UnitOutcome.from_dict(output) for output in outputs], settings.WITNESS_CAP
        )
        check.log_check_complete(result)
        return result

    except Exception as e:
        logger.error(f"Error running check {name}: {str(e)}")
        return check.create_error_result(f"Check failed: {type(e).__name__}: {str(e)}")
