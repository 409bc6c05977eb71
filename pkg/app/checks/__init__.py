"""
Verification checks

Every check splits its work into independent units and is looked up by
name in the CheckRegistry.
"""

from .base_check import BaseCheck, CheckResult, CheckStatus, UnitOutcome
from .check_registry import CheckRegistry, register_check, run_check, run_unit
from . import exact, modular

__all__ = [
    "BaseCheck",
    "CheckRegistry",
    "CheckResult",
    "CheckStatus",
    "UnitOutcome",
    "register_check",
    "run_check",
    "run_unit",
]
