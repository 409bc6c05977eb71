"""
Tasks Package

Work dispatch for verification sweeps.
"""

from .sweep_tasks import dispatch_units, run_check_unit

__all__ = ["dispatch_units", "run_check_unit"]
