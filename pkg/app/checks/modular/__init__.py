"""Numeric checks of the modular quantum-dilogarithm layer; importing registers them"""

from . import dilog_checks, kernel_checks

__all__ = ["dilog_checks", "kernel_checks"]
