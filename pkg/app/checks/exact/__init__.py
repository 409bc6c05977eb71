"""Exact checks over Q(i)(q^{1/2}); importing registers them"""

from . import algebra_checks, mpo_checks, oscillator_checks, r3d_checks

__all__ = ["algebra_checks", "mpo_checks", "oscillator_checks", "r3d_checks"]
