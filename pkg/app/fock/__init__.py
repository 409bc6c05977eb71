"""
Fock space package

Basis vectors, sparse operators and the q-oscillator generators on F^{⊗n}.
"""

from .operator import BivariateSeries, SparseOperator, ZSeries
from .oscillator import (
    Generator,
    SiteError,
    a_minus,
    a_plus,
    apply_generator,
    generator,
    h_op,
    k_eigenvalue,
    k_inv,
    k_op,
    k_power,
    pair_vectors,
    pairing,
    pairing_weight,
    qosc_relations,
    right_apply,
)
from .vector import FockIndex, FockVector

__all__ = [
    # Vectors
    "FockIndex",
    "FockVector",
    # Operators
    "BivariateSeries",
    "SparseOperator",
    "ZSeries",
    # q-oscillator
    "Generator",
    "SiteError",
    "a_minus",
    "a_plus",
    "apply_generator",
    "generator",
    "h_op",
    "k_eigenvalue",
    "k_inv",
    "k_op",
    "k_power",
    "pair_vectors",
    "pairing",
    "pairing_weight",
    "qosc_relations",
    "right_apply",
]
