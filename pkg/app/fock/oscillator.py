"""
Fock representation of the q-oscillator algebra.

    a+ |m> = |m+1>
    a- |m> = (1 - q^{2m}) |m-1>
    k^{±1} |m> = q^{±(m+1/2)} |m>
    h |m> = m |m>

with the bilinear pairing <m|m'> = (q^2; q^2)_m δ_{m,m'}.
"""

from enum import Enum
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from app.algebra import LaurentPoly, ONE, Scalar, q_pochhammer, u_power

from .operator import SparseOperator
from .vector import FockIndex, FockVector

# (q^2; q^2) in u-exponents
PAIRING_BASE = 4


class SiteError(IndexError):
    """Raised when a site label lies outside the tensor arity"""


class Generator(str, Enum):
    """q-oscillator generators acting on one site"""

    A_PLUS = "a+"
    A_MINUS = "a-"
    K = "k"
    K_INV = "k^-1"
    H = "h"

    @classmethod
    def parse(cls, value) -> "Generator":
        if isinstance(value, Generator):
            return value
        aliases = {"k-1": cls.K_INV, "kinv": cls.K_INV, "k^{-1}": cls.K_INV}
        if value in aliases:
            return aliases[value]
        return cls(value)


def check_site(site: int, arity: int) -> int:
    """Validate a 1-based site label and return its 0-based slot"""
    if not 1 <= site <= arity:
        raise SiteError(f"site {site} outside 1..{arity}")
    return site - 1


@lru_cache(maxsize=4096)
def a_minus_factor(m: int) -> Scalar:
    """1 - q^{2m}"""
    return Scalar(LaurentPoly({0: 1, 4 * m: -1}))


def k_eigenvalue(m: int, power: int = 1) -> Scalar:
    """q^{power·(m+1/2)}"""
    return u_power(power * (2 * m + 1))


def _single_site_image(gen: Generator, m: int) -> Tuple[int, Scalar]:
    if gen is Generator.A_PLUS:
        return m + 1, ONE
    if gen is Generator.A_MINUS:
        return (m - 1, a_minus_factor(m)) if m > 0 else (0, None)
    if gen is Generator.K:
        return m, k_eigenvalue(m)
    if gen is Generator.K_INV:
        return m, k_eigenvalue(m, -1)
    return m, Scalar(m)


def apply_generator(gen, site: int, vector: FockVector, arity: Optional[int] = None) -> FockVector:
    """
    Apply a single-site generator at the 1-based ``site`` of every term.
    The site is checked against ``arity`` (or the length of the terms) even
    when the vector is zero.
    """
    gen = Generator.parse(gen)
    if arity is None:
        arity = max((len(index) for index in vector.terms), default=max(site, 0))
    slot = check_site(site, arity)

    def pairs():
        for index, coeff in vector.terms.items():
            if len(index) != arity:
                raise SiteError(f"term {index} has {len(index)} sites, expected {arity}")
            target, factor = _single_site_image(gen, index[slot])
            if factor is None or factor.is_zero():
                continue
            full = index[:slot] + (target,) + index[slot + 1:]
            yield full, coeff * factor

    return FockVector.accumulate(pairs())


def generator(gen, site: int, arity: int, power: int = 1) -> SparseOperator:
    """Generator at ``site`` as a SparseOperator on ``arity`` sites, raised to ``power``"""
    gen = Generator.parse(gen)
    check_site(site, arity)
    op = SparseOperator(
        lambda index: apply_generator(gen, site, FockVector.basis(index), arity),
        arity,
        max_raise=1 if gen is Generator.A_PLUS else 0,
        name=f"{gen.value}_{site}",
    )
    if power == 1:
        return op
    if gen is Generator.K or gen is Generator.K_INV:
        sign = 1 if gen is Generator.K else -1
        return k_power(site, arity, sign * power)
    return op ** power


def k_power(site: int, arity: int, power: int) -> SparseOperator:
    """k_site^power, diagonal"""
    slot = check_site(site, arity)
    return SparseOperator.diagonal(
        arity, lambda index: k_eigenvalue(index[slot], power), name=f"k_{site}^{power}"
    )


def a_plus(site: int, arity: int) -> SparseOperator:
    return generator(Generator.A_PLUS, site, arity)


def a_minus(site: int, arity: int) -> SparseOperator:
    return generator(Generator.A_MINUS, site, arity)


def k_op(site: int, arity: int) -> SparseOperator:
    return k_power(site, arity, 1)


def k_inv(site: int, arity: int) -> SparseOperator:
    return k_power(site, arity, -1)


def h_op(site: int, arity: int) -> SparseOperator:
    return generator(Generator.H, site, arity)


def h_eigenvalue(index: Sequence[int], sites: Sequence[int]) -> int:
    return sum(index[s - 1] for s in sites)


# --- bra side -------------------------------------------------------------

def pairing_weight(index: Sequence[int]) -> Scalar:
    """<m|m> = prod (q^2; q^2)_{m_i}"""
    weight = LaurentPoly.constant(1)
    for m in index:
        weight = weight * q_pochhammer(PAIRING_BASE, m)
    return Scalar(weight)


def pairing(bra_index: Sequence[int], vector: FockVector) -> Scalar:
    """Bilinear pairing <bra_index| vector>"""
    bra_index = tuple(bra_index)
    for index in vector.terms:
        if len(index) != len(bra_index):
            raise ValueError(f"arity mismatch between <{bra_index}| and |{index}>")
        break
    coeff = vector.coefficient(bra_index)
    if coeff.is_zero():
        return coeff
    return coeff * pairing_weight(bra_index)


def right_apply(gen, site: int, bra_index: Sequence[int]) -> FockVector:
    """
    <m| g as a combination of bra labels.

    <m| a+ = (1 - q^{2m}) <m-1|, <m| a- = <m+1|, k and h act diagonally.
    """
    gen = Generator.parse(gen)
    bra_index: FockIndex = tuple(bra_index)
    slot = check_site(site, len(bra_index))
    m = bra_index[slot]
    if gen is Generator.A_PLUS:
        if m == 0:
            return FockVector()
        target, factor = m - 1, a_minus_factor(m)
    elif gen is Generator.A_MINUS:
        target, factor = m + 1, ONE
    else:
        target, factor = _single_site_image(gen, m)
    return FockVector.basis(bra_index[:slot] + (target,) + bra_index[slot + 1:], factor)


def pair_vectors(bra: FockVector, vector: FockVector) -> Scalar:
    """Pairing of a bra combination (as returned by right_apply) with a ket"""
    total = Scalar(0)
    for index, coeff in bra.items():
        total = total + coeff * pairing(index, vector)
    return total


def qosc_relations() -> Dict[str, Tuple[SparseOperator, SparseOperator]]:
    """Defining relations of the q-oscillator algebra on one site, as (lhs, rhs)"""
    one = SparseOperator.identity(1)
    ap, am = a_plus(1, 1), a_minus(1, 1)
    k, kinv = k_op(1, 1), k_inv(1, 1)
    k_sq = k_power(1, 1, 2)
    return {
        "k k^-1 = 1": (k @ kinv, one),
        "k^-1 k = 1": (kinv @ k, one),
        "k a+ = q a+ k": (k @ ap, (ap @ k) * u_power(2)),
        "k a- = q^-1 a- k": (k @ am, (am @ k) * u_power(-2)),
        "a+ a- = 1 - q^-1 k^2": (ap @ am, one - k_sq * u_power(-2)),
        "a- a+ = 1 - q k^2": (am @ ap, one - k_sq * u_power(2)),
    }
