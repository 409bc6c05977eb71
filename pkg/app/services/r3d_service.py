"""
3D R in the Fock representation.

R|i,j,k> = sum R^{a,b,c}_{i,j,k} |a,b,c>, with

    R^{a,b,c}_{i,j,k} = δ_{a+b,i+j} δ_{b+c,j+k}
        sum_{λ+μ=b} (-1)^λ q^{i(c-j)+(k+1)λ+μ(μ-k)}
        (q^2)_{c+μ}/(q^2)_c binom(i,μ)_{q^2} binom(j,λ)_{q^2}

All coefficients are exact Scalars; nothing here is truncated.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from app.algebra import LaurentPoly, Scalar, q_binomial, q_pochhammer_quotient
from app.fock import (
    FockIndex,
    FockVector,
    SiteError,
    SparseOperator,
    a_minus,
    a_plus,
    h_op,
    k_op,
)

logger = logging.getLogger(__name__)

# q^2 in u-exponents
_Q2 = 4

TETRAHEDRON_LHS = ((1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6))
TETRAHEDRON_RHS = ((4, 5, 6), (2, 3, 6), (1, 3, 5), (1, 2, 4))


class SiteClashError(ValueError):
    """Raised when R is asked to act on repeated sites"""


@lru_cache(maxsize=None)
def r_coefficient(a: int, b: int, c: int, i: int, j: int, k: int) -> Scalar:
    """Matrix element R^{a,b,c}_{i,j,k}"""
    if min(a, b, c, i, j, k) < 0:
        return Scalar(0)
    if a + b != i + j or b + c != j + k:
        return Scalar(0)
    total = LaurentPoly()
    for mu in range(max(0, b - j), min(b, i) + 1):
        lam = b - mu
        exponent = i * (c - j) + (k + 1) * lam + mu * (mu - k)
        term = (
            q_pochhammer_quotient(_Q2, c + mu, c)
            * q_binomial(i, mu, _Q2)
            * q_binomial(j, lam, _Q2)
        ).shift(2 * exponent)
        total = total - term if lam % 2 else total + term
    return Scalar(total)


@lru_cache(maxsize=None)
def r_image(i: int, j: int, k: int) -> Tuple[Tuple[Tuple[int, int, int], Scalar], ...]:
    """Nonzero terms of R|i,j,k> as ((a,b,c), coefficient), b ascending"""
    terms = []
    for b in range(0, min(i + j, j + k) + 1):
        a, c = i + j - b, j + k - b
        coeff = r_coefficient(a, b, c, i, j, k)
        if not coeff.is_zero():
            terms.append(((a, b, c), coeff))
    return tuple(terms)


def _check_sites(sites: Sequence[int], arity: int) -> Tuple[int, int, int]:
    if len(sites) != 3:
        raise ValueError(f"R acts on three sites, got {list(sites)}")
    if len(set(sites)) != 3:
        raise SiteClashError(f"R sites must be distinct, got {list(sites)}")
    for site in sites:
        if not 1 <= site <= arity:
            raise SiteError(f"site {site} outside 1..{arity}")
    return tuple(s - 1 for s in sites)


def _apply_r_basis(slots: Tuple[int, int, int], index: FockIndex) -> FockVector:
    s1, s2, s3 = slots
    result = {}
    for (a, b, c), coeff in r_image(index[s1], index[s2], index[s3]):
        full = list(index)
        full[s1], full[s2], full[s3] = a, b, c
        result[tuple(full)] = coeff
    return FockVector._trusted(result)


def apply_r(sites: Sequence[int], vector: FockVector) -> FockVector:
    """Apply R on the 1-based ``sites`` triple of every term of ``vector``"""
    if vector.is_zero():
        return vector
    arity = len(next(iter(vector.terms)))
    slots = _check_sites(sites, arity)

    def pairs():
        for index, coeff in vector.terms.items():
            for target, value in _apply_r_basis(slots, index).terms.items():
                yield target, coeff * value

    return FockVector.accumulate(pairs())


def r_operator(sites: Sequence[int] = (1, 2, 3), arity: int = 3) -> SparseOperator:
    """R_{sites} as a cached SparseOperator on ``arity`` sites"""
    slots = _check_sites(sites, arity)
    label = "".join(str(s) for s in sites)
    return SparseOperator(
        lambda index: _apply_r_basis(slots, index), arity, name=f"R{label}", cache=True
    )


def apply_chain(chain: Sequence[Sequence[int]], vector: FockVector) -> FockVector:
    """Apply R_{chain[0]} R_{chain[1]} ... to ``vector`` (rightmost first)"""
    for sites in reversed(chain):
        vector = apply_r(sites, vector)
    return vector


def tetrahedron_sides(index: Sequence[int]) -> Tuple[FockVector, FockVector]:
    """Both sides of R124 R135 R236 R456 = R456 R236 R135 R124 on |index>"""
    if len(index) != 6:
        raise ValueError(f"tetrahedron states have six sites, got {list(index)}")
    state = FockVector.basis(index)
    return apply_chain(TETRAHEDRON_LHS, state), apply_chain(TETRAHEDRON_RHS, state)


# --- intertwining relations -----------------------------------------------

def intertwining_relations() -> Dict[str, Tuple[SparseOperator, SparseOperator]]:
    """
    The defining relations of R as (R·X, Y·R) operator pairs on three sites.

    Keys name the generator on the left of R.
    """
    n = 3
    R = r_operator((1, 2, 3), n)
    ap = {s: a_plus(s, n) for s in (1, 2, 3)}
    am = {s: a_minus(s, n) for s in (1, 2, 3)}
    k = {s: k_op(s, n) for s in (1, 2, 3)}

    def pair(inner: SparseOperator, outer: SparseOperator) -> Tuple[SparseOperator, SparseOperator]:
        return R @ inner, outer @ R

    return {
        "k2a+1": pair(k[2] @ ap[1], k[3] @ ap[1] + k[1] @ ap[2] @ am[3]),
        "k2a-1": pair(k[2] @ am[1], k[3] @ am[1] + k[1] @ am[2] @ ap[3]),
        "a+2": pair(ap[2], ap[1] @ ap[3] - k[1] @ k[3] @ ap[2]),
        "a-2": pair(am[2], am[1] @ am[3] - k[1] @ k[3] @ am[2]),
        "k2a+3": pair(k[2] @ ap[3], k[1] @ ap[3] + k[3] @ am[1] @ ap[2]),
        "k2a-3": pair(k[2] @ am[3], k[1] @ am[3] + k[3] @ ap[1] @ am[2]),
        "k1k2": pair(k[1] @ k[2], k[1] @ k[2]),
        "k2k3": pair(k[2] @ k[3], k[2] @ k[3]),
    }


def conservation_pairs() -> Dict[str, Tuple[SparseOperator, SparseOperator]]:
    """[R, h1+h2] = [R, h2+h3] = 0 as (R·H, H·R) pairs"""
    n = 3
    R = r_operator((1, 2, 3), n)
    h = {s: h_op(s, n) for s in (1, 2, 3)}
    h12 = h[1] + h[2]
    h23 = h[2] + h[3]
    return {"h1+h2": (R @ h12, h12 @ R), "h2+h3": (R @ h23, h23 @ R)}


def coefficient_rows(cutoff: int) -> List[Tuple[int, int, int, int, int, int, Scalar]]:
    """All nonzero R^{a,b,c}_{i,j,k} with i, j, k <= cutoff, inputs lexicographic"""
    rows = []
    for i in range(cutoff + 1):
        for j in range(cutoff + 1):
            for k in range(cutoff + 1):
                for (a, b, c), coeff in r_image(i, j, k):
                    rows.append((a, b, c, i, j, k, coeff))
    logger.info(f"Collected {len(rows)} nonzero R coefficients up to {cutoff}")
    return rows
