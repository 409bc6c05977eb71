"""
Boundary vectors and the matrix-product operator

    S(z) = <χ^(s)| z^{h_3} R_{α1 β1 3} ... R_{αn βn 3} |χ^(t)>

as an exact z-series on F^{⊗n} ⊗ F^{⊗n}, plus the zig-zag transform
Ŝ = (K ⊗ 1) S (1 ⊗ K^{-1}) and the operator sides of the Yang-Baxter and
U_q-symmetry identities.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from app.algebra import (
    ONE,
    Scalar,
    imaginary_power,
    q_pochhammer,
    u_power,
)
from app.fock import (
    BivariateSeries,
    FockIndex,
    FockVector,
    SparseOperator,
    ZSeries,
    a_minus,
    a_plus,
    k_op,
    pairing_weight,
)
from app.utils.enumeration import box_states

from .r3d_service import apply_r, r_coefficient, r_image
from .uq_service import AlgebraSpec, coproduct

logger = logging.getLogger(__name__)

_Q2 = 4


@dataclass(frozen=True)
class BoundaryVector:
    """χ^(s): coefficient 1/(q^{s²}; q^{s²})_m at index s·m, zero elsewhere"""

    s: int

    def __post_init__(self):
        if self.s not in (1, 2):
            raise ValueError(f"boundary label must be 1 or 2, got {self.s}")

    @property
    def base_exponent(self) -> int:
        return 2 * self.s * self.s

    def coefficient(self, index: int) -> Scalar:
        return _boundary_coefficient(self.s, index)

    def product_coefficient(self, indices: Sequence[int]) -> Scalar:
        result = ONE
        for index in indices:
            result = result * self.coefficient(index)
            if result.is_zero():
                break
        return result

    def ket(self, cutoff: int) -> FockVector:
        """Single-site truncation sum_{index <= cutoff}"""
        return FockVector({(m,): self.coefficient(m) for m in range(cutoff + 1)})

    def pair(self, vector: FockVector) -> Scalar:
        """<χ^(s)| vector> on a single site"""
        total = Scalar(0)
        for (m,), coeff in vector.terms.items():
            chi = self.coefficient(m)
            if not chi.is_zero():
                total = total + chi * coeff * pairing_weight((m,))
        return total


@lru_cache(maxsize=None)
def _boundary_coefficient(s: int, index: int) -> Scalar:
    if index < 0 or index % s:
        return Scalar(0)
    return Scalar(1, q_pochhammer(2 * s * s, index // s))


# --- boundary identities ----------------------------------------------------

def boundary_fixed_sides(s: int, out: Sequence[int]) -> Tuple[Scalar, Scalar]:
    """Coefficient of |a,b,c> in R|χχχ> against χ_a χ_b χ_c"""
    a, b, c = out
    chi = BoundaryVector(s)
    lhs = Scalar(0)
    for j in range(0, min(a + b, b + c) + 1):
        i, k = a + b - j, b + c - j
        weight = chi.product_coefficient((i, j, k))
        if weight.is_zero():
            continue
        lhs = lhs + r_coefficient(a, b, c, i, j, k) * weight
    return lhs, chi.product_coefficient((a, b, c))


def boundary_bra_sides(s: int, ket: Sequence[int]) -> Tuple[Scalar, Scalar]:
    """<χχχ|R|i,j,k> against <χχχ|i,j,k> through the pairing"""
    chi = BoundaryVector(s)
    lhs = Scalar(0)
    for out, coeff in r_image(*ket):
        weight = chi.product_coefficient(out)
        if not weight.is_zero():
            lhs = lhs + coeff * weight * pairing_weight(out)
    rhs = chi.product_coefficient(ket) * pairing_weight(ket)
    return lhs, rhs


def _chi_ket_conditions(s: int) -> Dict[str, Tuple[SparseOperator, SparseOperator]]:
    ap, am, k = a_plus(1, 1), a_minus(1, 1), k_op(1, 1)
    one = SparseOperator.identity(1)
    if s == 1:
        return {
            "a+": (ap, one - k * u_power(-1)),
            "a-": (am, one + k * u_power(1)),
        }
    return {"a+=a-": (ap, am)}


def _chi_bra_conditions(s: int) -> Dict[str, Tuple[SparseOperator, SparseOperator]]:
    ap, am, k = a_plus(1, 1), a_minus(1, 1), k_op(1, 1)
    one = SparseOperator.identity(1)
    if s == 1:
        return {
            "<a+": (ap, one + k * u_power(1)),
            "<a-": (am, one - k * u_power(-1)),
        }
    return {"<a+=<a-": (ap, am)}


def chi_ket_sides(s: int, index: int) -> Dict[str, Tuple[Scalar, Scalar]]:
    """Coefficient of |index> on both sides of each ket boundary condition"""
    chi = BoundaryVector(s).ket(index + 1)
    return {
        name: (left.apply(chi).coefficient((index,)), right.apply(chi).coefficient((index,)))
        for name, (left, right) in _chi_ket_conditions(s).items()
    }


def chi_bra_sides(s: int, index: int) -> Dict[str, Tuple[Scalar, Scalar]]:
    """<χ| X |index> on both sides of each bra boundary condition"""
    chi = BoundaryVector(s)
    state = FockVector.basis((index,))
    return {
        name: (chi.pair(left.apply(state)), chi.pair(right.apply(state)))
        for name, (left, right) in _chi_bra_conditions(s).items()
    }


# --- S(z) -------------------------------------------------------------------

@lru_cache(maxsize=None)
def s_image(s: int, t: int, n: int, order: int, index: FockIndex) -> Tuple[Tuple[FockIndex, Scalar], ...]:
    """
    Coefficient of z^order in S|index>, index = (α_1..α_n, β_1..β_n).

    Only the bra index m = order/s contributes; the ket index m' is bounded by
    conservation of h_α - h_aux through every R.
    """
    if order < 0 or order % s:
        return ()
    alpha = index[:n]
    bra = BoundaryVector(s)
    ket = BoundaryVector(t)
    aux = 2 * n + 1
    weight = bra.coefficient(order) * Scalar(q_pochhammer(_Q2, order))
    collected: Dict[FockIndex, Scalar] = {}
    for m_ket in range(0, (order + sum(alpha)) // t + 1):
        state = FockVector.basis(tuple(index) + (t * m_ket,), ket.coefficient(t * m_ket))
        for site in range(n, 0, -1):
            state = apply_r((site, n + site, aux), state)
            if state.is_zero():
                break
        for full, coeff in state.terms.items():
            if full[-1] != order:
                continue
            key = full[:-1]
            collected[key] = coeff if key not in collected else collected[key] + coeff
    return tuple(
        sorted((key, value * weight) for key, value in collected.items() if not value.is_zero())
    )


def s_operator(s: int, t: int, n: int, order: int) -> SparseOperator:
    return SparseOperator(
        lambda index: FockVector._trusted(dict(s_image(s, t, n, order, index))),
        2 * n,
        z_degree=order,
        name=f"S{order}",
    )


def build_S(s: int, t: int, n: int, z_orders: Iterable[int]) -> ZSeries:
    """S^{s,t}(z) exact at every order up to max(z_orders)"""
    if s not in (1, 2) or t not in (1, 2) or n < 1:
        raise ValueError(f"invalid boundary data s={s}, t={t}, n={n}")
    top = max(z_orders)
    operators = {j: s_operator(s, t, n, j) for j in range(0, top + 1) if j % s == 0}
    logger.debug(f"Assembled S^{s},{t} for n={n} up to z^{top}")
    return ZSeries(operators, 2 * n, known_max=top)


def sitewise_conserved(index_in: Sequence[int], index_out: Sequence[int], n: int) -> bool:
    """α_k + β_k preserved for every k"""
    return all(
        index_in[k] + index_in[n + k] == index_out[k] + index_out[n + k] for k in range(n)
    )


# --- zig-zag ----------------------------------------------------------------

def zigzag_factor(occupation: int) -> Scalar:
    """(i q^{1/2})^occupation"""
    return u_power(occupation) * imaginary_power(occupation)


def zigzag_operator(n: int, scale: Scalar = ONE, inverse: bool = False) -> SparseOperator:
    """K|m> = scale·(i q^{1/2})^{|m|}|m> on n sites (or its inverse)"""
    scale = Scalar.coerce(scale)
    if inverse:
        return SparseOperator.diagonal(
            n, lambda index: zigzag_factor(-sum(index)) * scale.inverse(), name="K^-1"
        )
    return SparseOperator.diagonal(n, lambda index: zigzag_factor(sum(index)) * scale, name="K")


def zigzag_transform(series: ZSeries, n: int, scale: Scalar = ONE) -> ZSeries:
    """Ŝ = (K ⊗ 1) S (1 ⊗ K^{-1}) order by order"""
    one = SparseOperator.identity(n)
    left = zigzag_operator(n, scale).tensor(one)
    right = one.tensor(zigzag_operator(n, scale, inverse=True))
    return series.map(lambda degree, op: (left @ op @ right).with_z_degree(degree).cached())


def conjugate_by_k(op: SparseOperator, n: int, scale: Scalar = ONE) -> SparseOperator:
    """K^{-1} op K"""
    return zigzag_operator(n, scale, inverse=True) @ op @ zigzag_operator(n, scale)


def build_S_hat(s: int, t: int, n: int, z_orders: Iterable[int]) -> ZSeries:
    return zigzag_transform(build_S(s, t, n, z_orders), n)


# --- Yang-Baxter and symmetry sides -----------------------------------------

def _embedded(series: ZSeries, positions: List[int], arity: int) -> ZSeries:
    return ZSeries(
        {d: series.coefficient(d).embed(positions, arity) for d in series.degrees()},
        arity,
        series.known_max,
    )


def ybe_sides(
    s: int, t: int, n: int, total_order: int, zigzag: bool = False
) -> Tuple[BivariateSeries, BivariateSeries]:
    """
    S_{αβ}(x) S_{αγ}(xy) S_{βγ}(y) and S_{βγ}(y) S_{αγ}(xy) S_{αβ}(x) on the
    tripled space, exact for every total (x, y)-degree <= total_order.
    """
    series = build_S(s, t, n, range(total_order + 1))
    if zigzag:
        series = zigzag_transform(series, n)
    arity = 3 * n
    alpha = list(range(1, n + 1))
    beta = list(range(n + 1, 2 * n + 1))
    gamma = list(range(2 * n + 1, 3 * n + 1))
    s_ab = BivariateSeries.from_zseries(_embedded(series, alpha + beta, arity), 1, 0)
    s_ac = BivariateSeries.from_zseries(_embedded(series, alpha + gamma, arity), 1, 1)
    s_bc = BivariateSeries.from_zseries(_embedded(series, beta + gamma, arity), 0, 1)
    return s_ab * s_ac * s_bc, s_bc * s_ac * s_ab


def _cached(degree: int, op: SparseOperator) -> SparseOperator:
    return op.cached()


def symmetry_sides(spec: AlgebraSpec, gen, s_hat: ZSeries) -> Tuple[ZSeries, ZSeries]:
    """Δ'(g) Ŝ(z) and Ŝ(z) Δ(g) with (x, y) = (z, 1)"""
    delta = coproduct(spec, gen, "delta").specialize().map(_cached)
    delta_prime = coproduct(spec, gen, "delta_prime").specialize().map(_cached)
    return delta_prime * s_hat, s_hat * delta


def s_matrix_rows(
    s: int, t: int, n: int, z_orders: Iterable[int], fock_cutoff: int, zigzag: bool = False
) -> List[dict]:
    """Nonzero matrix elements of S (or Ŝ) on input states with occupations <= fock_cutoff"""
    orders = sorted(set(z_orders))
    series = build_S(s, t, n, orders)
    if zigzag:
        series = zigzag_transform(series, n)
    rows = []
    for order in orders:
        op = series.coefficient(order)
        for state in box_states(2 * n, fock_cutoff):
            for out, coeff in op.image(state).items():
                rows.append(
                    {
                        "z_order": order,
                        "in_state": list(state),
                        "out_state": list(out),
                        "coeff": str(coeff),
                    }
                )
    logger.info(f"Tabulated {len(rows)} S^{s},{t} elements (n={n}, zigzag={zigzag})")
    return rows


def vacuum_element(s: int, t: int, n: int, order: int) -> Scalar:
    """<0|S|0> coefficient of z^order"""
    vacuum = (0,) * (2 * n)
    return dict(s_image(s, t, n, order, vacuum)).get(vacuum, Scalar(0))


def vacuum_element_direct(order: int) -> Scalar:
    """
    <0,0|S^{1,1}|0,0> for n = 1 by direct summation over boundary indices:
    sum over m, m' of 1/(q;q)_m (q^2)_m R^{0,0,m}_{0,0,m'} 1/(q;q)_{m'} at m = order.
    """
    total = Scalar(0)
    for m_ket in range(order + 1):
        coeff = r_coefficient(0, 0, order, 0, 0, m_ket)
        if coeff.is_zero():
            continue
        total = total + coeff * Scalar(
            q_pochhammer(_Q2, order), q_pochhammer(2, order) * q_pochhammer(2, m_ket)
        )
    return total

