"""
Quantum affine algebras U_q(g^{s,t}) as operators on F^{⊗n}.

Node labels are stored as u-exponents of q_i (q_0 = q^{s^2/2} -> s^2,
q_i = q -> 2, q_n = q^{t^2/2} -> t^2). e_0 and f_0 carry the formal
z-degree ±s; every other image has degree 0.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.algebra import (
    d_constant,
    imaginary_power,
    q_integer_factorial,
    u_power,
)
from app.fock import SparseOperator, ZSeries, a_minus, a_plus, k_power

logger = logging.getLogger(__name__)

AFFINE_TYPES = {
    (1, 1): "D^{(2)}_{n+1}",
    (1, 2): "A^{(2)}_{2n}",
    (2, 1): "Ã^{(2)}_{2n}",
    (2, 2): "C^{(1)}_{n}",
}

GENERATOR_KINDS = ("e", "f", "k", "k^-1")

_GENERATOR_PATTERN = re.compile(r"^(e|f|k\^-1|k)(\d+)$")


class AlgebraError(ValueError):
    """Raised for invalid (s, t, n) or unknown generators"""


@dataclass(frozen=True)
class AlgebraSpec:
    """Cartan data of g^{s,t} (or of the cyclic A^{(1)}_{n-1})"""

    s: int
    t: int
    n: int
    cartan: Tuple[Tuple[int, ...], ...]
    q_labels: Tuple[int, ...]
    affine_type: str
    cyclic: bool = False

    @property
    def nodes(self) -> range:
        return range(len(self.q_labels))

    def generators(self) -> List["ChevalleyGenerator"]:
        """e_i, f_i, k_i for every node"""
        return [ChevalleyGenerator(kind, i) for kind in ("e", "f", "k") for i in self.nodes]

    def langlands_dual(self) -> "AlgebraSpec":
        """g^{3-s,3-t}; its Cartan matrix is the transpose"""
        if self.cyclic:
            return self
        return build_algebra(3 - self.s, 3 - self.t, self.n)

    def to_json(self) -> Dict:
        return {
            "s": self.s,
            "t": self.t,
            "n": self.n,
            "affine_type": self.affine_type,
            "cyclic": self.cyclic,
            "cartan": [list(row) for row in self.cartan],
            "q_labels": [_label_string(label) for label in self.q_labels],
        }


@dataclass(frozen=True)
class ChevalleyGenerator:
    kind: str
    node: int

    @classmethod
    def parse(cls, value) -> "ChevalleyGenerator":
        if isinstance(value, ChevalleyGenerator):
            return value
        match = _GENERATOR_PATTERN.match(str(value).replace(" ", ""))
        if not match:
            raise AlgebraError(f"Unknown generator: {value}")
        return cls(match.group(1), int(match.group(2)))

    def __str__(self) -> str:
        return f"{self.kind}{self.node}"


@dataclass
class GeneratorImage:
    generator: ChevalleyGenerator
    operator: SparseOperator

    @property
    def z_degree(self) -> int:
        return self.operator.z_degree


def _label_string(label: int) -> str:
    return "q" if label == 2 else f"q^({label}/2)"


def _check_boundary(s: int, t: int, n: int) -> None:
    if s not in (1, 2) or t not in (1, 2):
        raise AlgebraError(f"s and t must be 1 or 2, got s={s}, t={t}")
    if n < 1:
        raise AlgebraError(f"n must be >= 1, got {n}")


def build_algebra(s: int, t: int, n: int) -> AlgebraSpec:
    """
    Cartan matrix and node labels of g^{s,t}.

    For n >= 2 the entries follow a_ij = 2δ_ij - max(log q_j / log q_i, 1)δ_{|i-j|,1}.
    For n = 1 both end bonds join nodes 0 and 1 and the entries come from the
    symmetrised bond weight B = -max(e_0, 2)·max(e_1, 2)/2: a_01 = B/e_0, a_10 = B/e_1.
    """
    _check_boundary(s, t, n)
    labels = [s * s] + [2] * (n - 1) + [t * t]
    size = n + 1
    cartan = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    if n == 1:
        bond = -Fraction(max(labels[0], 2) * max(labels[1], 2), 2)
        cartan[0][1] = int(bond / labels[0])
        cartan[1][0] = int(bond / labels[1])
    else:
        for i in range(size):
            for j in (i - 1, i + 1):
                if 0 <= j < size:
                    cartan[i][j] = -int(max(Fraction(labels[j], labels[i]), 1))
    spec = AlgebraSpec(
        s=s,
        t=t,
        n=n,
        cartan=tuple(tuple(row) for row in cartan),
        q_labels=tuple(labels),
        affine_type=AFFINE_TYPES[(s, t)],
    )
    logger.debug(f"Built {spec.affine_type} with n={n}: {spec.cartan}")
    return spec


def build_cyclic_algebra(n: int) -> AlgebraSpec:
    """A^{(1)}_{n-1}: the interior formulas read with node indices mod n"""
    if n < 2:
        raise AlgebraError(f"cyclic algebra needs n >= 2, got {n}")
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in ((i - 1) % n, (i + 1) % n):
            if j != i:
                cartan[i][j] -= 1
    return AlgebraSpec(
        s=1,
        t=1,
        n=n,
        cartan=tuple(tuple(row) for row in cartan),
        q_labels=tuple([2] * n),
        affine_type=f"A^{{(1)}}_{{{n - 1}}}",
        cyclic=True,
    )


# --- π_z ------------------------------------------------------------------

def _interior_sites(spec: AlgebraSpec, node: int) -> Tuple[int, int]:
    if spec.cyclic:
        return (node - 1) % spec.n + 1, node % spec.n + 1
    return node, node + 1


def _k_image(spec: AlgebraSpec, node: int, power: int) -> SparseOperator:
    n = spec.n
    if spec.cyclic or 0 < node < n:
        left, right = _interior_sites(spec, node)
        return k_power(left, n, -power) @ k_power(right, n, power)
    if node == 0:
        # (i k_1)^s
        return k_power(1, n, spec.s * power) * imaginary_power(spec.s * power)
    # (-i k_n^{-1})^t
    return k_power(n, n, -spec.t * power) * imaginary_power(-spec.t * power)


def pi_z(spec: AlgebraSpec, gen) -> GeneratorImage:
    """Image of a Chevalley generator under π_z"""
    gen = ChevalleyGenerator.parse(gen)
    if gen.kind not in GENERATOR_KINDS or gen.node not in spec.nodes:
        raise AlgebraError(f"Unknown generator {gen} for {spec.affine_type} with n={spec.n}")
    n, s, t, node = spec.n, spec.s, spec.t, gen.node

    if gen.kind == "k":
        op = _k_image(spec, node, 1)
    elif gen.kind == "k^-1":
        op = _k_image(spec, node, -1)
    elif spec.cyclic or 0 < node < n:
        left, right = _interior_sites(spec, node)
        if gen.kind == "e":
            op = (a_minus(left, n) @ a_plus(right, n) @ k_power(left, n, -1)) * d_constant(2)
        else:
            op = a_plus(left, n) @ a_minus(right, n) @ k_power(right, n, -1)
    elif node == 0:
        if gen.kind == "e":
            op = (a_plus(1, n) ** s) * d_constant(s * s)
            op = op.with_z_degree(s)
        else:
            op = (a_minus(1, n) ** s @ k_power(1, n, -s)) * imaginary_power(s * s)
            op = op.with_z_degree(-s)
    else:
        if gen.kind == "e":
            op = (a_minus(n, n) ** t @ k_power(n, n, -t)) * (imaginary_power(t * t) * d_constant(t * t))
        else:
            op = a_plus(n, n) ** t
    op = op.cached()
    op.name = str(gen)
    return GeneratorImage(gen, op)


def generator_operator(spec: AlgebraSpec, gen) -> SparseOperator:
    return pi_z(spec, gen).operator


# --- coproduct ------------------------------------------------------------

@dataclass
class CoproductOperator:
    """
    Operator on (F^{⊗n}) ⊗ (F^{⊗n}): a sum of terms A ⊗ B where A carries
    the x-degree of leg 1 (π_x) and B the y-degree of leg 2 (π_y).
    """

    generator: ChevalleyGenerator
    variant: str
    terms: List[Tuple[int, int, SparseOperator]] = field(default_factory=list)

    def specialize(self, x_weight: int = 1, y_weight: int = 0) -> ZSeries:
        """Substitute x -> z^x_weight, y -> z^y_weight; (1, 0) is (x, y) = (z, 1)"""
        operators = [
            op.with_z_degree(x_weight * dx + y_weight * dy) for dx, dy, op in self.terms
        ]
        arity = self.terms[0][2].arity
        return ZSeries.from_operators(operators, arity)


def coproduct(spec: AlgebraSpec, gen, variant: str = "delta") -> CoproductOperator:
    """
    Δe = 1⊗e + e⊗k, Δf = f⊗1 + k^{-1}⊗f, Δk^{±1} = k^{±1}⊗k^{±1};
    Δ' = P∘Δ. Leg 1 is represented by π_x and leg 2 by π_y.
    """
    gen = ChevalleyGenerator.parse(gen)
    if variant not in ("delta", "delta_prime"):
        raise AlgebraError(f"Unknown coproduct variant: {variant}")
    one = SparseOperator.identity(spec.n)
    g = generator_operator(spec, gen)
    k = generator_operator(spec, ChevalleyGenerator("k", gen.node))
    k_inv = generator_operator(spec, ChevalleyGenerator("k^-1", gen.node))

    if gen.kind in ("k", "k^-1"):
        legs = [(g, g)]
    elif gen.kind == "e":
        legs = [(one, g), (g, k)]
    else:
        legs = [(g, one), (k_inv, g)]
    if variant == "delta_prime":
        legs = [(right, left) for left, right in legs]

    terms = [
        (left.z_degree, right.z_degree, left.tensor(right, z_degree=0)) for left, right in legs
    ]
    return CoproductOperator(gen, variant, terms)


# --- defining relations ---------------------------------------------------

@dataclass
class Relation:
    """lhs = rhs as operators of a single z-degree"""

    relation_id: str
    lhs: SparseOperator
    rhs: SparseOperator


def _zero_like(op: SparseOperator) -> SparseOperator:
    return SparseOperator.zero(op.arity, op.z_degree)


def _divided_power(op: SparseOperator, nu: int, label: int) -> SparseOperator:
    return (op ** nu) * q_integer_factorial(nu, label).inverse()


def _serre(x_i: SparseOperator, x_j: SparseOperator, a_ij: int, label: int) -> SparseOperator:
    top = 1 - a_ij
    total: Optional[SparseOperator] = None
    for nu in range(top + 1):
        term = _divided_power(x_i, top - nu, label) @ x_j @ _divided_power(x_i, nu, label)
        if nu % 2:
            term = -term
        total = term if total is None else total + term
    return total


def uq_relations(spec: AlgebraSpec) -> List[Relation]:
    """
    All defining relations of U_q with generators replaced by their π_z images.

    Mixing z-degrees inside one side raises ValueError, so building the list
    already asserts degree balance.
    """
    e = {i: generator_operator(spec, f"e{i}") for i in spec.nodes}
    f = {i: generator_operator(spec, f"f{i}") for i in spec.nodes}
    k = {i: generator_operator(spec, f"k{i}") for i in spec.nodes}
    k_inv = {i: generator_operator(spec, f"k^-1{i}") for i in spec.nodes}
    one = SparseOperator.identity(spec.n)
    relations: List[Relation] = []

    for i in spec.nodes:
        relations.append(Relation(f"k{i}k{i}^-1", k[i] @ k_inv[i], one))
        relations.append(Relation(f"k{i}^-1k{i}", k_inv[i] @ k[i], one))
        for j in spec.nodes:
            if i < j:
                relations.append(Relation(f"[k{i},k{j}]", k[i] @ k[j], k[j] @ k[i]))
            power = spec.q_labels[i] * spec.cartan[i][j]
            relations.append(
                Relation(f"k{i}e{j}k{i}^-1", k[i] @ e[j] @ k_inv[i], e[j] * u_power(power))
            )
            relations.append(
                Relation(f"k{i}f{j}k{i}^-1", k[i] @ f[j] @ k_inv[i], f[j] * u_power(-power))
            )
            commutator = e[i] @ f[j] - f[j] @ e[i]
            if i == j:
                q_i = u_power(spec.q_labels[i])
                rhs = (k[i] - k_inv[i]) * (q_i - q_i.inverse()).inverse()
            else:
                rhs = _zero_like(commutator)
            relations.append(Relation(f"[e{i},f{j}]", commutator, rhs))
            if i != j:
                a_ij, label = spec.cartan[i][j], spec.q_labels[i]
                serre_e = _serre(e[i], e[j], a_ij, label)
                serre_f = _serre(f[i], f[j], a_ij, label)
                relations.append(Relation(f"serre-e{i}e{j}", serre_e, _zero_like(serre_e)))
                relations.append(Relation(f"serre-f{i}f{j}", serre_f, _zero_like(serre_f)))
    logger.info(f"Prepared {len(relations)} relations for {spec.affine_type} (n={spec.n})")
    return relations

