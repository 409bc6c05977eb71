from functools import lru_cache
from typing import Any, Dict, List, Tuple

from app.checks.base_check import BaseCheck, UnitOutcome, scalar_witness, vector_witness
from app.checks.check_registry import register_check
from app.config import settings
from app.fock import BivariateSeries, ZSeries
from app.services.mpo_service import (
    boundary_bra_sides,
    boundary_fixed_sides,
    build_S_hat,
    chi_bra_sides,
    chi_ket_sides,
    symmetry_sides,
    ybe_sides,
)
from app.services.uq_service import build_algebra
from app.utils import box_states, chunked


@register_check("boundary")
class BoundaryCheck(BaseCheck):
    """
    Boundary vectors χ^(s):

    - R|χχχ> = |χχχ> and <χχχ|R = <χχχ|, componentwise on the box of the cutoff
    - the single-site ket and bra conditions that characterise χ^(s)
    """

    def validate_params(self) -> None:
        self.int_param("s", 1, choices=(1, 2))
        self.int_param("cutoff", settings.DEFAULT_FOCK_CUTOFF)

    def work_units(self) -> List[Any]:
        cutoff = self.int_param("cutoff", settings.DEFAULT_FOCK_CUTOFF)
        states = [list(state) for state in box_states(3, cutoff)]
        units: List[Dict[str, Any]] = [
            {"kind": "fixed", "states": chunk} for chunk in chunked(states, settings.CHUNK_SIZE)
        ]
        units.append({"kind": "chi", "indices": list(range(cutoff + 1))})
        return units

    def check_unit(self, unit: Any) -> UnitOutcome:
        s = self.int_param("s", 1, choices=(1, 2))
        witnesses = []
        if unit["kind"] == "fixed":
            for state in unit["states"]:
                for relation, sides in (
                    ("R|χχχ>", boundary_fixed_sides(s, state)),
                    ("<χχχ|R", boundary_bra_sides(s, state)),
                ):
                    witness = scalar_witness(relation, state, *sides)
                    if witness:
                        witnesses.append(witness)
            return UnitOutcome(checked=len(unit["states"]), witnesses=witnesses)

        for index in unit["indices"]:
            conditions = {**chi_ket_sides(s, index), **chi_bra_sides(s, index)}
            for relation, sides in conditions.items():
                witness = scalar_witness(relation, [index], *sides)
                if witness:
                    witnesses.append(witness)
        return UnitOutcome(checked=len(unit["indices"]), witnesses=witnesses)


class SeriesCheck(BaseCheck):
    """Shared (s, t, n, order, cutoff) parameters of the S(z) checks"""

    default_order = 2
    default_cutoff = 1

    def shape(self) -> Tuple[int, int, int, int, int]:
        return (
            self.int_param("s", 1, choices=(1, 2)),
            self.int_param("t", 1, choices=(1, 2)),
            self.int_param("n", 1, minimum=1),
            self.int_param("order", self.default_order),
            self.int_param("cutoff", self.default_cutoff),
        )

    def validate_params(self) -> None:
        self.shape()


@lru_cache(maxsize=8)
def _ybe(s: int, t: int, n: int, order: int, zigzag: bool) -> Tuple[BivariateSeries, BivariateSeries]:
    return ybe_sides(s, t, n, order, zigzag)


@register_check("ybe")
class YangBaxterCheck(SeriesCheck):
    """
    S12(x) S13(xy) S23(y) = S23(y) S13(xy) S12(x) coefficient by coefficient
    for every (x, y)-degree of total <= order, on tripled states <= cutoff.
    """

    def work_units(self) -> List[Any]:
        order = self.shape()[3]
        return [[x, total - x] for total in range(order + 1) for x in range(total + 1)]

    def check_unit(self, unit: Any) -> UnitOutcome:
        s, t, n, order, cutoff = self.shape()
        lhs, rhs = _ybe(s, t, n, order, bool(self.params.get("zigzag", False)))
        key = tuple(unit)
        left, right = lhs.coefficient(key), rhs.coefficient(key)
        witnesses = []
        checked = 0
        for state in box_states(3 * n, cutoff):
            witness = vector_witness(f"ybe x^{key[0]} y^{key[1]}", state, left.image(state), right.image(state))
            if witness:
                witnesses.append(witness)
            checked += 1
        return UnitOutcome(checked=checked, witnesses=witnesses)


@lru_cache(maxsize=8)
def _s_hat(s: int, t: int, n: int, order: int) -> ZSeries:
    return build_S_hat(s, t, n, range(order + 1))


@lru_cache(maxsize=64)
def _symmetry_sides(s: int, t: int, n: int, order: int, gen: str) -> Tuple[ZSeries, ZSeries]:
    return symmetry_sides(build_algebra(s, t, n), gen, _s_hat(s, t, n, order))


@register_check("symmetry")
class SymmetryCheck(SeriesCheck):
    """Δ'(g) Ŝ(z) = Ŝ(z) Δ(g) for every Chevalley generator, at every known z-degree"""

    def work_units(self) -> List[Any]:
        s, t, n, _, _ = self.shape()
        return [str(gen) for gen in build_algebra(s, t, n).generators()]

    def check_unit(self, unit: Any) -> UnitOutcome:
        s, t, n, order, cutoff = self.shape()
        lhs, rhs = _symmetry_sides(s, t, n, order, unit)
        degrees = sorted(
            d for d in set(lhs.degrees()) | set(rhs.degrees()) if lhs.is_known(d) and rhs.is_known(d)
        )
        witnesses = []
        checked = 0
        for d in degrees:
            left, right = lhs.coefficient(d), rhs.coefficient(d)
            for state in box_states(2 * n, cutoff):
                witness = vector_witness(f"{unit} z^{d}", state, left.image(state), right.image(state))
                if witness:
                    witnesses.append(witness)
                checked += 1
        return UnitOutcome(checked=checked, witnesses=witnesses)
