from typing import Any, Dict, List, Tuple

from app.checks.base_check import BaseCheck, UnitOutcome, vector_witness
from app.checks.check_registry import register_check
from app.config import settings
from app.fock import FockVector, SparseOperator
from app.services.r3d_service import (
    apply_r,
    conservation_pairs,
    intertwining_relations,
    tetrahedron_sides,
)
from app.utils import box_states, chunked


class BoxStateCheck(BaseCheck):
    """Check over every state of ``arity`` sites with occupations <= cutoff"""

    arity = 3
    default_cutoff = 2

    @property
    def cutoff(self) -> int:
        return self.int_param("cutoff", self.default_cutoff)

    def validate_params(self) -> None:
        self.int_param("cutoff", self.default_cutoff)

    def work_units(self) -> List[Any]:
        states = [list(state) for state in box_states(self.arity, self.cutoff)]
        return chunked(states, settings.CHUNK_SIZE)

    def check_unit(self, unit: Any) -> UnitOutcome:
        witnesses = []
        for state in unit:
            witnesses.extend(self.check_state(tuple(state)))
        return UnitOutcome(checked=len(unit), witnesses=witnesses)

    def check_state(self, state: Tuple[int, ...]) -> List[Dict[str, Any]]:
        raise NotImplementedError


class OperatorPairCheck(BoxStateCheck):
    """lhs|state> = rhs|state> for a fixed dictionary of operator pairs"""

    def operator_pairs(self) -> Dict[str, Tuple[SparseOperator, SparseOperator]]:
        raise NotImplementedError

    def check_unit(self, unit: Any) -> UnitOutcome:
        self._pairs = self.operator_pairs()
        return super().check_unit(unit)

    def check_state(self, state: Tuple[int, ...]) -> List[Dict[str, Any]]:
        found = []
        for name, (lhs, rhs) in self._pairs.items():
            witness = vector_witness(name, state, lhs.image(state), rhs.image(state))
            if witness:
                found.append(witness)
        return found


@register_check("involution")
class InvolutionCheck(BoxStateCheck):
    """R^2 = 1"""

    def check_state(self, state: Tuple[int, ...]) -> List[Dict[str, Any]]:
        basis = FockVector.basis(state)
        twice = apply_r((1, 2, 3), apply_r((1, 2, 3), basis))
        witness = vector_witness("R^2=1", state, twice, basis)
        return [witness] if witness else []


@register_check("intertwining")
class IntertwiningCheck(OperatorPairCheck):
    """R X = Y R for the oscillator intertwining relations"""

    def operator_pairs(self):
        return intertwining_relations()


@register_check("conservation")
class ConservationCheck(OperatorPairCheck):
    """[R, h1+h2] = [R, h2+h3] = 0"""

    def operator_pairs(self):
        return conservation_pairs()


@register_check("tetrahedron")
class TetrahedronCheck(BoxStateCheck):
    """R124 R135 R236 R456 = R456 R236 R135 R124 on six sites"""

    arity = 6
    default_cutoff = 1

    def check_state(self, state: Tuple[int, ...]) -> List[Dict[str, Any]]:
        lhs, rhs = tetrahedron_sides(state)
        witness = vector_witness("tetrahedron", state, lhs, rhs)
        return [witness] if witness else []
