from functools import lru_cache
from typing import Any, List, Tuple

from app.checks.base_check import BaseCheck, UnitOutcome, vector_witness
from app.checks.check_registry import register_check
from app.config import settings
from app.services.uq_service import Relation, build_algebra, build_cyclic_algebra, uq_relations
from app.utils import chunked, graded_states


@lru_cache(maxsize=16)
def _relations(s: int, t: int, n: int, cyclic: bool) -> Tuple[Relation, ...]:
    spec = build_cyclic_algebra(n) if cyclic else build_algebra(s, t, n)
    return tuple(uq_relations(spec))


@register_check("uq")
class QuantumAlgebraCheck(BaseCheck):
    """
    Every defining relation of U_q(g^{s,t}) holds for the π_z images on
    states of total occupation <= cutoff.

    With ``cyclic`` set, the cyclic A^{(1)}_{n-1} images are used instead
    and s, t are ignored.
    """

    def _shape(self) -> Tuple[int, int, int, bool]:
        cyclic = bool(self.params.get("cyclic", False))
        n = self.int_param("n", 2 if cyclic else 1, minimum=2 if cyclic else 1)
        s = self.int_param("s", 1, choices=(1, 2))
        t = self.int_param("t", 1, choices=(1, 2))
        return s, t, n, cyclic

    def validate_params(self) -> None:
        self._shape()
        self.int_param("cutoff", 3)

    def work_units(self) -> List[Any]:
        _, _, n, _ = self._shape()
        states = [list(state) for state in graded_states(n, self.int_param("cutoff", 3))]
        return chunked(states, settings.CHUNK_SIZE)

    def check_unit(self, unit: Any) -> UnitOutcome:
        relations = _relations(*self._shape())
        witnesses = []
        for state in unit:
            state = tuple(state)
            for relation in relations:
                witness = vector_witness(
                    relation.relation_id,
                    state,
                    relation.lhs.image(state),
                    relation.rhs.image(state),
                )
                if witness:
                    witnesses.append(witness)
        return UnitOutcome(checked=len(unit), witnesses=witnesses)
