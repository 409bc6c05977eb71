from typing import Any, List

from app.checks.base_check import BaseCheck, UnitOutcome, scalar_witness, vector_witness
from app.checks.check_registry import register_check
from app.config import settings
from app.fock import FockVector, apply_generator, pair_vectors, qosc_relations, right_apply
from app.utils import chunked

# generators whose left and right actions must agree under the pairing
ADJOINT_GENERATORS = ("a+", "a-", "k")


@register_check("qosc")
class OscillatorCheck(BaseCheck):
    """q-oscillator relations and the pairing on single-site states |m>, m <= cutoff"""

    def validate_params(self) -> None:
        self.int_param("cutoff", settings.DEFAULT_FOCK_CUTOFF)

    def work_units(self) -> List[Any]:
        cutoff = self.int_param("cutoff", settings.DEFAULT_FOCK_CUTOFF)
        return chunked(list(range(cutoff + 1)), settings.CHUNK_SIZE)

    def check_unit(self, unit: Any) -> UnitOutcome:
        cutoff = self.int_param("cutoff", settings.DEFAULT_FOCK_CUTOFF)
        relations = qosc_relations()
        witnesses = []
        checked = 0
        for m in unit:
            state = (m,)
            for name, (lhs, rhs) in relations.items():
                witness = vector_witness(name, state, lhs.image(state), rhs.image(state))
                if witness:
                    witnesses.append(witness)
            checked += 1

            # <m| (g |m'>) = (<m| g) |m'>
            for gen in ADJOINT_GENERATORS:
                bra = right_apply(gen, 1, state)
                for m_ket in range(cutoff + 1):
                    ket = FockVector.basis((m_ket,))
                    from_ket = pair_vectors(FockVector.basis(state), apply_generator(gen, 1, ket))
                    from_bra = pair_vectors(bra, ket)
                    witness = scalar_witness(f"pairing-{gen}", [m, m_ket], from_ket, from_bra)
                    if witness:
                        witnesses.append(witness)
        return UnitOutcome(checked=checked, witnesses=witnesses)
