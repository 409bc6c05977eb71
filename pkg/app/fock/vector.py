from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from app.algebra import ONE, Scalar, ZERO

FockIndex = Tuple[int, ...]


class FockVector:
    """
    Finite linear combination of occupation multi-indices over Scalar.

    Sites are numbered 1..n externally; the index tuple is 0-based.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], Scalar] = None) -> None:
        cleaned: Dict[FockIndex, Scalar] = {}
        if terms:
            for index, coeff in terms.items():
                index = tuple(int(m) for m in index)
                if any(m < 0 for m in index):
                    raise ValueError(f"negative occupation in {index}")
                coeff = Scalar.coerce(coeff)
                if not coeff.is_zero():
                    cleaned[index] = coeff
        self._terms = cleaned

    @classmethod
    def _trusted(cls, terms: Dict[FockIndex, Scalar]) -> FockVector:
        vector = cls.__new__(cls)
        vector._terms = terms
        return vector

    @classmethod
    def basis(cls, index: Sequence[int], coeff: Scalar = ONE) -> FockVector:
        return cls({tuple(index): coeff})

    @classmethod
    def accumulate(cls, pairs: Iterable[Tuple[FockIndex, Scalar]]) -> FockVector:
        """Sum (index, coeff) pairs, dropping cancelled terms"""
        result: Dict[FockIndex, Scalar] = {}
        for index, coeff in pairs:
            if coeff.is_zero():
                continue
            current = result.get(index)
            result[index] = coeff if current is None else current + coeff
        return cls._trusted({i: c for i, c in result.items() if not c.is_zero()})

    # --- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[FockIndex, Scalar]:
        return self._terms

    def items(self) -> Iterator[Tuple[FockIndex, Scalar]]:
        """Terms in lexicographic order of the index"""
        for index in sorted(self._terms):
            yield index, self._terms[index]

    def coefficient(self, index: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(index), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> List[FockIndex]:
        return sorted(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # --- arithmetic -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FockVector):
            return self._terms == other._terms
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, FockVector):
            return NotImplemented
        return FockVector.accumulate(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> FockVector:
        return FockVector._trusted({i: -c for i, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> FockVector:
        factor = Scalar.coerce(factor)
        if factor.is_zero():
            return FockVector()
        return FockVector._trusted({i: c * factor for i, c in self._terms.items()})

    def __mul__(self, factor):
        if isinstance(factor, FockVector):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def difference_witness(self, other: FockVector):
        """First index (lexicographic) where the two vectors differ, with both coefficients"""
        for index in sorted(set(self._terms) | set(other._terms)):
            left, right = self.coefficient(index), other.coefficient(index)
            if left != right:
                return index, left, right
        return None

    # --- serialization ----------------------------------------------------

    def to_json(self) -> List[dict]:
        return [{"index": list(index), "coeff": str(coeff)} for index, coeff in self.items()]

    def __repr__(self) -> str:
        body = " + ".join(f"{coeff}|{','.join(map(str, index))}>" for index, coeff in self.items())
        return f"FockVector({body or '0'})"
