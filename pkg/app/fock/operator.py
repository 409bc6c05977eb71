from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from app.algebra import Scalar

from .vector import FockIndex, FockVector

Action = Callable[[FockIndex], FockVector]


class SparseOperator:
    """
    Linear map on Fock basis states with a finite image for every state.

    ``z_degree`` is the formal degree in the spectral variable carried by the
    operator, ``max_raise`` bounds how far any single occupation can grow.
    """

    __slots__ = ("_action", "arity", "z_degree", "max_raise", "name")

    def __init__(
        self,
        action: Action,
        arity: int,
        z_degree: int = 0,
        max_raise: int = 0,
        name: str = "",
        cache: bool = False,
    ) -> None:
        self._action = lru_cache(maxsize=None)(action) if cache else action
        self.arity = arity
        self.z_degree = z_degree
        self.max_raise = max_raise
        self.name = name

    @classmethod
    def identity(cls, arity: int) -> SparseOperator:
        return cls(FockVector.basis, arity, name="1")

    @classmethod
    def zero(cls, arity: int, z_degree: int = 0) -> SparseOperator:
        return cls(lambda index: FockVector(), arity, z_degree=z_degree, name="0")

    @classmethod
    def diagonal(cls, arity: int, eigenvalue: Callable[[FockIndex], Scalar], name: str = "") -> SparseOperator:
        return cls(lambda index: FockVector.basis(index, eigenvalue(index)), arity, name=name)

    def cached(self) -> SparseOperator:
        return SparseOperator(
            self._action, self.arity, self.z_degree, self.max_raise, self.name, cache=True
        )

    def with_z_degree(self, z_degree: int) -> SparseOperator:
        return SparseOperator(self._action, self.arity, z_degree, self.max_raise, self.name)

    # --- application ------------------------------------------------------

    def image(self, index: Sequence[int]) -> FockVector:
        index = tuple(index)
        if len(index) != self.arity:
            raise ValueError(f"{self.name or 'operator'} acts on {self.arity} sites, got {index}")
        return self._action(index)

    def apply(self, vector: FockVector) -> FockVector:
        def pairs():
            for index, coeff in vector.terms.items():
                for target, value in self.image(index).terms.items():
                    yield target, coeff * value

        return FockVector.accumulate(pairs())

    def __matmul__(self, other):
        if isinstance(other, FockVector):
            return self.apply(other)
        if isinstance(other, SparseOperator):
            return self.compose(other)
        return NotImplemented

    # --- algebra ----------------------------------------------------------

    def compose(self, other: SparseOperator) -> SparseOperator:
        """self ∘ other: apply ``other`` first"""
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch {self.arity} vs {other.arity}")
        return SparseOperator(
            lambda index: self.apply(other.image(index)),
            self.arity,
            z_degree=self.z_degree + other.z_degree,
            max_raise=self.max_raise + other.max_raise,
            name=f"{self.name}{other.name}",
        )

    def __mul__(self, other):
        if isinstance(other, SparseOperator):
            return self.compose(other)
        factor = Scalar.coerce(other)
        return SparseOperator(
            lambda index: self.image(index).scale(factor),
            self.arity,
            self.z_degree,
            self.max_raise,
            self.name,
        )

    def __rmul__(self, other):
        if isinstance(other, SparseOperator):
            return NotImplemented
        return self * other

    def __add__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch {self.arity} vs {other.arity}")
        if other.z_degree != self.z_degree:
            raise ValueError(
                f"cannot add z-degree {self.z_degree} and {other.z_degree}; use ZSeries"
            )
        return SparseOperator(
            lambda index: self.image(index) + other.image(index),
            self.arity,
            self.z_degree,
            max(self.max_raise, other.max_raise),
            f"({self.name}+{other.name})",
        )

    def __neg__(self) -> SparseOperator:
        return self * -1

    def __sub__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return self + (-other)

    def __pow__(self, exponent: int) -> SparseOperator:
        if exponent < 0:
            raise ValueError("SparseOperator powers must be >= 0")
        result = SparseOperator.identity(self.arity).with_z_degree(0)
        for _ in range(exponent):
            result = self.compose(result)
        return result

    def embed(self, positions: Sequence[int], arity: int) -> SparseOperator:
        """Act on the 1-based ``positions`` of an ``arity``-site space, identity elsewhere"""
        slots = [p - 1 for p in positions]
        if len(slots) != self.arity:
            raise ValueError(f"need {self.arity} positions, got {list(positions)}")
        if len(set(slots)) != len(slots) or any(not 0 <= p < arity for p in slots):
            raise ValueError(f"invalid positions {list(positions)} for {arity} sites")

        def action(index: FockIndex) -> FockVector:
            inner = self.image(tuple(index[p] for p in slots))
            result = {}
            for sub, coeff in inner.terms.items():
                full = list(index)
                for p, m in zip(slots, sub):
                    full[p] = m
                result[tuple(full)] = coeff
            return FockVector._trusted(result)

        return SparseOperator(action, arity, self.z_degree, self.max_raise, self.name)

    def tensor(self, other: SparseOperator, z_degree: Optional[int] = None) -> SparseOperator:
        """self ⊗ other on the concatenated sites"""
        split = self.arity

        def action(index: FockIndex) -> FockVector:
            left = self.image(index[:split])
            right = other.image(index[split:])
            result = {}
            for i, a in left.terms.items():
                for j, b in right.terms.items():
                    result[i + j] = a * b
            return FockVector._trusted(result)

        return SparseOperator(
            action,
            self.arity + other.arity,
            self.z_degree + other.z_degree if z_degree is None else z_degree,
            max(self.max_raise, other.max_raise),
            f"{self.name}⊗{other.name}",
        )

    def __repr__(self) -> str:
        return f"SparseOperator({self.name or '?'}, arity={self.arity}, z={self.z_degree})"


def _min_known(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class ZSeries:
    """
    Power series in z with SparseOperator coefficients.

    Coefficients are exact for every degree up to ``known_max``; degrees
    above it are unknown. ``known_max`` None means the series is exact.
    Missing degrees inside the known range are zero.
    """

    def __init__(
        self,
        coefficients: Mapping[int, SparseOperator],
        arity: int,
        known_max: Optional[int] = None,
    ) -> None:
        self.arity = arity
        self.known_max = known_max
        self._coefficients: Dict[int, SparseOperator] = {
            d: op for d, op in coefficients.items() if known_max is None or d <= known_max
        }

    @classmethod
    def from_operators(cls, operators: Iterable[SparseOperator], arity: int) -> ZSeries:
        """Exact series from operators of possibly different z-degree"""
        grouped: Dict[int, SparseOperator] = {}
        for op in operators:
            current = grouped.get(op.z_degree)
            grouped[op.z_degree] = op if current is None else current + op
        return cls(grouped, arity)

    def degrees(self) -> Iterator[int]:
        return iter(sorted(self._coefficients))

    def coefficient(self, degree: int) -> SparseOperator:
        if not self.is_known(degree):
            raise ValueError(f"degree {degree} is beyond the known order {self.known_max}")
        op = self._coefficients.get(degree)
        return op if op is not None else SparseOperator.zero(self.arity, degree)

    def is_known(self, degree: int) -> bool:
        return self.known_max is None or degree <= self.known_max

    def known_degrees(self, low: int, high: int) -> Iterator[int]:
        top = high if self.known_max is None else min(high, self.known_max)
        return iter(range(low, top + 1))

    def __mul__(self, other):
        if isinstance(other, SparseOperator):
            other = ZSeries.from_operators([other], other.arity)
        if not isinstance(other, ZSeries):
            factor = Scalar.coerce(other)
            return ZSeries(
                {d: op * factor for d, op in self._coefficients.items()}, self.arity, self.known_max
            )
        own_low = min(self._coefficients, default=0)
        other_low = min(other._coefficients, default=0)
        known_max = _min_known(
            None if self.known_max is None else self.known_max + other_low,
            None if other.known_max is None else other.known_max + own_low,
        )
        grouped: Dict[int, SparseOperator] = {}
        for d1, a in self._coefficients.items():
            for d2, b in other._coefficients.items():
                d = d1 + d2
                if known_max is not None and d > known_max:
                    continue
                term = a.compose(b).with_z_degree(d)
                grouped[d] = term if d not in grouped else grouped[d] + term
        return ZSeries(grouped, self.arity, known_max)

    def __rmul__(self, other):
        if isinstance(other, SparseOperator):
            return ZSeries.from_operators([other], other.arity) * self
        return self * other

    def __add__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        grouped = dict(self._coefficients)
        for d, op in other._coefficients.items():
            grouped[d] = op if d not in grouped else grouped[d] + op
        return ZSeries(grouped, self.arity, _min_known(self.known_max, other.known_max))

    def __neg__(self) -> ZSeries:
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def map(self, transform: Callable[[int, SparseOperator], SparseOperator]) -> ZSeries:
        return ZSeries(
            {d: transform(d, op) for d, op in self._coefficients.items()}, self.arity, self.known_max
        )

    def apply(self, vector: FockVector) -> Dict[int, FockVector]:
        """Image of ``vector`` degree by degree (only nonzero degrees returned)"""
        images = {}
        for d in sorted(self._coefficients):
            image = self._coefficients[d].apply(vector)
            if not image.is_zero():
                images[d] = image
        return images


class BivariateSeries:
    """
    Power series in (x, y) with SparseOperator coefficients, exact for every
    total degree up to ``known_total``.
    """

    def __init__(
        self, coefficients: Mapping[Tuple[int, int], SparseOperator], arity: int, known_total: int
    ) -> None:
        self.arity = arity
        self.known_total = known_total
        self._coefficients = {
            key: op for key, op in coefficients.items() if sum(key) <= known_total
        }

    @classmethod
    def from_zseries(cls, series: ZSeries, x_power: int, y_power: int) -> BivariateSeries:
        """Substitute z -> x^x_power y^y_power into a series with no negative degrees"""
        step = x_power + y_power
        if series.known_max is None:
            known_total = max((d * step for d in series.degrees()), default=0)
        else:
            known_total = (series.known_max + 1) * step - 1
        coefficients = {
            (d * x_power, d * y_power): series.coefficient(d).with_z_degree(0)
            for d in series.degrees()
        }
        return cls(coefficients, series.arity, known_total)

    def __mul__(self, other: BivariateSeries) -> BivariateSeries:
        known_total = min(self.known_total, other.known_total)
        grouped: Dict[Tuple[int, int], SparseOperator] = {}
        for (p1, r1), a in self._coefficients.items():
            for (p2, r2), b in other._coefficients.items():
                key = (p1 + p2, r1 + r2)
                if sum(key) > known_total:
                    continue
                term = a.compose(b).with_z_degree(0)
                grouped[key] = term if key not in grouped else grouped[key] + term
        return BivariateSeries(grouped, self.arity, known_total)

    def keys(self):
        return sorted(self._coefficients)

    def coefficient(self, key: Tuple[int, int]) -> SparseOperator:
        if sum(key) > self.known_total:
            raise ValueError(f"order {key} is beyond the known total {self.known_total}")
        op = self._coefficients.get(key)
        return op if op is not None else SparseOperator.zero(self.arity)


