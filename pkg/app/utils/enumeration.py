from itertools import product
from typing import Iterator, List, Sequence, Tuple, TypeVar

T = TypeVar("T")


def box_states(arity: int, cutoff: int) -> Iterator[Tuple[int, ...]]:
    """All occupation tuples with every entry <= cutoff, lexicographic"""
    return product(range(cutoff + 1), repeat=arity)


def graded_states(arity: int, total: int) -> Iterator[Tuple[int, ...]]:
    """All occupation tuples whose entries sum to at most ``total``, lexicographic"""
    for state in product(range(total + 1), repeat=arity):
        if sum(state) <= total:
            yield state


def chunked(items: Sequence[T], size: int) -> List[List[T]]:
    """Split into consecutive chunks of at most ``size`` items"""
    size = max(1, size)
    return [list(items[i:i + size]) for i in range(0, len(items), size)]
