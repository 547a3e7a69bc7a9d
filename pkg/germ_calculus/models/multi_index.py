"""Multi-index bookkeeping: α, |α|, α! and enumeration of index sets"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Tuple

MultiIndex = Tuple[int, ...]


def degree(alpha: MultiIndex) -> int:
    """Total degree |α|"""
    return sum(alpha)


def multi_factorial(alpha: MultiIndex) -> int:
    """α! as an exact integer"""
    result = 1
    for a in alpha:
        result *= factorial(a)
    return result


def unit(dim: int, axis: int) -> MultiIndex:
    """Unit multi-index e_axis (0-based axis)"""
    return tuple(1 if i == axis else 0 for i in range(dim))


def zero_index(dim: int) -> MultiIndex:
    return (0,) * dim


def add_indices(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def indices_of_degree(dim: int, total: int) -> Iterator[MultiIndex]:
    """All multi-indices of length dim with |α| == total, in lexicographic order"""
    if dim == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in indices_of_degree(dim - 1, total - first):
            yield (first,) + rest


@lru_cache(maxsize=256)
def indices_up_to(dim: int, order: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices with |α| ≤ order, graded by degree"""
    out = []
    for d in range(order + 1):
        out.extend(indices_of_degree(dim, d))
    return tuple(out)


def count_up_to(dim: int, order: int) -> int:
    """Number of coefficient slots of a jet: C(order + dim, dim)"""
    return comb(order + dim, dim)
