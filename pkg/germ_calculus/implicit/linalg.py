"""Exact linear algebra over Q(i): rank and invertible row selection"""

from __future__ import annotations

from typing import List, Optional, Sequence

from germ_calculus.models.gaussian import GaussianRational

Matrix = Sequence[Sequence[GaussianRational]]


class _Echelon:
    """Incrementally reduced row set; rows are kept with a pivot column each"""

    def __init__(self, width: int) -> None:
        self.width = width
        self.rows: List[List[GaussianRational]] = []
        self.pivots: List[int] = []

    def reduce(self, row: Sequence[GaussianRational]) -> List[GaussianRational]:
        r = [GaussianRational.of(v) for v in row]
        for basis, p in zip(self.rows, self.pivots):
            if r[p]:
                factor = r[p]
                r = [a - factor * b for a, b in zip(r, basis)]
        return r

    def insert(self, row: Sequence[GaussianRational]) -> bool:
        """Add the row if it is independent of the current ones"""
        r = self.reduce(row)
        pivot = next((j for j, v in enumerate(r) if v), None)
        if pivot is None:
            return False
        inv = r[pivot].inverse()
        r = [v * inv for v in r]
        # Keep the basis fully reduced in the new pivot column.
        for i, basis in enumerate(self.rows):
            if basis[pivot]:
                factor = basis[pivot]
                self.rows[i] = [a - factor * b for a, b in zip(basis, r)]
        self.rows.append(r)
        self.pivots.append(pivot)
        return True


def rank(matrix: Matrix) -> int:
    if not matrix:
        return 0
    echelon = _Echelon(len(matrix[0]))
    return sum(1 for row in matrix if echelon.insert(row))


def is_invertible(matrix: Matrix) -> bool:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    return rank(matrix) == n


def select_rows(matrix: Matrix, count: int) -> Optional[List[int]]:
    """First `count` independent rows scanning from index 0, or None"""
    if count == 0:
        return []
    if not matrix:
        return None
    echelon = _Echelon(len(matrix[0]))
    chosen: List[int] = []
    for i, row in enumerate(matrix):
        if echelon.insert(row):
            chosen.append(i)
            if len(chosen) == count:
                return chosen
    return None
