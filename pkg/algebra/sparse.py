"""Incremental row echelon form over sparse rational vectors

Vectors are dicts from integer column to nonzero Fraction. Rows are kept fully
reduced: every stored row has a 1 at its pivot and zeros at all other pivots.
"""

from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Set

SparseVector = Dict[int, Fraction]


class SparseEchelon:
    def __init__(self):
        self._rows: Dict[int, SparseVector] = {}
        self._column_rows: Dict[int, Set[int]] = defaultdict(set)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def row(self, pivot: int) -> SparseVector:
        return dict(self._rows[pivot])

    def reduce(self, vector: Mapping[int, Fraction]) -> SparseVector:
        """Residual of ``vector`` after eliminating every pivot column"""
        residual = {col: value for col, value in vector.items() if value != 0}
        for pivot in [col for col in residual if col in self._rows]:
            factor = residual.pop(pivot)
            for col, value in self._rows[pivot].items():
                if col == pivot:
                    continue
                updated = residual.get(col, 0) - factor * value
                if updated:
                    residual[col] = updated
                else:
                    residual.pop(col, None)
        return residual

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vector)

    def insert(self, vector: Mapping[int, Fraction]) -> Optional[int]:
        """Add ``vector`` to the span; returns the new pivot or None if dependent"""
        residual = self.reduce(vector)
        if not residual:
            return None
        pivot = min(residual)
        scale = 1 / residual[pivot]
        row = {col: value * scale for col, value in residual.items()}

        for other in list(self._column_rows.get(pivot, ())):
            other_row = self._rows[other]
            factor = other_row[pivot]
            for col, value in row.items():
                updated = other_row.get(col, 0) - factor * value
                if updated:
                    if col not in other_row:
                        self._column_rows[col].add(other)
                    other_row[col] = updated
                elif col in other_row:
                    del other_row[col]
                    self._column_rows[col].discard(other)
        self._column_rows.pop(pivot, None)

        self._rows[pivot] = row
        for col in row:
            if col != pivot:
                self._column_rows[col].add(pivot)
        return pivot
