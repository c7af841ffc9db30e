"""Dense exact matrices over the rationals

Gauss-Jordan elimination records every elementary row operation so that a
reduction can be replayed backwards onto the reduced form.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from algebra.rational import format_rational, pivot_size
from tools.error_handling import DimensionMismatchError, PreconditionError

Row = Tuple[Fraction, ...]


@dataclass(frozen=True)
class ElementaryOperation:
    """swap rows, scale a row, or add a multiple of ``source`` to ``target``"""

    kind: str
    target: int
    source: int = -1
    factor: Fraction = Fraction(1)

    def apply(self, rows: List[List[Fraction]]) -> None:
        if self.kind == "swap":
            rows[self.target], rows[self.source] = rows[self.source], rows[self.target]
        elif self.kind == "scale":
            rows[self.target] = [value * self.factor for value in rows[self.target]]
        elif self.kind == "add":
            source = rows[self.source]
            rows[self.target] = [
                value + self.factor * source[j] for j, value in enumerate(rows[self.target])
            ]
        else:
            raise ValueError(f"unknown row operation {self.kind!r}")

    def inverse(self) -> "ElementaryOperation":
        if self.kind == "scale":
            return ElementaryOperation("scale", self.target, factor=1 / self.factor)
        if self.kind == "add":
            return ElementaryOperation("add", self.target, self.source, -self.factor)
        return self


@dataclass(frozen=True)
class RowReduction:
    rref: "RationalMatrix"
    pivots: Tuple[int, ...]
    operations: Tuple[ElementaryOperation, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reconstruct(self) -> "RationalMatrix":
        """Undo the recorded operations starting from the reduced form"""
        rows = [list(row) for row in self.rref.entries]
        for operation in reversed(self.operations):
            operation.inverse().apply(rows)
        return RationalMatrix.from_rows(rows)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Tuple[Row, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise DimensionMismatchError(
                f"entry grid does not match declared shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Union[int, Fraction]]], cols: Optional[int] = None
    ) -> "RationalMatrix":
        grid = tuple(tuple(Fraction(value) for value in row) for row in rows)
        width = cols if cols is not None else (len(grid[0]) if grid else 0)
        return cls(len(grid), width, grid)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[Union[int, Fraction]]], height: Optional[int] = None
    ) -> "RationalMatrix":
        if not columns:
            return cls.zeros(height or 0, 0)
        lengths = {len(column) for column in columns}
        if len(lengths) != 1 or (height is not None and lengths != {height}):
            raise DimensionMismatchError(f"columns of unequal length {sorted(lengths)}")
        return cls.from_rows(list(zip(*columns)), cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(size)] for i in range(size)], cols=size
        )

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Row:
        return self.entries[i]

    def column(self, j: int) -> Row:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Row]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(self.columns(), cols=self.rows)

    def is_zero(self) -> bool:
        return all(value == 0 for row in self.entries for value in row)

    def is_diagonal(self) -> bool:
        return all(
            value == 0
            for i, row in enumerate(self.entries)
            for j, value in enumerate(row)
            if i != j
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix.from_rows(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, factor: Union[int, Fraction]) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[factor * value for value in row] for row in self.entries], cols=self.cols
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        result = []
        for row in self.entries:
            out = [Fraction(0)] * other.cols
            for k, value in enumerate(row):
                if value == 0:
                    continue
                for j, entry in enumerate(other.entries[k]):
                    if entry != 0:
                        out[j] += value * entry
            result.append(out)
        return RationalMatrix.from_rows(result, cols=other.cols)

    def apply(self, vector: Sequence[Fraction]) -> Row:
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                f"vector of length {len(vector)} for a matrix with {self.cols} columns"
            )
        return tuple(
            sum((a * b for a, b in zip(row, vector) if a != 0 and b != 0), Fraction(0))
            for row in self.entries
        )

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        return RationalMatrix.from_rows(
            [r + s for r, s in zip(self.entries, other.entries)],
            cols=self.cols + other.cols,
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def row_reduce(self) -> RowReduction:
        """Reduced row echelon form with the smallest available pivot per column"""
        rows = [list(row) for row in self.entries]
        operations: List[ElementaryOperation] = []
        pivots: List[int] = []
        r = 0
        for col in range(self.cols):
            if r == self.rows:
                break
            candidates = [i for i in range(r, self.rows) if rows[i][col] != 0]
            if not candidates:
                continue
            best = min(candidates, key=lambda i: pivot_size(rows[i][col]))
            if best != r:
                operation = ElementaryOperation("swap", r, best)
                operation.apply(rows)
                operations.append(operation)
            if rows[r][col] != 1:
                operation = ElementaryOperation("scale", r, factor=1 / rows[r][col])
                operation.apply(rows)
                operations.append(operation)
            support = [j for j in range(col, self.cols) if rows[r][j] != 0]
            pivot_row = rows[r]
            for i in range(self.rows):
                if i == r or rows[i][col] == 0:
                    continue
                factor = rows[i][col]
                target = rows[i]
                for j in support:
                    target[j] -= factor * pivot_row[j]
                operations.append(ElementaryOperation("add", i, r, -factor))
            pivots.append(col)
            r += 1
        return RowReduction(
            RationalMatrix.from_rows(rows, cols=self.cols), tuple(pivots), tuple(operations)
        )

    def rank(self) -> int:
        return self.row_reduce().rank

    def kernel(self) -> List[Row]:
        """Basis of the null space, one vector per free column"""
        reduction = self.row_reduce()
        pivot_rows = {col: i for i, col in enumerate(reduction.pivots)}
        basis = []
        for free in range(self.cols):
            if free in pivot_rows:
                continue
            vector = [Fraction(0)] * self.cols
            vector[free] = Fraction(1)
            for col, i in pivot_rows.items():
                vector[col] = -reduction.rref[i, free]
            basis.append(tuple(vector))
        return basis

    def solve(self, rhs: Sequence[Union[int, Fraction]]) -> Optional[Row]:
        """One solution of self * x = rhs with free variables set to zero"""
        if len(rhs) != self.rows:
            raise DimensionMismatchError(
                f"right-hand side of length {len(rhs)} for {self.rows} rows"
            )
        augmented = self.hstack(RationalMatrix.from_columns([rhs], height=self.rows))
        reduction = augmented.row_reduce()
        if self.cols in reduction.pivots:
            return None
        solution = [Fraction(0)] * self.cols
        for i, col in enumerate(reduction.pivots):
            solution[col] = reduction.rref[i, self.cols]
        return tuple(solution)

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise DimensionMismatchError(f"{self.rows}x{self.cols} matrix has no inverse")
        reduction = self.hstack(RationalMatrix.identity(self.rows)).row_reduce()
        if reduction.pivots[: self.rows] != tuple(range(self.rows)):
            raise PreconditionError("matrix is not invertible")
        return RationalMatrix.from_rows(
            [row[self.cols :] for row in reduction.rref.entries], cols=self.cols
        )

    def render(self) -> str:
        return "\n".join(
            "[" + ", ".join(format_rational(value) for value in row) + "]"
            for row in self.entries
        )

    def _require_same_shape(self, other: "RationalMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"shape {self.rows}x{self.cols} differs from {other.rows}x{other.cols}"
            )


def quotient_coordinates(
    vecs: Sequence[Sequence[Fraction]],
    subspace_span: Sequence[Sequence[Fraction]],
    target: Sequence[Fraction],
) -> Optional[List[Fraction]]:
    """Coordinates of ``target`` along ``vecs`` modulo ``span(subspace_span)``

    The subspace columns come first so that any part of ``target`` they can
    absorb is absorbed before ``vecs`` are used.
    """
    height = len(target)
    columns = list(subspace_span) + list(vecs)
    if any(len(column) != height for column in columns):
        raise DimensionMismatchError("all columns must have the length of the target")
    if not columns:
        return [] if all(value == 0 for value in target) else None
    solution = RationalMatrix.from_columns(columns, height=height).solve(target)
    if solution is None:
        return None
    return list(solution[len(subspace_span) :])
