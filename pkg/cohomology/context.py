"""First Cech cohomology of the degree-q tangent sheaf for the cover {U0, U1}

A cocycle is a field on the overlap written on U0 with Laurent coefficients.
The coboundary of a 0-cochain (s0, s1) is s1 - s0 expressed on U0, so the
coboundaries are spanned by U0-holomorphic fields and by U1-holomorphic fields
transported to U0. Monomials below the window are coboundaries and monomials
with nonnegative exponent are U0-holomorphic, so truncating to the window
loses nothing.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.matrix import RationalMatrix
from algebra.sparse import SparseEchelon
from geometry.operations import transport_monomial
from geometry.superfield import (
    EVEN,
    Chart,
    GradingVector,
    OddMonomial,
    SuperField,
    Target,
    linear_combination,
)
from tools.error_handling import (
    ChartMismatchError,
    ContextMismatchError,
    DegreeError,
    DimensionMismatchError,
)

logger = logging.getLogger(__name__)

WINDOW_MARGIN = 2

MonomialKey = Tuple[int, OddMonomial, Target]

PAIRS = ((1, 2), (1, 3), (2, 3))


def degree_shapes(m: int, q: int) -> List[Tuple[OddMonomial, Target]]:
    """(odd monomial, target) combinations of grading degree q"""
    shapes = []
    if 0 <= q <= m:
        shapes.extend((OddMonomial(c), EVEN) for c in combinations(range(1, m + 1), q))
    if 0 <= q + 1 <= m:
        shapes.extend(
            (OddMonomial(c), Target(l))
            for c in combinations(range(1, m + 1), q + 1)
            for l in range(1, m + 1)
        )
    return sorted(shapes)


def _column_order(key: MonomialKey) -> Tuple:
    exponent, odd, target = key
    # d/dx columns first so a relation pivots on its d/dx monomial
    return (not target.is_even, exponent, odd, target)


def pair_dimension(pair_weight: int, complement_k: int) -> int:
    """Closed-form contribution of one pair (i, j) to dim H^1 for m = 3, q = 2"""
    if pair_weight > 3:
        return 2 * pair_weight - 4
    if pair_weight == 3:
        return 2
    if pair_weight == 2 and complement_k == 0:
        return 1
    return 0


def closed_form_dimension(k: GradingVector, q: int = 2) -> Optional[int]:
    """Known closed forms: m = 3 and m = 2 at q = 2, m = 1 from q = 2 on"""
    if k.m == 1 and q >= 2:
        return 0
    if q != 2:
        return None
    if k.m == 2:
        return max(k[1] + k[2] - 3, 0)
    if k.m == 3:
        return sum(pair_dimension(k[i] + k[j], k[6 - i - j]) for i, j in PAIRS)
    return None


def pair_representatives(k: GradingVector) -> List[SuperField]:
    """Published basis candidates for m = 3, q = 2

    Ordered by pair (1,2) < (1,3) < (2,3); within a pair the d/dx type
    x^-n xi_i xi_j d/dx (n = 1..K-3) precedes the d/dxi type
    x^-n xi_i xi_j xi_l d/dxi_l with the product taken in that order.
    """
    fields = []
    for i, j in PAIRS:
        l = 6 - i - j
        weight = k[i] + k[j]
        sign, triple = OddMonomial.ordered([i, j, l])
        even_range: Sequence[int] = ()
        odd_range: Sequence[int] = ()
        if weight > 3:
            even_range, odd_range = range(1, weight - 2), range(1, weight)
        elif weight == 3:
            odd_range = (1, 2)
        elif weight == 2 and k[l] == 0:
            odd_range = (1,)
        for n in even_range:
            fields.append(SuperField.monomial(3, -n, OddMonomial.of(i, j), EVEN))
        for n in odd_range:
            fields.append(SuperField.monomial(3, -n, triple, Target(l), sign))
    return fields


@dataclass(frozen=True, eq=False)
class H1Context:
    """Basis of H^1(T_q) for grading k together with the reduction machinery"""

    k: GradingVector
    q: int
    window: Tuple[int, int]
    monomials: Tuple[MonomialKey, ...]
    basis: Tuple[SuperField, ...]
    _index: Dict[MonomialKey, int] = field(repr=False)
    _echelon: SparseEchelon = field(repr=False)
    _survivors: Tuple[int, ...] = field(repr=False)
    _basis_change: Optional[RationalMatrix] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def m(self) -> int:
        return self.k.m

    @property
    def coboundary_rank(self) -> int:
        return self._echelon.rank

    @property
    def survivor_keys(self) -> List[MonomialKey]:
        return [self.monomials[i] for i in self._survivors]

    def same_grading(self, other: "H1Context") -> bool:
        return self.k == other.k and self.q == other.q

    def _vector(self, v: SuperField) -> Dict[int, Fraction]:
        lo, hi = self.window
        vector: Dict[int, Fraction] = {}
        for exponent, odd, target, coefficient in v.monomials():
            if lo <= exponent <= hi:
                column = self._index[(exponent, odd, target)]
                vector[column] = vector.get(column, 0) + coefficient
        return vector

    def windowed_coordinates(self, v: SuperField) -> Tuple[Fraction, ...]:
        """Dense coefficients of v along ``monomials``"""
        dense = [Fraction(0)] * len(self.monomials)
        for column, value in self._vector(v).items():
            dense[column] = value
        return tuple(dense)

    def _survivor_coordinates(self, vector: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
        residual = self._echelon.reduce(vector)
        position = self._survivor_position
        coords = [Fraction(0)] * len(self._survivors)
        for column, value in residual.items():
            coords[position[column]] = value
        return tuple(coords)

    def _coordinates(self, v: SuperField) -> Tuple[Fraction, ...]:
        survivor_coords = self._survivor_coordinates(self._vector(v))
        if self._basis_change is None:
            return survivor_coords
        return self._basis_change.apply(survivor_coords)

    @cached_property
    def _survivor_position(self) -> Dict[int, int]:
        return {column: i for i, column in enumerate(self._survivors)}

    @cached_property
    def reducer(self) -> RationalMatrix:
        """Matrix from windowed monomial coordinates to basis coordinates"""
        columns = []
        for column in range(len(self.monomials)):
            coords = self._survivor_coordinates({column: Fraction(1)})
            if self._basis_change is not None:
                coords = self._basis_change.apply(coords)
            columns.append(coords)
        return RationalMatrix.from_columns(columns, height=self.dimension)

    def _check_field(self, v: SuperField) -> None:
        if v.chart != Chart.U0:
            raise ChartMismatchError("cocycles are represented on U0")
        if v.m != self.m:
            raise DimensionMismatchError(f"field has m={v.m}, context has m={self.m}")
        if not v.is_zero and v.degree != self.q:
            raise DegreeError(
                f"cocycle must be homogeneous of degree {self.q}, has degrees {v.degrees()}"
            )

    def reduce(self, v: SuperField) -> "CohClass":
        self._check_field(v)
        bounds = v.exponent_bounds()
        lo, hi = self.window
        if bounds is None or (lo <= bounds[0] and bounds[1] <= hi):
            return CohClass(self, self._coordinates(v), v)

        wide = _build(self.k, self.q, (min(lo, bounds[0]), max(hi, bounds[1])))
        logger.debug("widened window %s -> %s for reduction", self.window, wide.window)
        change = RationalMatrix.from_columns(
            [wide._coordinates(b) for b in self.basis], height=wide.dimension
        )
        coords = change.solve(wide._coordinates(v)) if self.basis else ()
        return CohClass(self, tuple(coords), v)

    def is_coboundary(self, v: SuperField) -> bool:
        return self.reduce(v).is_zero

    def class_of(self, coords: Sequence[Fraction]) -> "CohClass":
        if len(coords) != self.dimension:
            raise DimensionMismatchError(
                f"{len(coords)} coordinates for a {self.dimension}-dimensional space"
            )
        coords = tuple(Fraction(c) for c in coords)
        return CohClass(self, coords, linear_combination(self.basis, coords, self.m))

    def zero_class(self) -> "CohClass":
        return self.class_of([0] * self.dimension)


@dataclass(frozen=True, eq=False)
class CohClass:
    context: H1Context
    coords: Tuple[Fraction, ...]
    representative: SuperField

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.context.same_grading(other.context) and self.coords == other.coords

    __hash__ = None  # type: ignore[assignment]

    def require_same_context(self, other: "CohClass") -> None:
        if not self.context.same_grading(other.context):
            raise ContextMismatchError(
                f"classes for k={self.context.k}, q={self.context.q} and "
                f"k={other.context.k}, q={other.context.q}"
            )

    def __add__(self, other: "CohClass") -> "CohClass":
        self.require_same_context(other)
        return self.context.class_of([a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, factor) -> "CohClass":
        return self.context.class_of([factor * c for c in self.coords])


def build_context(k: GradingVector, q: int, margin: int = WINDOW_MARGIN) -> H1Context:
    spread = k.abs_sum + 2
    return _build(k, q, (-spread - margin, spread + margin))


def _build(k: GradingVector, q: int, window: Tuple[int, int]) -> H1Context:
    lo, hi = window
    shapes = degree_shapes(k.m, q)
    keys = sorted(
        ((n, odd, target) for odd, target in shapes for n in range(lo, hi + 1)),
        key=_column_order,
    )
    index = {key: column for column, key in enumerate(keys)}

    echelon = SparseEchelon()
    generator_count = 0
    for odd, target in shapes:
        for n in range(0, hi + 1):
            echelon.insert({index[(n, odd, target)]: Fraction(1)})
            generator_count += 1
        p = 0
        while True:
            images = transport_monomial(p, odd, target, k)
            if max(n for n, _, _, _ in images) < lo:
                break
            echelon.insert(
                {index[(n, o, t)]: c for n, o, t, c in images if lo <= n <= hi}
            )
            generator_count += 1
            p += 1

    pivots = set(echelon.pivots)
    survivors = tuple(column for column in range(len(keys)) if column not in pivots)
    context = H1Context(
        k=k,
        q=q,
        window=window,
        monomials=tuple(keys),
        basis=tuple(
            SuperField.monomial(k.m, keys[c][0], keys[c][1], keys[c][2]) for c in survivors
        ),
        _index=index,
        _echelon=echelon,
        _survivors=survivors,
        _basis_change=None,
    )
    if (k.m, q) == (3, 2):
        context = _with_published_basis(context)
    logger.debug(
        "H1 context k=%s q=%d window=%s generators=%d rank=%d dim=%d",
        k,
        q,
        window,
        generator_count,
        echelon.rank,
        context.dimension,
    )
    return context


def _with_published_basis(context: H1Context) -> H1Context:
    candidates = pair_representatives(context.k)
    if len(candidates) != context.dimension:
        logger.warning(
            "published representatives (%d) do not match dim %d for k=%s",
            len(candidates),
            context.dimension,
            context.k,
        )
        return context
    if not candidates:
        return context
    change = RationalMatrix.from_columns(
        [context._survivor_coordinates(context._vector(c)) for c in candidates],
        height=context.dimension,
    )
    if change.rank() != context.dimension:
        logger.warning("published representatives are dependent for k=%s", context.k)
        return context
    return H1Context(
        k=context.k,
        q=context.q,
        window=context.window,
        monomials=context.monomials,
        basis=tuple(candidates),
        _index=context._index,
        _echelon=context._echelon,
        _survivors=context._survivors,
        _basis_change=change.inverse(),
    )


def reduce(ctx: H1Context, v: SuperField) -> CohClass:
    return ctx.reduce(v)


def is_coboundary(ctx: H1Context, v: SuperField) -> bool:
    return ctx.is_coboundary(v)
