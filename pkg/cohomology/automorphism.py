"""Automorphisms of the retract's vector bundle and their action on H^1

An automorphism A acts on odd coordinates by xi_j -> sum_i a_ij(x) xi_i and
fixes x. Int A sends a derivation v to A v A^-1, read on generators as

    (Int A v)(x)    = A(v(x))
    (Int A v)(xi_s) = A(v(sum_t b_ts xi_t))     with B = A^-1.

With this convention the closed form on the degree-2 generators is

    A (xi1 xi2 xi3 d/dxi_k) A^-1 = det A sum_s b_ks xi1 xi2 xi3 d/dxi_s
    A (xi_i xi_j d/dx) A^-1 = det A sum_{k<s} (-1)^(l+r) b_lr xi_k xi_s d/dx
                              + det A sum_s b'_ls (xi_i xi_j xi_l) d/dxi_s

where l completes {i, j}, r completes {k, s} and b' = d b / dx.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import List, Optional, Sequence, Tuple, Union

from algebra.laurent import LaurentPoly, laurent_sum
from algebra.matrix import RationalMatrix
from cohomology.context import CohClass
from geometry.operations import apply_derivation
from geometry.superfield import (
    EVEN,
    Chart,
    FieldTerm,
    GradingVector,
    OddMonomial,
    SuperField,
    SuperFunction,
    Target,
)
from tools.error_handling import (
    ContextMismatchError,
    DimensionMismatchError,
    InvalidAutomorphismError,
    PreconditionError,
    UnsupportedShapeError,
)

logger = logging.getLogger(__name__)

Grid = Tuple[Tuple[LaurentPoly, ...], ...]
EntryLike = Union[LaurentPoly, str, int, Fraction]


def _as_poly(value: EntryLike) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, str):
        return LaurentPoly.parse(value)
    return LaurentPoly.constant(value)


def _permutation_sign(order: Sequence[int]) -> int:
    inversions = sum(
        1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b]
    )
    return -1 if inversions % 2 else 1


def _determinant(grid: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    size = len(grid)
    if size == 0:
        return LaurentPoly.constant(1)
    total = []
    for order in permutations(range(size)):
        product = LaurentPoly.constant(_permutation_sign(order))
        for row, column in enumerate(order):
            product = product * grid[row][column]
            if product.is_zero:
                break
        total.append(product)
    return laurent_sum(total)


def _minor(grid: Sequence[Sequence[LaurentPoly]], row: int, column: int) -> LaurentPoly:
    return _determinant(
        [
            [value for j, value in enumerate(line) if j != column]
            for i, line in enumerate(grid)
            if i != row
        ]
    )


@dataclass(frozen=True)
class AutomorphismValidation:
    valid: bool
    violations: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class BundleAutomorphism:
    """Polynomial matrix (a_ij); column j is the image of xi_j"""

    k: GradingVector
    entries: Grid

    def __post_init__(self):
        if len(self.entries) != self.k.m or any(len(row) != self.k.m for row in self.entries):
            raise DimensionMismatchError(
                f"automorphism for m={self.k.m} needs a {self.k.m}x{self.k.m} grid"
            )

    @classmethod
    def from_rows(cls, k: GradingVector, rows: Sequence[Sequence[EntryLike]]) -> "BundleAutomorphism":
        return cls(k, tuple(tuple(_as_poly(value) for value in row) for row in rows))

    @classmethod
    def identity(cls, k: GradingVector) -> "BundleAutomorphism":
        return cls.diagonal(k, [1] * k.m)

    @classmethod
    def diagonal(cls, k: GradingVector, values: Sequence[Union[int, Fraction]]) -> "BundleAutomorphism":
        if len(values) != k.m:
            raise DimensionMismatchError(f"{len(values)} diagonal entries for m={k.m}")
        return cls.from_rows(
            k, [[values[i] if i == j else 0 for j in range(k.m)] for i in range(k.m)]
        )

    @property
    def m(self) -> int:
        return self.k.m

    def entry(self, i: int, j: int) -> LaurentPoly:
        """1-based a_ij"""
        return self.entries[i - 1][j - 1]

    def is_constant(self) -> bool:
        return all(value.is_constant() for row in self.entries for value in row)

    def determinant(self) -> LaurentPoly:
        return _determinant(self.entries)

    def validate(self) -> AutomorphismValidation:
        violations = []
        for i in range(1, self.m + 1):
            for j in range(1, self.m + 1):
                value = self.entry(i, j)
                if value.is_zero:
                    continue
                allowed = self.k[j] - self.k[i]
                if allowed < 0:
                    violations.append(
                        f"a{i}{j} = {value} must vanish since k{j}-k{i} = {allowed} < 0"
                    )
                elif not value.is_polynomial() or value.max_exponent > allowed:
                    violations.append(
                        f"a{i}{j} = {value} must be a polynomial of degree <= {allowed}"
                    )
        det = self.determinant()
        if det.is_zero or not det.is_constant():
            violations.append(f"det(A) = {det} is not a nonzero constant")
        return AutomorphismValidation(not violations, tuple(violations))

    def require_valid(self) -> None:
        validation = self.validate()
        if not validation.valid:
            raise InvalidAutomorphismError(
                "automorphism violates the degree constraints: " + "; ".join(validation.violations),
                list(validation.violations),
            )

    def inverse(self) -> "BundleAutomorphism":
        det = self.determinant()
        if det.is_zero or not det.is_constant():
            raise InvalidAutomorphismError(
                f"det(A) = {det} is not a nonzero constant, A has no polynomial inverse",
                [f"det(A) = {det}"],
            )
        factor = 1 / det.coefficient(0)
        size = self.m
        rows = [
            [_minor(self.entries, j, i).scale(factor * (-1) ** (i + j)) for j in range(size)]
            for i in range(size)
        ]
        return BundleAutomorphism(self.k, tuple(tuple(row) for row in rows))

    def compose(self, other: "BundleAutomorphism") -> "BundleAutomorphism":
        """self after other; the matrix product self * other"""
        if other.k != self.k:
            raise ContextMismatchError(f"automorphisms for k={self.k} and k={other.k}")
        size = self.m
        rows = [
            tuple(
                laurent_sum(self.entries[i][t] * other.entries[t][j] for t in range(size))
                for j in range(size)
            )
            for i in range(size)
        ]
        return BundleAutomorphism(self.k, tuple(rows))

    def image_of_odd(self, j: int) -> SuperFunction:
        """A(xi_j) = sum_i a_ij xi_i"""
        result = SuperFunction.zero(self.m, Chart.U0)
        for i in range(1, self.m + 1):
            result = result + SuperFunction.laurent(
                self.m, Chart.U0, self.entry(i, j), OddMonomial.of(i)
            )
        return result

    def substitute(self, f: SuperFunction) -> SuperFunction:
        """Pull back f along the odd frame change; x is fixed"""
        if f.m != self.m:
            raise DimensionMismatchError(f"function has m={f.m}, automorphism has m={self.m}")
        images = {j: self.image_of_odd(j) for j in range(1, self.m + 1)}
        result = SuperFunction.zero(self.m, f.chart)
        for odd, coefficient in f.terms:
            product = SuperFunction.laurent(self.m, f.chart, coefficient)
            for index in odd:
                product = product * images[index]
            result = result + product
        return result

    def conjugate(self, v: SuperField) -> SuperField:
        """The field A v A^-1"""
        if v.m != self.m:
            raise DimensionMismatchError(f"field has m={v.m}, automorphism has m={self.m}")
        inverse = self.inverse()
        x_value = self.substitute(v.value_on_x())
        odd_values = [
            self.substitute(apply_derivation(v, inverse.image_of_odd(s)))
            for s in range(1, self.m + 1)
        ]
        return SuperField.from_values(x_value, odd_values)

    def render(self) -> str:
        return "\n".join(
            "[" + ", ".join(str(value) for value in row) + "]" for row in self.entries
        )


def _require_context(A: BundleAutomorphism, z: CohClass) -> None:
    if z.context.k != A.k or z.context.q != 2:
        raise ContextMismatchError(
            f"automorphism for k={A.k} applied to a class for k={z.context.k}, q={z.context.q}"
        )


def int_action(A: BundleAutomorphism, z: CohClass, unvalidated: bool = False) -> CohClass:
    """Class of A v A^-1 for a representative v of z"""
    _require_context(A, z)
    if unvalidated:
        validation = A.validate()
        if not validation.valid:
            logger.warning(
                "acting with an automorphism outside Aut E: %s", "; ".join(validation.violations)
            )
    else:
        A.require_valid()
    return z.context.reduce(A.conjugate(z.representative))


def closed_form_action(A: BundleAutomorphism, term: FieldTerm) -> SuperField:
    """Conjugate one degree-2 generator term by the closed form in the module docstring"""
    if A.m != 3:
        raise UnsupportedShapeError(f"closed form is stated for m = 3, got m = {A.m}")
    det = A.determinant()
    B = A.inverse()
    coefficient = term.coeff * det
    triple = OddMonomial.of(1, 2, 3)

    if term.odd.degree == 3 and not term.target.is_even:
        k = term.target.index
        items = [
            (triple, Target(s), coefficient * B.entry(k, s)) for s in range(1, 4)
        ]
        return SuperField.from_items(3, Chart.U0, items)

    if term.odd.degree == 2 and term.target.is_even:
        i, j = term.odd.indices
        l = 6 - i - j
        items = []
        for k_, s in combinations(range(1, 4), 2):
            r = 6 - k_ - s
            sign = -1 if (l + r) % 2 else 1
            items.append(
                (OddMonomial.of(k_, s), EVEN, coefficient * B.entry(l, r).scale(sign))
            )
        literal_sign, _ = OddMonomial.ordered([i, j, l])
        for s in range(1, 4):
            derivative = B.entry(l, s).derivative()
            if derivative.is_zero:
                continue
            items.append((triple, Target(s), coefficient * derivative.scale(literal_sign)))
        return SuperField.from_items(3, Chart.U0, items)

    raise UnsupportedShapeError(
        f"no closed form for xi^{term.odd.indices} d/d{'x' if term.target.is_even else f'xi{term.target.index}'}"
    )


def closed_form_conjugate(A: BundleAutomorphism, v: SuperField) -> SuperField:
    result = SuperField.zero(v.m, Chart.U0)
    for term in v.terms:
        result = result + closed_form_action(A, term)
    return result


def scalar_equivalent(z1: CohClass, z2: CohClass) -> Optional[Fraction]:
    """c with z2 = c * z1 and c != 0, if any"""
    z1.require_same_context(z2)
    if z1.is_zero or z2.is_zero:
        return Fraction(1) if z1.is_zero and z2.is_zero else None
    pivot = next(i for i, value in enumerate(z1.coords) if value != 0)
    c = z2.coords[pivot] / z1.coords[pivot]
    if c != 0 and all(b == c * a for a, b in zip(z1.coords, z2.coords)):
        return c
    return None


def orbit_witness_check(
    A: BundleAutomorphism,
    z1: CohClass,
    z2: CohClass,
    up_to_scalar: bool = False,
    unvalidated: bool = False,
) -> bool:
    z1.require_same_context(z2)
    image = int_action(A, z1, unvalidated=unvalidated)
    if up_to_scalar:
        return scalar_equivalent(image, z2) is not None
    return image == z2


def action_matrix(
    A: BundleAutomorphism, classes: Sequence[CohClass], unvalidated: bool = False
) -> RationalMatrix:
    """Matrix of Int A on span(classes); column t is the image of classes[t]"""
    if not classes:
        return RationalMatrix.zeros(0, 0)
    for z in classes[1:]:
        classes[0].require_same_context(z)
    height = classes[0].context.dimension
    span = RationalMatrix.from_columns([z.coords for z in classes], height=height)
    columns: List[Tuple[Fraction, ...]] = []
    for z in classes:
        solution = span.solve(int_action(A, z, unvalidated=unvalidated).coords)
        if solution is None:
            raise PreconditionError("span of the given classes is not stable under Int A")
        columns.append(tuple(solution))
    return RationalMatrix.from_columns(columns, height=len(classes))
