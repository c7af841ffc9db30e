"""Superfunctions and super vector fields on the two charts of the projective line

Chart U0 has coordinates (x, xi_1..xi_m), chart U1 has (y, eta_1..eta_m).
All values are immutable and kept in canonical form: terms sorted, equal keys
merged, zero coefficients dropped.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from algebra.laurent import LaurentPoly
from tools.error_handling import (
    ChartMismatchError,
    DimensionMismatchError,
    FieldSyntaxError,
    PreconditionError,
)

Scalar = Union[int, Fraction]


class Chart(str, Enum):
    """Standard charts of the projective line"""

    U0 = "U0"  # x, xi
    U1 = "U1"  # y = 1/x, eta

    @property
    def other(self) -> "Chart":
        return Chart.U1 if self is Chart.U0 else Chart.U0

    @property
    def even_name(self) -> str:
        return "x" if self is Chart.U0 else "y"

    @property
    def odd_name(self) -> str:
        return "xi" if self is Chart.U0 else "eta"


@dataclass(frozen=True, order=True)
class OddMonomial:
    """Product xi_{i1} ... xi_{ir} with strictly increasing indices"""

    indices: Tuple[int, ...] = ()

    def __post_init__(self):
        previous = 0
        for index in self.indices:
            if index <= previous:
                raise PreconditionError(
                    f"odd indices must be positive and strictly increasing: {self.indices}"
                )
            previous = index

    @classmethod
    def of(cls, *indices: int) -> "OddMonomial":
        return cls(tuple(indices))

    @classmethod
    def ordered(cls, indices: Sequence[int]) -> Tuple[int, "OddMonomial"]:
        """Sign and monomial of the product taken in the given order

        The sign is 0 when an index repeats.
        """
        if len(set(indices)) != len(indices):
            return 0, cls(())
        inversions = sum(
            1
            for a in range(len(indices))
            for b in range(a + 1, len(indices))
            if indices[a] > indices[b]
        )
        return (-1 if inversions % 2 else 1), cls(tuple(sorted(indices)))

    @property
    def degree(self) -> int:
        return len(self.indices)

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def multiply(self, other: "OddMonomial") -> Tuple[int, "OddMonomial"]:
        """Sign and result of self * other; sign 0 when they share an index"""
        if not other.indices:
            return 1, self
        if not self.indices:
            return 1, other
        if set(self.indices) & set(other.indices):
            return 0, OddMonomial(())
        inversions = sum(1 for a in self.indices for b in other.indices if b < a)
        merged = tuple(sorted(self.indices + other.indices))
        return (-1 if inversions % 2 else 1), OddMonomial(merged)

    def remove(self, index: int) -> Tuple[int, "OddMonomial"]:
        """Left derivative d/dxi_index: sign of moving xi_index to the front"""
        if index not in self.indices:
            return 0, OddMonomial(())
        position = self.indices.index(index)
        rest = self.indices[:position] + self.indices[position + 1 :]
        return (-1 if position % 2 else 1), OddMonomial(rest)

    def complement(self, m: int) -> "OddMonomial":
        return OddMonomial(tuple(i for i in range(1, m + 1) if i not in self.indices))


@dataclass(frozen=True, order=True)
class Target:
    """Derivation target: index 0 is d/dx, index l >= 1 is d/dxi_l"""

    index: int

    @classmethod
    def even(cls) -> "Target":
        return cls(0)

    @classmethod
    def odd(cls, index: int) -> "Target":
        if index < 1:
            raise PreconditionError(f"odd derivation index must be >= 1, got {index}")
        return cls(index)

    @property
    def is_even(self) -> bool:
        return self.index == 0


EVEN = Target(0)


@dataclass(frozen=True)
class GradingVector:
    """Degrees (k_1, ..., k_m) of the line bundles of the retract"""

    k: Tuple[int, ...]

    def __post_init__(self):
        if not self.k:
            raise PreconditionError("grading vector needs at least one entry")

    @classmethod
    def of(cls, *k: int) -> "GradingVector":
        return cls(tuple(int(value) for value in k))

    @classmethod
    def parse(cls, text: str) -> "GradingVector":
        parts = [part.strip() for part in text.strip().strip("()").split(",")]
        try:
            return cls(tuple(int(part) for part in parts))
        except ValueError:
            raise FieldSyntaxError(
                f"invalid grading vector {text!r}", 0, "comma-separated integers"
            ) from None

    @property
    def m(self) -> int:
        return len(self.k)

    def __getitem__(self, index: int) -> int:
        """1-based component k_index"""
        return self.k[index - 1]

    def weight(self, odd: OddMonomial) -> int:
        """K_I = sum of k_i over the indices of ``odd``"""
        return sum(self.k[i - 1] for i in odd.indices)

    @property
    def abs_sum(self) -> int:
        return sum(abs(value) for value in self.k)

    def canonical(self) -> Tuple["GradingVector", Tuple[int, ...]]:
        """Descending sort and the permutation: canonical[i] = k[perm[i]] (1-based)"""
        order = sorted(range(self.m), key=lambda i: (-self.k[i], i))
        return GradingVector(tuple(self.k[i] for i in order)), tuple(i + 1 for i in order)

    def permuted(self, permutation: Sequence[int]) -> "GradingVector":
        return GradingVector(tuple(self.k[i - 1] for i in permutation))

    def __str__(self) -> str:
        return "(" + ",".join(str(value) for value in self.k) + ")"


def _require_indices(m: int, odd: OddMonomial, target: Optional[Target] = None) -> None:
    if odd.indices and odd.indices[-1] > m:
        raise DimensionMismatchError(f"odd index {odd.indices[-1]} outside 1..{m}")
    if target is not None and target.index > m:
        raise DimensionMismatchError(f"derivation index {target.index} outside 1..{m}")


@dataclass(frozen=True)
class SuperFunction:
    """Finite sum of Laurent coefficient times odd monomial"""

    m: int
    chart: Chart
    terms: Tuple[Tuple[OddMonomial, LaurentPoly], ...] = ()

    @classmethod
    def from_mapping(
        cls, m: int, chart: Chart, mapping: Dict[OddMonomial, LaurentPoly]
    ) -> "SuperFunction":
        for odd in mapping:
            _require_indices(m, odd)
        return cls(
            m,
            chart,
            tuple(sorted((o, c) for o, c in mapping.items() if not c.is_zero)),
        )

    @classmethod
    def zero(cls, m: int, chart: Chart = Chart.U0) -> "SuperFunction":
        return cls(m, chart, ())

    @classmethod
    def laurent(
        cls, m: int, chart: Chart, coefficient: LaurentPoly, odd: OddMonomial = OddMonomial()
    ) -> "SuperFunction":
        return cls.from_mapping(m, chart, {odd: coefficient})

    @classmethod
    def even_coordinate(cls, m: int, chart: Chart = Chart.U0) -> "SuperFunction":
        return cls.laurent(m, chart, LaurentPoly.monomial(1))

    @classmethod
    def odd_coordinate(cls, m: int, index: int, chart: Chart = Chart.U0) -> "SuperFunction":
        return cls.laurent(m, chart, LaurentPoly.constant(1), OddMonomial.of(index))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, odd: OddMonomial) -> LaurentPoly:
        for key, value in self.terms:
            if key == odd:
                return value
        return LaurentPoly.zero()

    @property
    def body(self) -> LaurentPoly:
        return self.coefficient(OddMonomial())

    def odd_degrees(self) -> List[int]:
        return sorted({odd.degree for odd, _ in self.terms})

    def truncate(self, max_degree: int) -> "SuperFunction":
        """Drop every term of odd degree above ``max_degree``"""
        return SuperFunction(
            self.m, self.chart, tuple(t for t in self.terms if t[0].degree <= max_degree)
        )

    def _merge(self, pairs: Iterable[Tuple[OddMonomial, LaurentPoly]]) -> "SuperFunction":
        merged: Dict[OddMonomial, LaurentPoly] = {}
        for odd, coefficient in pairs:
            merged[odd] = merged[odd] + coefficient if odd in merged else coefficient
        return SuperFunction(
            self.m,
            self.chart,
            tuple(sorted((o, c) for o, c in merged.items() if not c.is_zero)),
        )

    def _check(self, other: "SuperFunction") -> None:
        if other.chart != self.chart:
            raise ChartMismatchError(f"functions on {self.chart} and {other.chart}")
        if other.m != self.m:
            raise DimensionMismatchError(f"odd dimensions {self.m} and {other.m}")

    def __add__(self, other: "SuperFunction") -> "SuperFunction":
        self._check(other)
        return self._merge(self.terms + other.terms)

    def __neg__(self) -> "SuperFunction":
        return SuperFunction(self.m, self.chart, tuple((o, -c) for o, c in self.terms))

    def __sub__(self, other: "SuperFunction") -> "SuperFunction":
        return self + (-other)

    def scale(self, factor: Union[Scalar, LaurentPoly]) -> "SuperFunction":
        if not isinstance(factor, LaurentPoly):
            factor = LaurentPoly.constant(factor)
        return self._merge((o, c * factor) for o, c in self.terms)

    def __mul__(self, other: "SuperFunction") -> "SuperFunction":
        self._check(other)
        products = []
        for left_odd, left in self.terms:
            for right_odd, right in other.terms:
                sign, odd = left_odd.multiply(right_odd)
                if sign:
                    products.append((odd, (left * right).scale(sign)))
        return self._merge(products)

    def partial_x(self) -> "SuperFunction":
        return self._merge((o, c.derivative()) for o, c in self.terms)

    def partial_xi(self, index: int) -> "SuperFunction":
        """Left derivative with respect to the odd coordinate ``index``"""
        pairs = []
        for odd, coefficient in self.terms:
            sign, rest = odd.remove(index)
            if sign:
                pairs.append((rest, coefficient.scale(sign)))
        return self._merge(pairs)


@dataclass(frozen=True)
class FieldTerm:
    """coeff(x) * xi^odd * d/d(target)"""

    coeff: LaurentPoly
    odd: OddMonomial
    target: Target

    @property
    def degree(self) -> int:
        return self.odd.degree if self.target.is_even else self.odd.degree - 1

    @property
    def parity(self) -> int:
        return self.degree % 2

    @property
    def key(self) -> Tuple[OddMonomial, Target]:
        return self.odd, self.target


FieldKey = Tuple[OddMonomial, Target]


@dataclass(frozen=True)
class SuperField:
    """Derivation sum_t coeff_t * xi^{I_t} * d/d(target_t) on one chart"""

    m: int
    chart: Chart
    terms: Tuple[FieldTerm, ...] = ()

    @classmethod
    def zero(cls, m: int, chart: Chart = Chart.U0) -> "SuperField":
        return cls(m, chart, ())

    @classmethod
    def from_items(
        cls,
        m: int,
        chart: Chart,
        items: Iterable[Tuple[OddMonomial, Target, LaurentPoly]],
    ) -> "SuperField":
        merged: Dict[FieldKey, LaurentPoly] = {}
        for odd, target, coefficient in items:
            key = (odd, target)
            merged[key] = merged[key] + coefficient if key in merged else coefficient
        for odd, target in merged:
            _require_indices(m, odd, target)
        return cls(
            m,
            chart,
            tuple(
                FieldTerm(c, odd, target)
                for (odd, target), c in sorted(merged.items(), key=lambda kv: kv[0])
                if not c.is_zero
            ),
        )

    @classmethod
    def monomial(
        cls,
        m: int,
        exponent: int,
        odd: OddMonomial,
        target: Target,
        coefficient: Scalar = 1,
        chart: Chart = Chart.U0,
    ) -> "SuperField":
        return cls.from_items(
            m, chart, [(odd, target, LaurentPoly.monomial(exponent, coefficient))]
        )

    @classmethod
    def from_values(
        cls, x_value: SuperFunction, odd_values: Sequence[SuperFunction]
    ) -> "SuperField":
        """The derivation D with D(x) = x_value and D(xi_l) = odd_values[l-1]"""
        items = [(odd, EVEN, c) for odd, c in x_value.terms]
        for index, value in enumerate(odd_values, start=1):
            items.extend((odd, Target(index), c) for odd, c in value.terms)
        return cls.from_items(x_value.m, x_value.chart, items)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[Tuple[OddMonomial, Target, LaurentPoly]]:
        for term in self.terms:
            yield term.odd, term.target, term.coeff

    def monomials(self) -> Iterator[Tuple[int, OddMonomial, Target, Fraction]]:
        """(exponent, odd, target, rational coefficient) for every monomial"""
        for term in self.terms:
            for exponent, coefficient in term.coeff.terms:
                yield exponent, term.odd, term.target, coefficient

    def coefficient(self, odd: OddMonomial, target: Target) -> LaurentPoly:
        for term in self.terms:
            if term.key == (odd, target):
                return term.coeff
        return LaurentPoly.zero()

    def degrees(self) -> List[int]:
        return sorted({term.degree for term in self.terms})

    @property
    def degree(self) -> Optional[int]:
        """Grading degree when homogeneous, else None (also None for zero)"""
        degrees = self.degrees()
        return degrees[0] if len(degrees) == 1 else None

    @property
    def parity(self) -> Optional[int]:
        parities = {term.parity for term in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def parity_parts(self) -> Dict[int, "SuperField"]:
        parts: Dict[int, List[FieldTerm]] = {}
        for term in self.terms:
            parts.setdefault(term.parity, []).append(term)
        return {p: SuperField(self.m, self.chart, tuple(ts)) for p, ts in sorted(parts.items())}

    def exponent_bounds(self) -> Optional[Tuple[int, int]]:
        exponents = [n for n, _, _, _ in self.monomials()]
        return (min(exponents), max(exponents)) if exponents else None

    def value_on_x(self) -> SuperFunction:
        return SuperFunction.from_mapping(
            self.m,
            self.chart,
            {t.odd: t.coeff for t in self.terms if t.target.is_even},
        )

    def value_on_odd(self, index: int) -> SuperFunction:
        return SuperFunction.from_mapping(
            self.m,
            self.chart,
            {t.odd: t.coeff for t in self.terms if t.target.index == index},
        )

    def _check(self, other: "SuperField") -> None:
        if other.chart != self.chart:
            raise ChartMismatchError(f"fields on {self.chart} and {other.chart}")
        if other.m != self.m:
            raise DimensionMismatchError(f"odd dimensions {self.m} and {other.m}")

    def __add__(self, other: "SuperField") -> "SuperField":
        self._check(other)
        return SuperField.from_items(
            self.m, self.chart, list(self.items()) + list(other.items())
        )

    def __neg__(self) -> "SuperField":
        return SuperField(
            self.m, self.chart, tuple(FieldTerm(-t.coeff, t.odd, t.target) for t in self.terms)
        )

    def __sub__(self, other: "SuperField") -> "SuperField":
        return self + (-other)

    def scale(self, factor: Union[Scalar, LaurentPoly]) -> "SuperField":
        if not isinstance(factor, LaurentPoly):
            factor = LaurentPoly.constant(factor)
        return SuperField.from_items(
            self.m, self.chart, ((o, t, c * factor) for o, t, c in self.items())
        )

    def restrict_degree(self, degree: int) -> "SuperField":
        return SuperField(
            self.m, self.chart, tuple(t for t in self.terms if t.degree == degree)
        )


def linear_combination(
    fields: Sequence[SuperField], scalars: Sequence[Scalar], m: int, chart: Chart = Chart.U0
) -> SuperField:
    items = []
    for field, scalar in zip(fields, scalars):
        if scalar != 0:
            items.extend((o, t, c.scale(scalar)) for o, t, c in field.items())
    return SuperField.from_items(m, chart, items)
