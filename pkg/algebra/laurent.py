"""Laurent polynomials in one variable with exact rational coefficients

Coefficients are stored as a tuple of ``(exponent, coefficient)`` pairs in
ascending exponent order with no zero coefficients; the zero polynomial is the
empty tuple. Every operation returns a new canonical value.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from algebra.rational import format_rational, parse_rational
from tools.error_handling import FieldSyntaxError

Scalar = Union[int, Fraction]


def _canonical(mapping: Mapping[int, Fraction]) -> Tuple[Tuple[int, Fraction], ...]:
    return tuple(sorted((n, c) for n, c in mapping.items() if c != 0))


@dataclass(frozen=True)
class LaurentPoly:
    terms: Tuple[Tuple[int, Fraction], ...] = ()

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(())

    @classmethod
    def constant(cls, value: Scalar) -> "LaurentPoly":
        return cls.monomial(0, value)

    @classmethod
    def monomial(cls, exponent: int, coefficient: Scalar = 1) -> "LaurentPoly":
        if coefficient == 0:
            return cls(())
        return cls(((int(exponent), Fraction(coefficient)),))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Scalar]) -> "LaurentPoly":
        return cls(_canonical({int(n): Fraction(c) for n, c in mapping.items()}))

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent: int) -> Fraction:
        for n, c in self.terms:
            if n == exponent:
                return c
        return Fraction(0)

    @property
    def min_exponent(self) -> Optional[int]:
        return self.terms[0][0] if self.terms else None

    @property
    def max_exponent(self) -> Optional[int]:
        return self.terms[-1][0] if self.terms else None

    def is_polynomial(self) -> bool:
        return not self.terms or self.terms[0][0] >= 0

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        merged = dict(self.terms)
        for n, c in other.terms:
            merged[n] = merged.get(n, 0) + c
        return LaurentPoly(_canonical(merged))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((n, -c) for n, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentPoly(())
        product: Dict[int, Fraction] = {}
        for n, c in self.terms:
            for p, d in other.terms:
                product[n + p] = product.get(n + p, 0) + c * d
        return LaurentPoly(_canonical(product))

    def __rmul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: Scalar) -> "LaurentPoly":
        if factor == 0:
            return LaurentPoly(())
        factor = Fraction(factor)
        return LaurentPoly(tuple((n, c * factor) for n, c in self.terms))

    def shift(self, offset: int) -> "LaurentPoly":
        """Multiply by x^offset"""
        return LaurentPoly(tuple((n + offset, c) for n, c in self.terms))

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly(tuple((n - 1, n * c) for n, c in self.terms if n != 0))

    def invert_variable(self) -> "LaurentPoly":
        """Substitute x -> 1/x"""
        return LaurentPoly(tuple((-n, c) for n, c in reversed(self.terms)))

    def evaluate(self, point: Scalar) -> Fraction:
        point = Fraction(point)
        if point == 0 and self.terms and self.terms[0][0] < 0:
            raise ZeroDivisionError("negative exponent evaluated at 0")
        return sum((c * point**n for n, c in self.terms), Fraction(0))

    def truncate(self, lo: int, hi: int) -> "LaurentPoly":
        return LaurentPoly(tuple((n, c) for n, c in self.terms if lo <= n <= hi))

    def __str__(self) -> str:
        return self.serialize()

    def serialize(self, variable: str = "x") -> str:
        if not self.terms:
            return "0"
        parts: List[str] = []
        for index, (n, c) in enumerate(self.terms):
            body = f"{format_rational(abs(c))}*{variable}^{n}"
            if index == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    @classmethod
    def parse(cls, text: str, variable: str = "x") -> "LaurentPoly":
        """Parse the serialized form; also accepts ``x``, ``-x``, ``3``, ``2/3*x^2``"""
        return _parse_laurent(text, variable)


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_derivative(a: LaurentPoly) -> LaurentPoly:
    return a.derivative()


def laurent_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    merged: Dict[int, Fraction] = {}
    for poly in polys:
        for n, c in poly.terms:
            merged[n] = merged.get(n, 0) + c
    return LaurentPoly(_canonical(merged))


def _parse_laurent(text: str, variable: str) -> LaurentPoly:
    positions = [i for i, ch in enumerate(text) if not ch.isspace()]
    compact = "".join(text[i] for i in positions)
    if not compact:
        raise FieldSyntaxError("empty Laurent polynomial", 0, "a term")
    if compact == "0":
        return LaurentPoly.zero()

    term_re = re.compile(
        r"([+-]?)(\d+(?:/\d+)?)?(?:\*?(" + re.escape(variable) + r")(?:\^([+-]?\d+))?)?"
    )

    def origin(index: int) -> int:
        return positions[index] if index < len(positions) else len(text)

    merged: Dict[int, Fraction] = {}
    pos = 0
    while pos < len(compact):
        match = term_re.match(compact, pos)
        sign, number, var, exponent = match.groups() if match else (None,) * 4
        if match is None or (number is None and var is None):
            raise FieldSyntaxError(
                "unexpected token", origin(pos), f"coefficient or {variable!r}"
            )
        if pos > 0 and not sign:
            raise FieldSyntaxError("missing operator", origin(pos), "'+' or '-'")
        coefficient = parse_rational(number) if number else Fraction(1)
        if sign == "-":
            coefficient = -coefficient
        if var is None:
            power = 0
        else:
            power = int(exponent) if exponent is not None else 1
        merged[power] = merged.get(power, 0) + coefficient
        pos = match.end()
    return LaurentPoly(_canonical(merged))
