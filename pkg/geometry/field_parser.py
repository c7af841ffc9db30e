"""Text form of superfunctions and super vector fields

    field  := term (('+'|'-') term)*
    term   := coeff? odd* deriv
    coeff  := rational ('*'? 'x^' integer)?
    odd    := 'xi' index ('*')?
    deriv  := 'd/dx' | 'd/dxi' index

Chart U1 spells the variables y, eta, d/dy, d/deta. Odd factors may appear in
any order; the permutation sign is applied and rendering is canonical.
"""

import re
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Tuple

from algebra.laurent import LaurentPoly
from algebra.rational import format_rational, parse_rational
from geometry.superfield import (
    EVEN,
    Chart,
    OddMonomial,
    SuperField,
    SuperFunction,
    Target,
)
from tools.error_handling import FieldSyntaxError


class Token(NamedTuple):
    type: str
    value: str
    where: int


_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<ODDDERIV>d/d(?:xi|eta)\d+)
  | (?P<EVENDERIV>d/d(?:x|y))
  | (?P<ODD>(?:xi|eta)\d+)
  | (?P<VAR>x|y)
  | (?P<NUMBER>\d+(?:/\d+)?)
  | (?P<CARET>\^)
  | (?P<STAR>\*)
  | (?P<PLUS>\+)
  | (?P<MINUS>-)
""",
    re.VERBOSE,
)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise FieldSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "WS":
            tokens.append(Token(kind, match.group(kind), pos))
        pos = match.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart, m: int, with_derivation: bool):
        self.tokens = tokenize(text)
        self.index = 0
        self.chart = chart
        self.m = m
        self.with_derivation = with_derivation

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str, expected: str) -> Token:
        if self.current.type != kind:
            raise FieldSyntaxError(
                f"unexpected {self._describe(self.current)}", self.current.where, expected
            )
        return self.advance()

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.type == "EOF" else f"token {token.value!r}"

    def check_chart(self, token: Token, u0_spelling: bool) -> None:
        if u0_spelling != (self.chart is Chart.U0):
            expected = f"{self.chart.even_name}/{self.chart.odd_name} variables"
            raise FieldSyntaxError(f"{token.value!r} belongs to the other chart", token.where, expected)

    def skip_star_before(self, kinds: Tuple[str, ...]) -> None:
        if self.current.type == "STAR" and self.tokens[self.index + 1].type in kinds:
            self.advance()

    def index_of(self, token: Token, digits: str) -> int:
        index = int(digits)
        if not 1 <= index <= self.m:
            raise FieldSyntaxError(f"index {index} outside 1..{self.m}", token.where)
        return index

    def terms(self) -> Iterator[Tuple[int, OddMonomial, Optional[Target], LaurentPoly]]:
        sign = 1
        if self.current.type in ("PLUS", "MINUS"):
            sign = -1 if self.advance().type == "MINUS" else 1
        while True:
            yield self.term(sign)
            if self.current.type == "EOF":
                return
            if self.current.type not in ("PLUS", "MINUS"):
                raise FieldSyntaxError(
                    f"unexpected {self._describe(self.current)}", self.current.where, "'+' or '-'"
                )
            sign = -1 if self.advance().type == "MINUS" else 1

    def term(self, sign: int) -> Tuple[int, OddMonomial, Optional[Target], LaurentPoly]:
        start = self.current.where
        coefficient = self.coefficient()
        factors: List[Tuple[Token, int]] = []
        while self.current.type == "ODD":
            token = self.advance()
            self.check_chart(token, token.value.startswith("xi"))
            factors.append((token, self.index_of(token, token.value.lstrip("xieta"))))
            if self.current.type == "STAR":
                self.advance()
        seen = set()
        for token, index in factors:
            if index in seen:
                raise FieldSyntaxError(f"repeated odd index {index}", token.where)
            seen.add(index)
        permutation_sign, odd = OddMonomial.ordered([index for _, index in factors])

        target: Optional[Target] = None
        if self.with_derivation:
            if self.current.type == "EVENDERIV":
                token = self.advance()
                self.check_chart(token, token.value == "d/dx")
                target = EVEN
            elif self.current.type == "ODDDERIV":
                token = self.advance()
                self.check_chart(token, token.value.startswith("d/dxi"))
                target = Target(self.index_of(token, token.value.lstrip("d/xieta")))
            else:
                raise FieldSyntaxError(
                    f"unexpected {self._describe(self.current)}", self.current.where, "d/dx or d/dxi<index>"
                )
        elif coefficient is None and not factors:
            raise FieldSyntaxError("empty term", start, "coefficient or odd factor")

        if coefficient is None:
            coefficient = LaurentPoly.constant(1)
        return sign * permutation_sign, odd, target, coefficient

    def coefficient(self) -> Optional[LaurentPoly]:
        value: Optional[Fraction] = None
        if self.current.type == "NUMBER":
            value = parse_rational(self.advance().value)
            self.skip_star_before(("VAR", "ODD"))
        if self.current.type != "VAR":
            return None if value is None else LaurentPoly.constant(value)
        token = self.advance()
        self.check_chart(token, token.value == "x")
        exponent = 1
        if self.current.type == "CARET":
            self.advance()
            negative = False
            if self.current.type in ("PLUS", "MINUS"):
                negative = self.advance().type == "MINUS"
            number = self.expect("NUMBER", "integer exponent")
            if "/" in number.value:
                raise FieldSyntaxError("fractional exponent", number.where, "integer exponent")
            exponent = -int(number.value) if negative else int(number.value)
        self.skip_star_before(("ODD",))
        return LaurentPoly.monomial(exponent, 1 if value is None else value)


def parse_field(text: str, chart: Chart = Chart.U0, m: int = 3) -> SuperField:
    if text.strip() == "0":
        return SuperField.zero(m, chart)
    parser = _Parser(text, chart, m, with_derivation=True)
    items = [
        (odd, target, coefficient.scale(sign))
        for sign, odd, target, coefficient in parser.terms()
        if sign
    ]
    return SuperField.from_items(m, chart, items)


def parse_superfunction(text: str, chart: Chart = Chart.U0, m: int = 3) -> SuperFunction:
    if text.strip() == "0":
        return SuperFunction.zero(m, chart)
    parser = _Parser(text, chart, m, with_derivation=False)
    result = SuperFunction.zero(m, chart)
    for sign, odd, _, coefficient in parser.terms():
        result = result + SuperFunction.laurent(m, chart, coefficient.scale(sign), odd)
    return result


def _coefficient_text(exponent: int, magnitude: Fraction, variable: str, bare: bool) -> str:
    if exponent == 0:
        return "" if magnitude == 1 and not bare else format_rational(magnitude)
    power = f"{variable}^{exponent}"
    return power if magnitude == 1 else f"{format_rational(magnitude)}*{power}"


def _odd_text(odd: OddMonomial, name: str) -> str:
    return "*".join(f"{name}{index}" for index in odd.indices)


def _join(pieces: List[Tuple[Fraction, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for position, (coefficient, body) in enumerate(pieces):
        if position == 0:
            out.append(body if coefficient > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if coefficient > 0 else f" - {body}")
    return "".join(out)


def render_field(v: SuperField) -> str:
    """Monomials by ascending exponent, then canonical (odd, target) order"""
    even, odd_name = v.chart.even_name, v.chart.odd_name
    pieces = []
    for exponent, odd, target, coefficient in sorted(
        v.monomials(), key=lambda mono: (mono[0], mono[1], mono[2])
    ):
        deriv = f"d/d{even}" if target.is_even else f"d/d{odd_name}{target.index}"
        words = [
            _coefficient_text(exponent, abs(coefficient), even, bare=False),
            _odd_text(odd, odd_name),
            deriv,
        ]
        pieces.append((coefficient, " ".join(word for word in words if word)))
    return _join(pieces)


def render_superfunction(f: SuperFunction, primed: bool = False) -> str:
    """Monomials by odd degree, then odd indices, then ascending exponent"""
    even, odd_name = f.chart.even_name, f.chart.odd_name
    if primed:
        even, odd_name = even + "'", odd_name + "'"
    monomials = sorted(
        ((n, odd, c) for odd, poly in f.terms for n, c in poly.terms),
        key=lambda mono: (mono[1].degree, mono[1], mono[0]),
    )
    pieces = []
    for exponent, odd, coefficient in monomials:
        odd_text = _odd_text(odd, odd_name)
        coefficient_text = _coefficient_text(exponent, abs(coefficient), even, bare=not odd_text)
        pieces.append((coefficient, " ".join(word for word in (coefficient_text, odd_text) if word)))
    return _join(pieces)
