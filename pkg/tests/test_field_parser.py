from fractions import Fraction

import pytest
from hypothesis import given

from config.classification_configs.published_cocycles import (
    S_DOUBLE_PRIME_222,
    S_DOUBLE_PRIME_333,
    S_PRIME_221,
)
from geometry.field_parser import (
    parse_field,
    parse_superfunction,
    render_field,
    render_superfunction,
    tokenize,
)
from geometry.superfield import EVEN, Chart, OddMonomial, SuperField, Target
from tests.strategies import any_parity_fields
from tools.error_handling import FieldSyntaxError

TRIPLE = OddMonomial.of(1, 2, 3)


class TestParse:
    def test_quadric_cocycle(self):
        assert parse_field("x^-1 xi1*xi2 d/dx") == SuperField.monomial(
            3, -1, OddMonomial.of(1, 2), EVEN
        )

    def test_rational_coefficient(self):
        assert parse_field("1/2*x^-2 xi1*xi2*xi3 d/dxi3") == SuperField.monomial(
            3, -2, TRIPLE, Target(3), Fraction(1, 2)
        )

    def test_odd_factors_in_any_order(self):
        assert parse_field("xi2*xi1 d/dx") == parse_field("-xi1*xi2 d/dx")
        assert parse_field("x^-1 xi1*xi3*xi2 d/dxi2") == SuperField.monomial(
            3, -1, TRIPLE, Target(2), -1
        )

    def test_terms_merge(self):
        assert parse_field("x^-1 d/dx + 2*x^-1 d/dx - 3*x^-1 d/dx").is_zero
        assert parse_field("0") == SuperField.zero(3)

    def test_chart_u1(self):
        v = parse_field("-y^2 d/dy + y eta1 d/deta2", Chart.U1)
        assert v.chart == Chart.U1
        assert render_field(v) == "y^1 eta1 d/deta2 - y^2 d/dy"

    def test_superfunction(self):
        f = parse_superfunction("x^-1 - x^-3 xi1*xi2", m=2)
        assert f.body.coefficient(-1) == 1
        assert f.coefficient(OddMonomial.of(1, 2)).coefficient(-3) == -1


class TestParseErrors:
    def test_repeated_index(self):
        with pytest.raises(FieldSyntaxError, match="repeated odd index 1") as info:
            parse_field("xi1*xi1 d/dx")
        assert info.value.position == 4

    def test_index_out_of_range(self):
        with pytest.raises(FieldSyntaxError, match="outside 1..2"):
            parse_field("xi3 d/dx", m=2)

    def test_unexpected_character(self):
        with pytest.raises(FieldSyntaxError) as info:
            parse_field("x^-1 xi1*xi2 d/dz")
        assert info.value.position == 13

    def test_wrong_chart(self):
        with pytest.raises(FieldSyntaxError, match="other chart"):
            parse_field("y d/dx")

    def test_missing_derivation(self):
        with pytest.raises(FieldSyntaxError, match="expected d/dx"):
            parse_field("x^-1 xi1*xi2")

    def test_fractional_exponent(self):
        with pytest.raises(FieldSyntaxError, match="fractional exponent"):
            parse_field("x^1/2 d/dx")

    def test_tokens_keep_positions(self):
        tokens = tokenize("x^-1 d/dx")
        assert [t.type for t in tokens] == ["VAR", "CARET", "MINUS", "NUMBER", "EVENDERIV", "EOF"]
        assert tokens[4].where == 5


class TestRender:
    def test_zero(self):
        assert render_field(SuperField.zero(3)) == "0"

    @pytest.mark.parametrize("text", [S_DOUBLE_PRIME_222, S_PRIME_221[1]])
    def test_printed_forms_are_canonical(self, text):
        assert render_field(parse_field(text)) == text

    def test_ascending_exponents(self):
        assert render_field(parse_field(S_DOUBLE_PRIME_333)).startswith("9/4*x^-4 xi1*xi2*xi3 d/dxi3")

    def test_primed_superfunction(self):
        f = parse_superfunction("x^-1 - x^-3 xi1*xi2", m=2)
        assert render_superfunction(f, primed=True) == "x'^-1 - x'^-3 xi'1*xi'2"

    @given(any_parity_fields())
    def test_render_parses_back(self, v):
        assert parse_field(render_field(v), v.chart, v.m) == v
