from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.laurent import LaurentPoly
from cohomology.context import (
    build_context,
    closed_form_dimension,
    degree_shapes,
    pair_representatives,
)
from geometry.operations import change_chart
from geometry.superfield import Chart, GradingVector, SuperField
from tests.conftest import cached_context
from tools.error_handling import (
    ChartMismatchError,
    ContextMismatchError,
    DegreeError,
    DimensionMismatchError,
)


class TestDimensions:
    @pytest.mark.parametrize(
        "k, expected",
        [
            ((2, 2, 1), 8),
            ((1, 1, 0), 1),
            ((-2, 0, 4), 5),
            ((2, 2, 2), 12),
            ((0, 0, 0), 0),
            ((3, 3), 3),
            ((1, 1), 0),
            ((5,), 0),
        ],
    )
    def test_known_dimensions(self, k, expected):
        ctx = cached_context(k)
        assert ctx.dimension == expected
        assert closed_form_dimension(GradingVector(k)) == expected

    def test_line_bundle_degree_one(self):
        # xi d/dx survives for x^-1 .. x^-(k-3)
        ctx = build_context(GradingVector.of(5), 1)
        assert ctx.dimension == 2
        assert closed_form_dimension(GradingVector.of(5), 1) is None

    def test_published_basis_is_used(self):
        k = GradingVector.of(2, 2, 1)
        ctx = cached_context(k.k)
        assert list(ctx.basis) == pair_representatives(k)
        for i, b in enumerate(ctx.basis):
            assert ctx.reduce(b).coords == tuple(Fraction(int(i == j)) for j in range(8))

    @pytest.mark.slow
    def test_generic_dimension_matches_closed_form(self):
        for k in product(range(-4, 7), repeat=3):
            grading = GradingVector(k)
            assert build_context(grading, 2).dimension == closed_form_dimension(grading), k


class TestReduction:
    def test_coboundary_and_cocycle(self, field):
        ctx = cached_context((1, 1, 0))
        assert ctx.is_coboundary(field("x^-1 xi1*xi2 d/dx"))
        assert not ctx.is_coboundary(field("x^-1 xi1*xi2*xi3 d/dxi3"))

    def test_outside_window(self, field):
        ctx = cached_context((2, 2, 1))
        assert ctx.is_coboundary(field("x^-40 xi1*xi2 d/dx + x^30 xi1*xi2*xi3 d/dxi1"))
        v = ctx.basis[0]
        assert ctx.reduce(v + field("x^-40 xi2*xi3 d/dx")) == ctx.reduce(v)

    def test_linear(self, field):
        ctx = cached_context((2, 2, 1))
        a = field("x^-1 xi1*xi2 d/dx")
        b = field("x^-2 xi1*xi2*xi3 d/dxi2")
        assert ctx.reduce(a + b.scale(3)) == ctx.reduce(a) + ctx.reduce(b).scale(3)

    def test_zero_class(self):
        ctx = cached_context((2, 2, 1))
        assert ctx.reduce(SuperField.zero(3)).is_zero
        assert ctx.zero_class().is_zero

    def test_errors(self, field):
        ctx = cached_context((2, 2, 1))
        with pytest.raises(ChartMismatchError):
            ctx.reduce(field("y^-1 eta1*eta2 d/dy", chart=Chart.U1))
        with pytest.raises(DegreeError):
            ctx.reduce(field("x^-1 xi1 d/dx"))
        with pytest.raises(DimensionMismatchError):
            ctx.reduce(field("x^-1 xi1*xi2 d/dx", m=2))
        with pytest.raises(DimensionMismatchError):
            ctx.class_of([1, 2])

    def test_classes_from_different_gradings(self):
        a = cached_context((2, 2, 1)).basis
        z1 = cached_context((2, 2, 1)).reduce(a[0])
        z2 = cached_context((1, 1, 0)).zero_class()
        with pytest.raises(ContextMismatchError):
            z1 + z2

    @given(
        st.sampled_from(degree_shapes(3, 2)),
        st.integers(min_value=0, max_value=6),
        st.integers(min_value=-3, max_value=3).filter(bool),
        st.sampled_from([(2, 2, 1), (-2, 0, 4), (1, 1, 0)]),
    )
    def test_holomorphic_fields_are_coboundaries(self, shape, exponent, coefficient, k):
        odd, target = shape
        ctx = cached_context(k)
        on_u1 = SuperField.from_items(
            3, Chart.U1, [(odd, target, LaurentPoly.monomial(exponent, coefficient))]
        )
        on_u0 = SuperField.from_items(
            3, Chart.U0, [(odd, target, LaurentPoly.monomial(exponent, coefficient))]
        )
        assert ctx.is_coboundary(change_chart(on_u1, GradingVector(k)))
        assert ctx.is_coboundary(on_u0)
