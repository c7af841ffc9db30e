from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from algebra.laurent import LaurentPoly
from algebra.matrix import RationalMatrix
from cohomology.automorphism import (
    BundleAutomorphism,
    action_matrix,
    closed_form_action,
    closed_form_conjugate,
    int_action,
    orbit_witness_check,
    scalar_equivalent,
)
from config.classification_configs.case_table import MINUS_X_WITNESS, MIXED_221_WITNESS
from config.classification_configs.published_cocycles import S_PRIME_221, TRIPLE
from geometry.superfield import EVEN, GradingVector, OddMonomial, SuperField, Target
from tests.conftest import cached_context
from tests.strategies import automorphisms
from tools.error_handling import (
    InvalidAutomorphismError,
    PreconditionError,
    UnsupportedShapeError,
)

K222 = GradingVector.of(2, 2, 2)
K221 = GradingVector.of(2, 2, 1)
K204 = GradingVector.of(-2, 0, 4)
K333 = GradingVector.of(3, 3, 3)


def generators():
    """Degree-2 generator monomials with a couple of Laurent coefficients"""
    fields = []
    for exponent in (-1, -2):
        for pair in ((1, 2), (1, 3), (2, 3)):
            fields.append(SuperField.monomial(3, exponent, OddMonomial.of(*pair), EVEN))
        for target in (1, 2, 3):
            fields.append(
                SuperField.monomial(3, exponent, OddMonomial.of(1, 2, 3), Target(target))
            )
    return fields


def v_basis(field):
    return [
        field(f"x^-1 xi2*xi3 d/dx + x^-2 {TRIPLE} d/dxi1"),
        field(f"-x^-1 xi1*xi3 d/dx + x^-2 {TRIPLE} d/dxi2"),
        field(f"x^-1 xi1*xi2 d/dx + x^-2 {TRIPLE} d/dxi3"),
    ]


class TestValidation:
    def test_minus_x_matrix_is_valid(self):
        A = BundleAutomorphism.from_rows(K204, MINUS_X_WITNESS.matrix)
        assert A.validate().valid
        assert A.determinant() == LaurentPoly.constant(1)

    def test_printed_221_matrix_breaks_one_constraint(self):
        A = BundleAutomorphism.from_rows(K221, MIXED_221_WITNESS.matrix)
        validation = A.validate()
        assert not validation
        assert len(validation.violations) == 1
        assert validation.violations[0].startswith("a23")
        assert A.determinant() == LaurentPoly.constant(-1)
        with pytest.raises(InvalidAutomorphismError) as info:
            A.require_valid()
        assert info.value.violations == list(validation.violations)

    def test_degree_bound(self):
        A = BundleAutomorphism.from_rows(GradingVector.of(0, 1), [["1", "x^2"], ["0", "1"]])
        assert any("degree <= 1" in v for v in A.validate().violations)

    def test_singular(self):
        A = BundleAutomorphism.from_rows(GradingVector.of(0, 0), [[1, 1], [1, 1]])
        assert not A.validate().valid
        with pytest.raises(InvalidAutomorphismError):
            A.inverse()

    def test_inverse_and_compose(self):
        A = BundleAutomorphism.from_rows(
            K204, [["2", "1-x", "x^3"], ["0", "3", "x^2"], ["0", "0", "5"]]
        )
        assert A.compose(A.inverse()) == BundleAutomorphism.identity(K204)


class TestIntAction:
    def test_identity(self, field):
        ctx = cached_context((2, 2, 1))
        z = ctx.reduce(field(S_PRIME_221[0]))
        assert int_action(BundleAutomorphism.identity(K221), z) == z

    def test_invalid_matrix_refused(self, field):
        ctx = cached_context((2, 2, 1))
        A = BundleAutomorphism.from_rows(K221, MIXED_221_WITNESS.matrix)
        with pytest.raises(PreconditionError):
            int_action(A, ctx.reduce(field(S_PRIME_221[0])))

    @given(st.data())
    @settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_group_action(self, data):
        k = data.draw(st.sampled_from([K221, K204, K222]))
        A = data.draw(automorphisms(k, max_degree=1))
        B = data.draw(automorphisms(k, max_degree=1))
        ctx = cached_context(k.k)
        z = ctx.class_of([Fraction(i + 1) for i in range(ctx.dimension)])
        assert int_action(A.compose(B), z) == int_action(A, int_action(B, z))
        assert int_action(A.inverse(), int_action(A, z)) == z

    def test_constant_action_on_222(self, field):
        ctx = cached_context((2, 2, 2))
        A = BundleAutomorphism.from_rows(K222, [[1, 2, 0], [0, 1, 0], [1, 0, 2]])
        det = A.determinant().coefficient(0)
        B = RationalMatrix.from_rows(
            [[A.inverse().entry(i, j).coefficient(0) for j in (1, 2, 3)] for i in (1, 2, 3)]
        )
        classes = [ctx.reduce(v) for v in v_basis(field)]
        assert action_matrix(A, classes) == B.transpose().scale(det)

    def test_scalar_matrix_scales_by_square(self, field):
        ctx = cached_context((2, 2, 2))
        A = BundleAutomorphism.diagonal(K222, [3, 3, 3])
        for b in ctx.basis:
            assert int_action(A, ctx.reduce(b)) == ctx.reduce(b).scale(9)

    @pytest.mark.parametrize(
        "rows",
        [
            [[2, 0, 0], [0, 3, 0], [0, 0, 5]],
            [["2", "1-x", "x^3"], ["0", "3", "x^2"], ["0", "0", "5"]],
        ],
    )
    def test_minus_two_zero_four_acts_diagonally(self, field, rows):
        ctx = cached_context((-2, 0, 4))
        A = BundleAutomorphism.from_rows(K204, rows)
        classes = [
            ctx.reduce(field(MINUS_X_WITNESS.source)),
            ctx.reduce(field(f"x^-1 {TRIPLE} d/dxi2")),
        ]
        assert action_matrix(A, classes) == RationalMatrix.from_rows([[15, 0], [0, 10]])

    def test_minus_x_witness_does_not_hold(self, field):
        ctx = cached_context((-2, 0, 4))
        A = BundleAutomorphism.from_rows(K204, MINUS_X_WITNESS.matrix)
        v1 = ctx.reduce(field(MINUS_X_WITNESS.source))
        target = ctx.reduce(field(MINUS_X_WITNESS.target))
        assert int_action(A, v1) == v1
        assert not orbit_witness_check(A, v1, target)
        assert not orbit_witness_check(A, v1, target, up_to_scalar=True)

    def test_minus_x_conjugate_differs_by_a_coboundary(self, field):
        ctx = cached_context((-2, 0, 4))
        A = BundleAutomorphism.from_rows(K204, MINUS_X_WITNESS.matrix)
        source = field(MINUS_X_WITNESS.source)
        difference = A.conjugate(source) - source
        # the xi1*xi2*xi3 d/dxi2 contributions cancel, leaving a U0-holomorphic term
        assert [(n, odd, target) for n, odd, target, _ in difference.monomials()] == [
            (0, OddMonomial.of(1, 3), EVEN)
        ]
        assert ctx.reduce(difference).is_zero

    def test_printed_221_witness(self, field):
        ctx = cached_context((2, 2, 1))
        A = BundleAutomorphism.from_rows(K221, MIXED_221_WITNESS.matrix)
        source = field(MIXED_221_WITNESS.source)
        assert A.conjugate(source) == field(
            "x^-1 xi1*xi2 d/dx + 2*x^-1 xi1*xi3 d/dx + 2/3 xi2*xi3 d/dx"
            f" + 4/3*x^-1 {TRIPLE} d/dxi1 - 1/2*x^-2 {TRIPLE} d/dxi3"
        )
        image = int_action(A, ctx.reduce(source), unvalidated=True)
        assert image == ctx.reduce(
            field(
                f"{S_PRIME_221[0]} + 4/3*x^-1 {TRIPLE} d/dxi1 + 4*x^-2 {TRIPLE} d/dxi2"
                f" - x^-2 {TRIPLE} d/dxi3"
            )
        )
        v1 = ctx.reduce(field(S_PRIME_221[0]))
        assert scalar_equivalent(v1, image) is None
        assert not orbit_witness_check(
            A, ctx.reduce(source), v1, up_to_scalar=True, unvalidated=True
        )


class TestClosedForm:
    @pytest.mark.parametrize("k", [K222, K221, K204, K333], ids=str)
    @given(data=st.data())
    @settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_matches_conjugation(self, k, data):
        A = data.draw(automorphisms(k))
        for v in generators():
            assert closed_form_action(A, v.terms[0]) == A.conjugate(v)

    def test_sum_of_terms(self, field):
        A = BundleAutomorphism.from_rows(K221, [[1, 1, 0], [0, 1, 0], ["x", "2", "3"]])
        v = field(S_PRIME_221[0]) + field(S_PRIME_221[1])
        assert closed_form_conjugate(A, v) == A.conjugate(v)

    def test_unsupported(self, field):
        A = BundleAutomorphism.identity(K221)
        with pytest.raises(UnsupportedShapeError):
            closed_form_action(A, field("xi1 d/dx").terms[0])
        with pytest.raises(UnsupportedShapeError):
            closed_form_action(
                BundleAutomorphism.identity(GradingVector.of(1, 1)),
                field("xi1*xi2 d/dx", m=2).terms[0],
            )
