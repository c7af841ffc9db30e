from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.matrix import RationalMatrix, quotient_coordinates
from algebra.sparse import SparseEchelon
from tools.error_handling import PreconditionError

small_matrices = st.integers(min_value=1, max_value=5).flatmap(
    lambda cols: st.lists(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=cols, max_size=cols),
        min_size=1,
        max_size=5,
    )
)


def _columns(height: int, low: int, high: int):
    column = st.lists(
        st.integers(min_value=-2, max_value=2), min_size=height, max_size=height
    ).map(tuple)
    return st.lists(column, min_size=low, max_size=high)


quotient_problems = st.integers(min_value=1, max_value=4).flatmap(
    lambda height: st.tuples(
        _columns(height, 1, 3),
        _columns(height, 0, 2),
        st.lists(
            st.integers(min_value=-3, max_value=3), min_size=height, max_size=height
        ).map(tuple),
    )
)


class TestRationalMatrix:
    def test_rank_and_kernel(self):
        A = RationalMatrix.from_rows([[1, 2], [2, 4]])
        assert A.rank() == 1
        assert A.kernel() == [(Fraction(-2), Fraction(1))]

    def test_inverse(self):
        A = RationalMatrix.from_rows([[2, 1], [1, 1]])
        assert A.inverse() == RationalMatrix.from_rows([[1, -1], [-1, 2]])
        assert A @ A.inverse() == RationalMatrix.identity(2)

    def test_singular_inverse(self):
        with pytest.raises(PreconditionError, match="not invertible"):
            RationalMatrix.from_rows([[1, 2], [2, 4]]).inverse()

    def test_solve(self):
        A = RationalMatrix.from_rows([[1, 1], [1, 1]])
        assert A.solve([1, 2]) is None
        assert A.solve([2, 2]) == (Fraction(2), Fraction(0))

    def test_transpose_and_columns(self):
        A = RationalMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert A.transpose() == RationalMatrix.from_columns([(1, 2, 3), (4, 5, 6)])
        assert A.column(1) == (Fraction(2), Fraction(5))

    def test_quotient_coordinates(self):
        # target = 2*v + s, with s in the subspace
        assert quotient_coordinates([(1, 0, 0)], [(0, 1, 1)], (2, 1, 1)) == [2]
        assert quotient_coordinates([(1, 0, 0)], [(0, 1, 1)], (0, 1, 0)) is None

    def test_quotient_coordinates_of_zero(self):
        assert quotient_coordinates([(1, 0, 0), (0, 0, 1)], [(0, 1, 1)], (0, 0, 0)) == [0, 0]

    def test_quotient_absorbs_vectors_inside_the_subspace(self):
        assert quotient_coordinates([(0, 1, 1)], [(0, 1, 1)], (0, 2, 2)) == [0]
        assert quotient_coordinates([(0, 2, 2), (1, 0, 0)], [(0, 1, 1)], (3, 1, 1)) == [0, 3]

    @given(quotient_problems)
    @settings(max_examples=80)
    def test_quotient_residual_lies_in_the_subspace(self, problem):
        vecs, subspace, target = problem
        coords = quotient_coordinates(vecs, subspace, target)
        if coords is None:
            spanned = RationalMatrix.from_columns(vecs + subspace, height=len(target))
            assert spanned.solve(target) is None
            return
        assert len(coords) == len(vecs)
        residual = [
            t - sum(c * v[row] for c, v in zip(coords, vecs)) for row, t in enumerate(target)
        ]
        if subspace:
            span = RationalMatrix.from_columns(subspace, height=len(target))
            assert span.solve(residual) is not None
        else:
            assert all(value == 0 for value in residual)

    @given(small_matrices)
    def test_reduction_reconstructs_input(self, rows):
        A = RationalMatrix.from_rows(rows)
        assert A.row_reduce().reconstruct() == A

    @given(small_matrices)
    @settings(max_examples=60)
    def test_rank_matches_sympy(self, rows):
        assert RationalMatrix.from_rows(rows).rank() == sympy.Matrix(rows).rank()

    @given(small_matrices)
    def test_kernel_vectors_are_annihilated(self, rows):
        A = RationalMatrix.from_rows(rows)
        kernel = A.kernel()
        assert len(kernel) == A.cols - A.rank()
        for vector in kernel:
            assert all(value == 0 for value in A.apply(vector))


class TestSparseEchelon:
    def test_dependent_insert(self):
        echelon = SparseEchelon()
        assert echelon.insert({0: Fraction(1), 2: Fraction(1)}) == 0
        assert echelon.insert({2: Fraction(1)}) == 2
        assert echelon.insert({0: Fraction(3)}) is None
        assert echelon.rank == 2
        assert echelon.row(0) == {0: Fraction(1)}

    def test_reduce_residual(self):
        echelon = SparseEchelon()
        echelon.insert({1: Fraction(1), 3: Fraction(2)})
        assert echelon.reduce({1: Fraction(1), 4: Fraction(1)}) == {
            3: Fraction(-2),
            4: Fraction(1),
        }
        assert echelon.contains({1: Fraction(2), 3: Fraction(4)})

    @given(small_matrices)
    def test_rank_matches_dense(self, rows):
        echelon = SparseEchelon()
        for row in rows:
            echelon.insert({col: Fraction(v) for col, v in enumerate(row) if v})
        assert echelon.rank == RationalMatrix.from_rows(rows).rank()
