"""Hypothesis strategies for fields and bundle automorphisms"""

from itertools import combinations

from hypothesis import assume
from hypothesis import strategies as st

from algebra.laurent import LaurentPoly
from cohomology.automorphism import BundleAutomorphism
from geometry.superfield import (
    EVEN,
    Chart,
    GradingVector,
    OddMonomial,
    SuperField,
    SuperFunction,
    Target,
)


def field_shapes(m: int, parity: int):
    return [(odd, target) for odd, target, degree in _shapes(m) if degree % 2 == parity]


def _shapes(m: int):
    for size in range(m + 1):
        for indices in combinations(range(1, m + 1), size):
            odd = OddMonomial(indices)
            for target in [EVEN] + [Target(l) for l in range(1, m + 1)]:
                yield odd, target, size if target.is_even else size - 1


def _fields(m: int, chart: Chart, shapes):
    monomial = st.tuples(
        st.sampled_from(shapes),
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
    )
    return st.lists(monomial, max_size=4).map(
        lambda terms: SuperField.from_items(
            m,
            chart,
            [(odd, target, LaurentPoly.monomial(n, c)) for (odd, target), n, c in terms],
        )
    )


def homogeneous_fields(m: int = 3, parity: int = 0, chart: Chart = Chart.U0):
    """Fields of one parity with small Laurent coefficients"""
    return _fields(m, chart, field_shapes(m, parity))


def graded_fields(degree: int, m: int = 3, chart: Chart = Chart.U0):
    shapes = [(odd, target) for odd, target, d in _shapes(m) if d == degree]
    return _fields(m, chart, shapes)


def any_parity_fields(m: int = 3, chart: Chart = Chart.U0):
    return st.sampled_from([0, 1]).flatmap(lambda p: homogeneous_fields(m, p, chart))


def homogeneous_functions(m: int = 3, parity: int = 0, chart: Chart = Chart.U0):
    """Functions whose odd monomials all have the given parity"""
    odds = [
        OddMonomial(indices)
        for size in range(parity, m + 1, 2)
        for indices in combinations(range(1, m + 1), size)
    ]
    term = st.tuples(
        st.sampled_from(odds),
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
    )

    def build(terms):
        total = SuperFunction.zero(m, chart)
        for odd, n, c in terms:
            total = total + SuperFunction.laurent(m, chart, LaurentPoly.monomial(n, c), odd)
        return total

    return st.lists(term, max_size=3).map(build)


def any_parity_functions(m: int = 3, chart: Chart = Chart.U0):
    return st.sampled_from([0, 1]).flatmap(lambda p: homogeneous_functions(m, p, chart))


def _polynomials(degree: int):
    return st.lists(
        st.integers(min_value=-3, max_value=3), min_size=degree + 1, max_size=degree + 1
    ).map(lambda cs: LaurentPoly.from_mapping(dict(enumerate(cs))))


@st.composite
def automorphisms(draw, k: GradingVector, max_degree: int = 2):
    """Valid bundle automorphisms for ``k`` with entries of bounded degree"""
    rows = []
    for i in range(1, k.m + 1):
        row = []
        for j in range(1, k.m + 1):
            allowed = k[j] - k[i]
            row.append(
                LaurentPoly.zero() if allowed < 0 else draw(_polynomials(min(allowed, max_degree)))
            )
        rows.append(row)
    A = BundleAutomorphism.from_rows(k, rows)
    assume(A.validate().valid)
    return A
