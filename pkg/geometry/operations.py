"""Derivation calculus: application, super bracket, chart transport, grading"""

from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from algebra.laurent import LaurentPoly
from geometry.superfield import (
    EVEN,
    Chart,
    GradingVector,
    OddMonomial,
    SuperField,
    SuperFunction,
    Target,
)
from tools.error_handling import ChartMismatchError, DimensionMismatchError


Monomial = Tuple[int, OddMonomial, Target, Fraction]


def _require_compatible(v: SuperField, chart: Chart, m: int) -> None:
    if v.chart != chart:
        raise ChartMismatchError(f"derivation on {v.chart} applied on {chart}")
    if v.m != m:
        raise DimensionMismatchError(f"odd dimensions {v.m} and {m}")


def apply_derivation(v: SuperField, f: SuperFunction) -> SuperFunction:
    """v(f) = sum over terms of coeff * xi^I * (d f / d target)"""
    _require_compatible(v, f.chart, f.m)
    result = SuperFunction.zero(f.m, f.chart)
    derivatives: Dict[int, SuperFunction] = {}
    for term in v.terms:
        index = term.target.index
        if index not in derivatives:
            derivatives[index] = f.partial_x() if index == 0 else f.partial_xi(index)
        derivative = derivatives[index]
        if derivative.is_zero:
            continue
        prefix = SuperFunction(f.m, f.chart, ((term.odd, term.coeff),))
        result = result + prefix * derivative
    return result


def super_bracket(v: SuperField, w: SuperField) -> SuperField:
    """[v, w] = v w - (-1)^{|v||w|} w v, split by parity when inputs are mixed"""
    _require_compatible(w, v.chart, v.m)
    m, chart = v.m, v.chart
    x_value = SuperFunction.zero(m, chart)
    odd_values = [SuperFunction.zero(m, chart) for _ in range(m)]
    for p, left in v.parity_parts().items():
        for r, right in w.parity_parts().items():
            sign = -1 if p * r % 2 else 1
            x_value = x_value + _commutator_on(
                left, right, left.value_on_x(), right.value_on_x(), sign
            )
            for index in range(1, m + 1):
                odd_values[index - 1] = odd_values[index - 1] + _commutator_on(
                    left, right, left.value_on_odd(index), right.value_on_odd(index), sign
                )
    return SuperField.from_values(x_value, odd_values)


def _commutator_on(
    left: SuperField,
    right: SuperField,
    left_value: SuperFunction,
    right_value: SuperFunction,
    sign: int,
) -> SuperFunction:
    forward = apply_derivation(left, right_value)
    backward = apply_derivation(right, left_value)
    return forward - backward if sign == 1 else forward + backward


def transport_monomial(
    exponent: int,
    odd: OddMonomial,
    target: Target,
    k: GradingVector,
    coefficient: Fraction = Fraction(1),
) -> List[Monomial]:
    """Express c * t^n * odd * d/d(target) in the other chart

    With t' = 1/t and odd'_i = t^{-k_i} odd_i the rule is the same in both
    directions: d/dodd_l -> t'^{k_l} d/dodd'_l and
    d/dt -> -t'^2 d/dt' - sum_s k_s t' odd'_s d/dodd'_s.
    """
    weight = k.weight(odd)
    if not target.is_even:
        return [(-exponent - weight + k[target.index], odd, target, coefficient)]
    images: List[Monomial] = [(2 - exponent - weight, odd, EVEN, -coefficient)]
    for s in range(1, k.m + 1):
        if k[s] == 0 or s in odd:
            continue
        sign, product = odd.multiply(OddMonomial.of(s))
        images.append((1 - exponent - weight, product, Target(s), -k[s] * sign * coefficient))
    return images


def change_chart(v: SuperField, k: GradingVector) -> SuperField:
    """The same derivation written in the other chart"""
    if v.m != k.m:
        raise DimensionMismatchError(f"field has m={v.m} but grading vector has {k.m} entries")
    items = []
    for exponent, odd, target, coefficient in v.monomials():
        for n, image_odd, image_target, c in transport_monomial(
            exponent, odd, target, k, coefficient
        ):
            items.append((image_odd, image_target, LaurentPoly.monomial(n, c)))
    return SuperField.from_items(v.m, v.chart.other, items)


def grading_decompose(v: SuperField) -> Dict[int, SuperField]:
    return {degree: v.restrict_degree(degree) for degree in v.degrees()}


class HolomorphicSplit(NamedTuple):
    u0_part: SuperField
    u1_part: SuperField
    obstruction: SuperField


def holomorphic_split(v: SuperField, k: GradingVector) -> HolomorphicSplit:
    """Greedy monomial split into U0-holomorphic, U1-holomorphic and the rest

    All three parts are written on U0; u1_part becomes holomorphic after
    change_chart.
    """
    if v.chart != Chart.U0:
        raise ChartMismatchError("holomorphic_split expects a field on U0")
    if v.m != k.m:
        raise DimensionMismatchError(f"field has m={v.m} but grading vector has {k.m} entries")
    buckets: Tuple[list, list, list] = ([], [], [])
    for exponent, odd, target, coefficient in v.monomials():
        item = (odd, target, LaurentPoly.monomial(exponent, coefficient))
        if exponent >= 0:
            buckets[0].append(item)
        elif all(n >= 0 for n, _, _, _ in transport_monomial(exponent, odd, target, k)):
            buckets[1].append(item)
        else:
            buckets[2].append(item)
    return HolomorphicSplit(
        *(SuperField.from_items(v.m, Chart.U0, bucket) for bucket in buckets)
    )
