"""Transition functions of the non-split supermanifold attached to a cocycle

The split atlas glues by y' = x'^-1 and eta'_i = x'^-k_i xi'_i. A degree-2
cocycle v deforms it to (id + v) applied to those functions; for m <= 3 the
higher terms of exp(v) vanish.
"""

from dataclasses import dataclass
from typing import List, Tuple

from algebra.laurent import LaurentPoly
from geometry.field_parser import render_superfunction
from geometry.operations import apply_derivation
from geometry.superfield import Chart, GradingVector, OddMonomial, SuperField, SuperFunction
from tools.error_handling import ChartMismatchError, DegreeError, DimensionMismatchError


@dataclass(frozen=True)
class TransitionFunctions:
    k: GradingVector
    y_prime: SuperFunction
    eta_primes: Tuple[SuperFunction, ...]

    def body(self) -> Tuple[LaurentPoly, ...]:
        """Odd-free parts: the y' body and the xi'_i coefficients of eta'_i"""
        return (self.y_prime.body,) + tuple(
            eta.coefficient(OddMonomial.of(i)) for i, eta in enumerate(self.eta_primes, start=1)
        )


def split_transition(k: GradingVector) -> Tuple[SuperFunction, List[SuperFunction]]:
    y = SuperFunction.laurent(k.m, Chart.U0, LaurentPoly.monomial(-1))
    etas = [
        SuperFunction.laurent(k.m, Chart.U0, LaurentPoly.monomial(-k[i]), OddMonomial.of(i))
        for i in range(1, k.m + 1)
    ]
    return y, etas


def _require_cocycle(k: GradingVector, v: SuperField) -> None:
    if v.chart != Chart.U0:
        raise ChartMismatchError("cocycle must be written on U0")
    if v.m != k.m:
        raise DimensionMismatchError(f"cocycle has m={v.m}, grading vector has {k.m} entries")
    if not v.is_zero and v.degree != 2:
        raise DegreeError(f"cocycle must be homogeneous of degree 2, has degrees {v.degrees()}")


def emit_transition(k: GradingVector, v: SuperField) -> TransitionFunctions:
    _require_cocycle(k, v)
    y, etas = split_transition(k)
    return TransitionFunctions(
        k=k,
        y_prime=y + apply_derivation(v, y),
        eta_primes=tuple(eta + apply_derivation(v, eta) for eta in etas),
    )


def recover_cocycle(k: GradingVector, transitions: TransitionFunctions) -> SuperField:
    """Read v(x) and v(xi_i) back from the deformed transition functions"""
    y, etas = split_transition(k)
    x_value = (transitions.y_prime - y).scale(LaurentPoly.monomial(2, -1))
    odd_values = []
    for i, (eta, eta_prime) in enumerate(zip(etas, transitions.eta_primes), start=1):
        correction = (x_value * SuperFunction.odd_coordinate(k.m, i)).scale(
            LaurentPoly.monomial(-k[i] - 1, k[i])
        )
        odd_values.append(
            ((eta_prime - eta) + correction).scale(LaurentPoly.monomial(k[i]))
        )
    return SuperField.from_values(x_value, odd_values)


def render_transition(transitions: TransitionFunctions) -> List[str]:
    lines = [f"y' = {render_superfunction(transitions.y_prime, primed=True)}"]
    for i, eta in enumerate(transitions.eta_primes, start=1):
        lines.append(f"eta'{i} = {render_superfunction(eta, primed=True)}")
    return lines
