"""The sl2 subalgebras s, s' and s'' of global degree-0 fields and their invariants

Each triple is written on U0: e is global on U0, f is given on U1 and
transported, h = [e, f].
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.matrix import RationalMatrix
from cohomology.context import CohClass, H1Context, build_context
from config.classification_configs.published_cocycles import PublishedCocycles
from geometry.field_parser import parse_field
from geometry.operations import change_chart, super_bracket
from geometry.superfield import EVEN, Chart, GradingVector, OddMonomial, SuperField, Target
from tools.error_handling import ContextMismatchError
from tools.validators import GradingValidator

logger = logging.getLogger(__name__)


class AlgebraKind(str, Enum):
    S = "s"
    S_PRIME = "s-prime"
    S_DOUBLE_PRIME = "s-double-prime"


GENERATORS = ("e", "f", "h")

# Nilpotent parts: (source, target, weight) for source * d/d(target)
_E_NILPOTENT: Dict[AlgebraKind, Tuple[Tuple[int, int, int], ...]] = {
    AlgebraKind.S: (),
    AlgebraKind.S_PRIME: ((2, 1, 1),),
    AlgebraKind.S_DOUBLE_PRIME: ((2, 1, 1), (3, 2, 1)),
}
_F_NILPOTENT: Dict[AlgebraKind, Tuple[Tuple[int, int, int], ...]] = {
    AlgebraKind.S: (),
    AlgebraKind.S_PRIME: ((1, 2, 1),),
    AlgebraKind.S_DOUBLE_PRIME: ((1, 2, 2), (2, 3, 2)),
}


@dataclass(frozen=True)
class Sl2Triple:
    kind: AlgebraKind
    e: SuperField
    f: SuperField
    h: SuperField
    k: GradingVector

    def generator(self, name: str) -> SuperField:
        if name not in GENERATORS:
            raise ValueError(f"unknown generator {name!r}, expected one of {GENERATORS}")
        return getattr(self, name)

    def relations_hold(self) -> bool:
        """[e,f] = h, [h,e] = 2e, [h,f] = -2f"""
        return (
            super_bracket(self.e, self.f) == self.h
            and super_bracket(self.h, self.e) == self.e.scale(2)
            and super_bracket(self.h, self.f) == self.f.scale(-2)
        )


def _vector_field(
    m: int, chart: Chart, pieces: Sequence[Tuple[int, int, int]]
) -> SuperField:
    items = [SuperField.monomial(m, 0, OddMonomial(), EVEN, chart=chart)]
    for source, target, weight in pieces:
        items.append(
            SuperField.monomial(m, 0, OddMonomial.of(source), Target(target), weight, chart)
        )
    result = SuperField.zero(m, chart)
    for item in items:
        result = result + item
    return result


def make_algebra(kind: Union[AlgebraKind, str], k: GradingVector) -> Sl2Triple:
    kind = AlgebraKind(kind)
    GradingValidator.require_algebra(kind.value, k.k)
    return _make_algebra(kind, k)


@lru_cache(maxsize=256)
def _make_algebra(kind: AlgebraKind, k: GradingVector) -> Sl2Triple:
    e = _vector_field(k.m, Chart.U0, _E_NILPOTENT[kind])
    f = change_chart(_vector_field(k.m, Chart.U1, _F_NILPOTENT[kind]), k)
    h = super_bracket(e, f)
    logger.debug("built %s triple for k=%s", kind.value, k)
    return Sl2Triple(kind=kind, e=e, f=f, h=h, k=k)


def _require_matching(triple: Sl2Triple, ctx: H1Context) -> None:
    if triple.k != ctx.k or ctx.q != 2:
        raise ContextMismatchError(
            f"algebra for k={triple.k} used on context k={ctx.k}, q={ctx.q}"
        )


def ad_matrix(triple: Sl2Triple, generator: str, ctx: H1Context) -> RationalMatrix:
    """Matrix of ad(generator) on the basis of H^1; columns are images"""
    _require_matching(triple, ctx)
    g = triple.generator(generator)
    columns = [ctx.reduce(super_bracket(g, b)).coords for b in ctx.basis]
    return RationalMatrix.from_columns(columns, height=ctx.dimension)


def annihilates(triple: Sl2Triple, z: CohClass) -> bool:
    _require_matching(triple, z.context)
    return all(
        z.context.reduce(super_bracket(g, z.representative)).is_zero
        for g in (triple.e, triple.h, triple.f)
    )


def published_invariants(kind: Union[AlgebraKind, str], k: GradingVector) -> List[SuperField]:
    kind = AlgebraKind(kind)
    return [
        parse_field(text, Chart.U0, k.m)
        for text in PublishedCocycles.for_algebra(kind.value, k.k)
    ]


def expected_dimension(kind: Union[AlgebraKind, str], k: GradingVector) -> int:
    return PublishedCocycles.expected_dimension(AlgebraKind(kind).value, k.k)


def invariant_subspace(
    kind: Union[AlgebraKind, str],
    k: GradingVector,
    ctx: Optional[H1Context] = None,
) -> List[CohClass]:
    """Basis of the classes killed by e, f and h

    The kernel of ad h is taken first (h acts diagonally on monomials), then
    e and f are applied to that kernel only. When the printed cocycles span
    the result they are returned instead of the raw kernel basis.
    """
    triple = make_algebra(kind, k)
    ctx = ctx if ctx is not None else build_context(k, 2)
    _require_matching(triple, ctx)
    if ctx.dimension == 0:
        return []

    weight_zero = ad_matrix(triple, "h", ctx).kernel()
    if not weight_zero:
        return []
    candidates = [ctx.class_of(v) for v in weight_zero]

    stacked = []
    for z in candidates:
        e_image = ctx.reduce(super_bracket(triple.e, z.representative)).coords
        f_image = ctx.reduce(super_bracket(triple.f, z.representative)).coords
        stacked.append(tuple(e_image) + tuple(f_image))
    relations = RationalMatrix.from_columns(stacked, height=2 * ctx.dimension)
    invariants = [
        ctx.class_of(RationalMatrix.from_columns(weight_zero, height=ctx.dimension).apply(c))
        for c in relations.kernel()
    ]

    published = _published_basis(triple, ctx, invariants)
    if published is not None:
        return published
    return invariants


def _published_basis(
    triple: Sl2Triple, ctx: H1Context, invariants: List[CohClass]
) -> Optional[List[CohClass]]:
    fields = published_invariants(triple.kind, triple.k)
    if not fields or not invariants:
        return None
    classes = [ctx.reduce(v) for v in fields]
    if len(classes) != len(invariants):
        logger.warning(
            "%d printed cocycles for %s at k=%s, invariant space has dimension %d",
            len(classes),
            triple.kind.value,
            triple.k,
            len(invariants),
        )
        return None
    span = RationalMatrix.from_columns([z.coords for z in invariants], height=ctx.dimension)
    joined = RationalMatrix.from_columns(
        [z.coords for z in invariants] + [z.coords for z in classes], height=ctx.dimension
    )
    printed = RationalMatrix.from_columns([z.coords for z in classes], height=ctx.dimension)
    if joined.rank() != span.rank() or printed.rank() != len(classes):
        logger.warning(
            "printed cocycles for %s at k=%s are not a basis of the invariants",
            triple.kind.value,
            triple.k,
        )
        return None
    return classes


def constructible_kinds(k: GradingVector) -> List[AlgebraKind]:
    return [kind for kind in AlgebraKind if GradingValidator.is_constructible(kind.value, k.k)]


def homogeneity_certificate(k: GradingVector, z: CohClass) -> List[AlgebraKind]:
    """Constructible kinds whose whole triple annihilates [z]"""
    if z.context.k != k:
        raise ContextMismatchError(f"class for k={z.context.k} checked against k={k}")
    return [kind for kind in constructible_kinds(k) if annihilates(make_algebra(kind, k), z)]
