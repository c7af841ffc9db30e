"""Case table of the even-homogeneous non-split classification

Each case matches a presentation of the retract (a permutation of the
canonical, descending k) and lists its normal forms in that presentation.
The cases are pairwise disjoint on multisets of k.
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, List, Optional, Sequence, Tuple

from config.classification_configs.published_cocycles import (
    QUADRIC_COCYCLE,
    S_DOUBLE_PRIME_222,
    S_DOUBLE_PRIME_333,
    S_PRIME_221,
    S_PRIME_223,
    TRIPLE,
    PublishedCocycles,
    expression,
)

Presentation = Tuple[int, ...]

S = "s"
S_PRIME = "s-prime"
S_DOUBLE_PRIME = "s-double-prime"


@dataclass(frozen=True)
class NormalForm:
    label: str
    expression: str
    algebras: Tuple[str, ...]


@dataclass(frozen=True)
class OrbitWitness:
    """A printed identity Int A (source) = target used in an orbit argument"""

    description: str
    matrix: Tuple[Tuple[str, ...], ...]
    source: str
    target: str
    up_to_scalar: bool = False


@dataclass(frozen=True)
class ClassificationCase:
    label: str
    title: str
    m: int
    matches: Callable[[Presentation], bool]
    normal_forms: Callable[[Presentation], List[NormalForm]]
    witnesses: Tuple[OrbitWitness, ...] = field(default=())


def _multiset(k: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted(k))


EXCLUDED_FROM_PAIR_FAMILY = {
    _multiset(k) for k in ((-2, 0, 4), (2, 2, 1), (2, 2, 3), (2, 2, 2))
}


def _with_prime(p: Presentation, algebras: Tuple[str, ...]) -> Tuple[str, ...]:
    return algebras + (S_PRIME,) if p[0] == p[1] else algebras


def _pair_family(p: Presentation) -> List[NormalForm]:
    return [NormalForm("v", PublishedCocycles.pair_cocycle(p, 1, 2), _with_prime(p, (S,)))]


def _trivector_family(p: Presentation) -> List[NormalForm]:
    return [NormalForm("v", PublishedCocycles.pair_trivector(1, 2), _with_prime(p, (S,)))]


def _three_minus_k_family(p: Presentation) -> List[NormalForm]:
    return [NormalForm("v", PublishedCocycles.three_minus_k_cocycle(), (S_PRIME,))]


def _five_minus_k_family(p: Presentation) -> List[NormalForm]:
    return [NormalForm("v", PublishedCocycles.five_minus_k_cocycle(p[0]), (S_PRIME,))]


def _fixed(*forms: NormalForm) -> Callable[[Presentation], List[NormalForm]]:
    return lambda p: list(forms)


MINUS_X_WITNESS = OrbitWitness(
    description="A v1 A^-1 = v1 + v2 for the matrix with a12 = -x",
    matrix=(("1", "-x", "0"), ("0", "1", "0"), ("0", "0", "1")),
    source=f"x^-1 xi2*xi3 d/dx - x^-2 {TRIPLE} d/dxi1",
    target=f"x^-1 xi2*xi3 d/dx - x^-2 {TRIPLE} d/dxi1 + x^-1 {TRIPLE} d/dxi2",
)

MIXED_221_WITNESS = OrbitWitness(
    description="A (v1 + v2) A^-1 = v1 for the printed (2,2,1) matrix",
    matrix=(("1", "0", "0"), ("0", "1", "1"), ("-2/3*x", "2", "1")),
    source=f"{S_PRIME_221[0]} + {S_PRIME_221[1]}",
    target=S_PRIME_221[0],
)


class ClassificationTable:
    """Ordered case list; ``match`` finds the case and the presentation"""

    CASES: Tuple[ClassificationCase, ...] = (
        ClassificationCase(
            label="1a",
            title="(2,2,1)",
            m=3,
            matches=lambda p: p == (2, 2, 1),
            normal_forms=_fixed(
                NormalForm("v1", S_PRIME_221[0], (S, S_PRIME)),
                NormalForm("v2", S_PRIME_221[1], (S_PRIME,)),
            ),
            witnesses=(MIXED_221_WITNESS,),
        ),
        ClassificationCase(
            label="1b",
            title="(2,2,3)",
            m=3,
            matches=lambda p: p == (2, 2, 3),
            normal_forms=_fixed(
                NormalForm("v1", S_PRIME_223[0], (S, S_PRIME)),
                NormalForm("v2", S_PRIME_223[1], (S_PRIME,)),
            ),
        ),
        ClassificationCase(
            label="1c",
            title="(2,2,2)",
            m=3,
            matches=lambda p: p == (2, 2, 2),
            normal_forms=_fixed(
                NormalForm(
                    "v1",
                    expression([(1, -1, "xi1*xi2 d/dx"), (1, -2, f"{TRIPLE} d/dxi3")]),
                    (S, S_PRIME),
                ),
                NormalForm("v2", S_DOUBLE_PRIME_222, (S_DOUBLE_PRIME,)),
            ),
        ),
        ClassificationCase(
            label="1d",
            title="(-2,0,4)",
            m=3,
            matches=lambda p: p == (-2, 0, 4),
            normal_forms=_fixed(
                NormalForm("v2", f"x^-1 {TRIPLE} d/dxi2", (S,)),
                NormalForm("v1", MINUS_X_WITNESS.source, (S,)),
            ),
            witnesses=(MINUS_X_WITNESS,),
        ),
        ClassificationCase(
            label="2a",
            title="(k,4-k,k3)",
            m=3,
            matches=lambda p: p[0] + p[1] == 4
            and _multiset(p) not in EXCLUDED_FROM_PAIR_FAMILY,
            normal_forms=_pair_family,
        ),
        ClassificationCase(
            label="2b",
            title="(k,2-k,0)",
            m=3,
            matches=lambda p: p[0] + p[1] == 2
            and p[2] == 0
            and _multiset(p) != _multiset((-2, 0, 4)),
            normal_forms=_trivector_family,
        ),
        ClassificationCase(
            label="2c",
            title="(k,k,3-k)",
            m=3,
            matches=lambda p: p[0] == p[1] and p[2] == 3 - p[0] and p[0] != 2,
            normal_forms=_three_minus_k_family,
        ),
        ClassificationCase(
            label="2d(k,k,5-k)",
            title="(k,k,5-k)",
            m=3,
            matches=lambda p: p[0] == p[1] and p[2] == 5 - p[0] and p[0] != 2,
            normal_forms=_five_minus_k_family,
        ),
        ClassificationCase(
            label="2d(3,3,3)",
            title="(3,3,3)",
            m=3,
            matches=lambda p: p == (3, 3, 3),
            normal_forms=_fixed(NormalForm("v", S_DOUBLE_PRIME_333, (S_DOUBLE_PRIME,))),
        ),
        ClassificationCase(
            label="1|2",
            title="(k,4-k)",
            m=2,
            matches=lambda p: p[0] + p[1] == 4,
            normal_forms=lambda p: [
                NormalForm("v", QUADRIC_COCYCLE, _with_prime(p, (S,)))
            ],
        ),
    )

    @staticmethod
    def presentations(canonical: Sequence[int]) -> List[Tuple[Presentation, Tuple[int, ...]]]:
        """Distinct reorderings with their 1-based permutation, identity first"""
        seen = set()
        found = []
        for order in permutations(range(len(canonical))):
            presentation = tuple(canonical[i] for i in order)
            if presentation in seen:
                continue
            seen.add(presentation)
            found.append((presentation, tuple(i + 1 for i in order)))
        return found

    @classmethod
    def match(
        cls, canonical: Sequence[int]
    ) -> Optional[Tuple[ClassificationCase, Presentation, Tuple[int, ...]]]:
        m = len(canonical)
        for case in cls.CASES:
            if case.m != m:
                continue
            for presentation, permutation in cls.presentations(canonical):
                if case.matches(presentation):
                    return case, presentation, permutation
        return None

    @classmethod
    def matching_cases(cls, canonical: Sequence[int]) -> List[str]:
        """Labels of every case some presentation of ``canonical`` matches"""
        m = len(canonical)
        return [
            case.label
            for case in cls.CASES
            if case.m == m
            and any(case.matches(p) for p, _ in cls.presentations(canonical))
        ]

    @classmethod
    def get_case(cls, label: str) -> ClassificationCase:
        for case in cls.CASES:
            if case.label == label:
                return case
        raise KeyError(label)
