"""Invariant cocycles as printed and the closed-form invariant dimensions

Expressions use the field grammar on chart U0. Odd products are written in
the order they are printed (``xi1*xi3*xi2`` carries its permutation sign).
"""

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from algebra.rational import format_rational

TRIPLE = "xi1*xi2*xi3"

# (1,2,2)-type normal forms of the s-prime family
S_PRIME_221 = (
    f"x^-1 xi1*xi2 d/dx + 1/2*x^-2 {TRIPLE} d/dxi3",
    f"x^-2 {TRIPLE} d/dxi2 - x^-1 {TRIPLE} d/dxi1",
)
S_PRIME_223 = (
    f"x^-1 xi1*xi2 d/dx + 3/2*x^-2 {TRIPLE} d/dxi3",
    f"x^-1 xi2*xi3 d/dx + x^-2 xi1*xi3 d/dx + 2/3*x^-2 {TRIPLE} d/dxi1"
    f" - 4/3*x^-3 {TRIPLE} d/dxi2",
)
S_DOUBLE_PRIME_222 = (
    f"x^-3 {TRIPLE} d/dxi3 - 1/2*x^-2 {TRIPLE} d/dxi2 + 1/2*x^-1 {TRIPLE} d/dxi1"
)
S_DOUBLE_PRIME_333 = (
    "x^-3 xi1*xi2 d/dx + 1/2*x^-2 xi1*xi3 d/dx + 1/2*x^-1 xi2*xi3 d/dx"
    f" + 3/8*x^-2 {TRIPLE} d/dxi1 - 3/4*x^-3 {TRIPLE} d/dxi2 + 9/4*x^-4 {TRIPLE} d/dxi3"
)

# Printed normal form for the (2,2,2) s-type class; not s-invariant
PRINTED_222_S_COCYCLE = f"x^-1 xi1*xi2 d/dx + 1/2*x^-2 {TRIPLE} d/dxi3"

QUADRIC_COCYCLE = "x^-1 xi1*xi2 d/dx"

Number = Union[int, Fraction]


def expression(terms: Sequence[Tuple[Number, int, str]]) -> str:
    """Join (coefficient, exponent, 'odd deriv') triples, skipping zeros"""
    out: List[str] = []
    for coefficient, exponent, body in terms:
        coefficient = Fraction(coefficient)
        if coefficient == 0:
            continue
        magnitude = abs(coefficient)
        power = f"x^{exponent}" if exponent else ""
        if magnitude == 1:
            text = " ".join(part for part in (power, body) if part)
        else:
            head = f"{format_rational(magnitude)}*{power}" if power else format_rational(magnitude)
            text = f"{head} {body}"
        if not out:
            out.append(text if coefficient > 0 else f"-{text}")
        else:
            out.append(f" + {text}" if coefficient > 0 else f" - {text}")
    return "".join(out) or "0"


class PublishedCocycles:
    """Printed invariant cocycles keyed by algebra ("s", "s-prime", "s-double-prime")"""

    S_DOUBLE_PRIME_COCYCLES: Dict[Tuple[int, ...], str] = {
        (2, 2, 2): S_DOUBLE_PRIME_222,
        (3, 3, 3): S_DOUBLE_PRIME_333,
    }

    @staticmethod
    def pair_cocycle(k: Sequence[int], i: int, j: int) -> str:
        """Invariant of the pair (i, j) when k_i + k_j = 4"""
        l = 6 - i - j
        return expression(
            [
                (1, -1, f"xi{i}*xi{j} d/dx"),
                (Fraction(k[l - 1], 2), -2, f"xi{i}*xi{j}*xi{l} d/dxi{l}"),
            ]
        )

    @staticmethod
    def pair_trivector(i: int, j: int) -> str:
        """Invariant of the pair (i, j) when k_i + k_j = 2 and k_l = 0"""
        l = 6 - i - j
        return f"x^-1 xi{i}*xi{j}*xi{l} d/dxi{l}"

    @staticmethod
    def three_minus_k_cocycle() -> str:
        return S_PRIME_221[1]

    @staticmethod
    def five_minus_k_cocycle(k1: int) -> str:
        return expression(
            [
                (1, -1, "xi2*xi3 d/dx"),
                (1, -2, "xi1*xi3 d/dx"),
                (Fraction(k1, 3), -2, f"{TRIPLE} d/dxi1"),
                (Fraction(-2 * k1, 3), -3, f"{TRIPLE} d/dxi2"),
            ]
        )

    @classmethod
    def for_algebra(cls, kind: str, k: Sequence[int]) -> List[str]:
        k = tuple(k)
        m = len(k)
        if m == 2:
            if kind in ("s", "s-prime") and k[0] + k[1] == 4:
                return [QUADRIC_COCYCLE]
            return []
        if m != 3:
            return []

        if kind == "s":
            found = []
            for i, j in ((1, 2), (1, 3), (2, 3)):
                weight = k[i - 1] + k[j - 1]
                if weight == 4:
                    found.append(cls.pair_cocycle(k, i, j))
                elif weight == 2 and k[6 - i - j - 1] == 0:
                    found.append(cls.pair_trivector(i, j))
            return found

        if kind == "s-prime":
            a, c = k[0], k[2]
            if k[0] != k[1]:
                return []
            if k == (2, 2, 1):
                return list(S_PRIME_221)
            if k == (2, 2, 3):
                return list(S_PRIME_223)
            found = []
            if a == 2:
                found.append(cls.pair_cocycle(k, 1, 2))
            if a == 1 and c == 0:
                found.append(cls.pair_trivector(1, 2))
            if a + c == 3 and a != 2:
                found.append(cls.three_minus_k_cocycle())
            if a + c == 5 and a != 2:
                found.append(cls.five_minus_k_cocycle(a))
            return found

        if kind == "s-double-prime":
            return [cls.S_DOUBLE_PRIME_COCYCLES[k]] if k in cls.S_DOUBLE_PRIME_COCYCLES else []
        return []

    @classmethod
    def expected_dimension(cls, kind: str, k: Sequence[int]) -> int:
        """Closed-form dimension of the invariant subspace"""
        k = tuple(k)
        m = len(k)
        if m == 1:
            return 0
        if m == 2:
            if kind == "s-prime" and k[0] != k[1]:
                return 0
            return 1 if kind in ("s", "s-prime") and k[0] + k[1] == 4 else 0
        if kind == "s":
            return sum(
                1
                for i, j in ((1, 2), (1, 3), (2, 3))
                if k[i - 1] + k[j - 1] == 4
                or (k[i - 1] + k[j - 1] == 2 and k[6 - i - j - 1] == 0)
            )
        if kind == "s-prime":
            a, c = k[0], k[2]
            if k[0] != k[1]:
                return 0
            return int(a == 2) + int(a == 1 and c == 0) + int(a + c in (3, 5))
        if kind == "s-double-prime":
            return 1 if k in cls.S_DOUBLE_PRIME_COCYCLES else 0
        return 0
