"""Precondition checks shared by the constructions and the CLI"""

from typing import Dict, List, Sequence

from tools.error_handling import PreconditionError

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _k(index: int) -> str:
    return f"k{str(index).translate(_SUBSCRIPTS)}"


class GradingValidator:
    """Validates grading vectors against what each construction needs"""

    # Odd dimension range and the components that must coincide, per algebra
    ALGEBRA_REQUIREMENTS: Dict[str, Dict] = {
        "s": {"min_m": 1, "max_m": None, "equal": ()},
        "s-prime": {"min_m": 2, "max_m": None, "equal": (1, 2)},
        "s-double-prime": {"min_m": 3, "max_m": 3, "equal": (1, 2, 3)},
    }

    CLASSIFIABLE_DIMENSIONS = (1, 2, 3)

    @classmethod
    def get_missing_requirements(cls, kind: str, k: Sequence[int]) -> List[str]:
        """Human-readable list of violated conditions; empty when constructible"""
        requirement = cls.ALGEBRA_REQUIREMENTS[kind]
        m = len(k)
        missing = []
        if m < requirement["min_m"]:
            missing.append(f"m ≥ {requirement['min_m']}")
        if requirement["max_m"] is not None and m > requirement["max_m"]:
            missing.append(f"m = {requirement['max_m']}")
        equal = requirement["equal"]
        if equal and not missing:
            if len({k[i - 1] for i in equal}) != 1:
                missing.append("=".join(_k(i) for i in equal))
        return missing

    @classmethod
    def is_constructible(cls, kind: str, k: Sequence[int]) -> bool:
        return not cls.get_missing_requirements(kind, k)

    @classmethod
    def require_algebra(cls, kind: str, k: Sequence[int]) -> None:
        missing = cls.get_missing_requirements(kind, k)
        if missing:
            raise PreconditionError(
                f"algebra {kind} requires {' and '.join(missing)} (got k={tuple(k)})"
            )

    @classmethod
    def require_classifiable(cls, m: int) -> None:
        if m not in cls.CLASSIFIABLE_DIMENSIONS:
            raise PreconditionError(f"classification requires m in 1..3, got m={m}")
