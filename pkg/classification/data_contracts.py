"""Data contracts for command inputs and JSON outputs"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, model_validator

from cohomology.automorphism import BundleAutomorphism
from geometry.superfield import GradingVector


# Automorphism file
class AutomorphismFile(BaseModel):
    """JSON automorphism: grading vector and Laurent-string entries"""

    k: List[int] = Field(description="Line bundle degrees k_1..k_m")
    entries: List[List[str]] = Field(description="Rows of a_ij as Laurent strings")

    @model_validator(mode="after")
    def check_shape(self) -> "AutomorphismFile":
        m = len(self.k)
        if m == 0:
            raise ValueError("k must have at least one entry")
        if len(self.entries) != m or any(len(row) != m for row in self.entries):
            raise ValueError(f"entries must form a {m}x{m} grid")
        return self

    def to_automorphism(self) -> BundleAutomorphism:
        return BundleAutomorphism.from_rows(GradingVector(tuple(self.k)), self.entries)


def load_automorphism(path: Union[str, Path]) -> BundleAutomorphism:
    """Read an automorphism file; raises FileNotFoundError or pydantic.ValidationError"""
    text = Path(path).read_text(encoding="utf-8")
    return AutomorphismFile.model_validate_json(text).to_automorphism()


# Command outputs
class H1Output(BaseModel):
    k: List[int]
    degree: int
    dimension: int
    closed_form_dimension: Optional[int] = Field(
        description="Closed-form count where one is known"
    )
    window: List[int]
    basis: List[str]


class InvariantsOutput(BaseModel):
    k: List[int]
    algebra: str
    dimension: int
    expected_dimension: int
    basis: List[str]


class ActOutput(BaseModel):
    k: List[int]
    valid: bool
    violations: List[str]
    coordinates: List[str] = Field(description="Image class in the H1 basis")
    representative: str


class ClassOutput(BaseModel):
    label: str
    cocycle: str = Field(description="Normal form in the presentation's coordinates")
    algebras: List[str]
    certificate: List[str] = Field(description="Algebras that annihilate the class")
    coordinates: List[str]


class RecordOutput(BaseModel):
    retract: List[int]
    presentation: List[int]
    permutation: List[int]
    case: Optional[str]
    algebra_kinds: List[str]
    count: int
    classes: List[ClassOutput]
    invariant_dimensions: Dict[str, int]
    status: str
    verification: Dict[str, Any]


class TransitionOutput(BaseModel):
    k: List[int]
    y_prime: str
    eta_primes: List[str]


def dump_json(model: Union[BaseModel, List[BaseModel]]) -> str:
    if isinstance(model, list):
        return json.dumps([item.model_dump(mode="json") for item in model], indent=2)
    return model.model_dump_json(indent=2)
