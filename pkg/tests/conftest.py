"""Shared fixtures"""

from functools import lru_cache
from pathlib import Path

import pytest

from cohomology.context import H1Context, build_context
from geometry.field_parser import parse_field
from geometry.superfield import Chart, GradingVector, SuperField

GOLDEN_DIR = Path(__file__).parent / "golden"


@lru_cache(maxsize=None)
def cached_context(k: tuple, q: int = 2) -> H1Context:
    return build_context(GradingVector(k), q)


@pytest.fixture
def context():
    """context((2,2,1)) -> the degree-2 H1 context, built once per session"""
    return cached_context


@pytest.fixture
def field():
    def parse(text: str, m: int = 3, chart: Chart = Chart.U0) -> SuperField:
        return parse_field(text, chart, m)

    return parse


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR
