"""Shared fixtures: the three workhorse curves and the golden-data directory."""
from __future__ import annotations

import pathlib
from fractions import Fraction

import pytest

from gcdheights import Curve, Point

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA_DIR


@pytest.fixture
def c37() -> Curve:
    """Rank-1 curve y^2 + y = x^3 - x; (0,0) generates, discriminant 37."""
    return Curve(0, 0, 1, -1, 0)


@pytest.fixture
def p37() -> Point:
    return Point(Fraction(0), Fraction(0))


@pytest.fixture
def c389() -> Curve:
    """Rank-2 curve y^2 + y = x^3 + x^2 - 2x; (0,0) and (1,0) are independent."""
    return Curve(0, 1, 1, -2, 0)


@pytest.fixture
def p389() -> Point:
    return Point(Fraction(0), Fraction(0))


@pytest.fixture
def q389() -> Point:
    return Point(Fraction(1), Fraction(0))


@pytest.fixture
def cm2() -> Curve:
    """Mordell curve y^2 = x^3 - 2 with the classical point (3, 5)."""
    return Curve(0, 0, 0, 0, -2)


@pytest.fixture
def pm2() -> Point:
    return Point(Fraction(3), Fraction(5))
