"""Polynomial arithmetic and parsing over the prime field."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from tensorcoh.kernel import AmbientRing, UnsupportedInput

R2 = AmbientRing(["x", "y"])
R3 = AmbientRing(["x", "y", "z"])


def test_parse_and_arithmetic():
    f = R2.poly("x^2 + 2*x*y")
    g = R2.poly("x*y")
    assert str(f - 2 * g) == "x^2"
    assert (f * g).degree() == 4
    assert R2.poly("x - x") == R2.poly("0")


def test_field_characteristic():
    assert R2.poly("32003*x") == R2.poly("0")
    assert R2.poly("32004*x") == R2.poly("x")


def test_homogeneity():
    assert R2.poly("x^2 + x*y").is_homogeneous()
    assert not R2.poly("x^2 + x").is_homogeneous()


def test_derivative():
    f = R3.poly("x^2*y + z^3")
    assert f.derivative(0) == R3.poly("2*x*y")
    assert f.derivative(2) == R3.poly("3*z^2")


def test_bad_input():
    with pytest.raises(UnsupportedInput):
        R2.poly("x +")
    with pytest.raises(UnsupportedInput):
        R2.poly("w")


@st.composite
def _poly_text(draw):
    terms = []
    for _ in range(draw(st.integers(1, 4))):
        c = draw(st.integers(1, 11))
        a = draw(st.integers(0, 3))
        b = draw(st.integers(0, 3))
        terms.append(f"{c}*x^{a}*y^{b}")
    return " + ".join(terms)


@given(_poly_text())
def test_print_parse_round_trip(text):
    f = R2.poly(text)
    assert R2.poly(str(f)) == f
