"""Graded modules: presentations, tensor, dual, torsion, fitting ideals."""

from __future__ import annotations

import pytest

from tensorcoh.kernel import AmbientRing, UnsupportedInput
from tensorcoh.modules import (
    GradedMap, GradedModule, Ideal, QuotientRing, annihilator, dual, fitting,
    tensor, tensor_power, torsion,
)
from tensorcoh.invariants import length, mu, rank

S2 = QuotientRing(AmbientRing(["x", "y"]))
S3 = QuotientRing(AmbientRing(["x", "y", "z"]))


def test_cyclic_quotient_length():
    I = Ideal(S2, [S2.poly("x^2"), S2.poly("y^3")])
    assert length(I.quotient()) == 6
    assert mu(I.module()) == 2


def test_tensor_of_cyclics_is_sum_ideal():
    A = Ideal(S2, [S2.poly("x")]).quotient()
    B = Ideal(S2, [S2.poly("y")]).quotient()
    T = tensor(A, B)
    assert length(T) == length(Ideal(S2, [S2.poly("x"), S2.poly("y")]).quotient()) == 1


def test_dual_of_ideal_module():
    m = S2.irrelevant_ideal().module()
    md = dual(m)
    # Hom(m, R) = R for a height-two ideal over a normal domain
    assert md.is_free() and mu(md) == 1


def test_torsion_of_tensor_square():
    I = Ideal(S2, [S2.poly("x^2"), S2.poly("y^3")])
    T = tensor(I.module(), I.module())
    assert length(torsion(T)) == 6


def test_rank_additivity():
    I = Ideal(S3, [S3.poly("x"), S3.poly("y")])
    M = I.module()
    assert rank(M) == 1
    assert rank(tensor(M, M)) == 1


def test_fitting_ideal_of_ideal_module():
    I = Ideal(S2, [S2.poly("x^2"), S2.poly("y^3")])
    F = fitting(I.module(), 1)
    # first fitting ideal of a 2-generated rank-1 module: the entry ideal
    assert F.contains(S2.poly("x^2")) and F.contains(S2.poly("y^3"))


def test_annihilator():
    A = Ideal(S2, [S2.poly("x")]).quotient()
    ann = annihilator(A)
    assert ann.contains(S2.poly("x")) and not ann.contains(S2.poly("y"))


def test_tensor_power_cap():
    I = Ideal(S2, [S2.poly("x"), S2.poly("y")])
    with pytest.raises(UnsupportedInput):
        tensor_power(I.module(), 6, size_cap=4)


def test_graded_map_rejects_inhomogeneous():
    with pytest.raises(UnsupportedInput):
        GradedMap.from_entries(S2, [[S2.poly("x + 1")]])
