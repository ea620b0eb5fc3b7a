"""Dimension, length, local cohomology, hdeg, predicates."""

from __future__ import annotations

from math import comb, inf

from tensorcoh.kernel import AmbientRing
from tensorcoh.modules import Ideal, QuotientRing, dual, tensor
from tensorcoh.invariants import (
    annihilated_by_m, canonical, cm_type, degree, depth, dim, grade, h,
    h0_sat, hdeg, is_free, is_gorenstein, is_locally_free_punctured,
    is_quasi_buchsbaum, is_reflexive, is_torsion_free, jacobian_ideal, length,
    mu, rank, ring_degree, ring_dim, serre_Sr,
)

S2 = QuotientRing(AmbientRing(["x", "y"]))
S3 = QuotientRing(AmbientRing(["x", "y", "z"]))


def test_hilbert_basics():
    I = Ideal(S3, [S3.poly("x^2"), S3.poly("y^3")])
    Q = I.quotient()
    assert dim(Q) == 1
    assert degree(Q) == 6
    assert length(Q) is inf
    assert length(Ideal(S2, [S2.poly("x"), S2.poly("y")]).quotient()) == 1


def test_depth_and_grade_match():
    m = S3.irrelevant_ideal()
    M = m.module()
    assert depth(M) == 1
    assert grade(m, M) == 1
    assert grade(m, S3.one_module()) == 3


def test_h_duality_vs_saturation():
    m = S2.irrelevant_ideal().module()
    T = tensor(m, m)
    assert h(T, 0) == 1 == h0_sat(T)
    assert h(m, 0) == 0 and h(m, 1) == 1
    # above the dimension everything vanishes
    assert h(T, 3) == 0


def test_hdeg_examples():
    # finite length: hdeg = length; MCM: hdeg = degree
    k = Ideal(S2, [S2.poly("x"), S2.poly("y")]).quotient()
    assert hdeg(k) == 1
    assert hdeg(S2.one_module()) == 1
    m = S2.irrelevant_ideal().module()
    assert hdeg(m) == degree(m) + h(m, 1) == 2


def test_predicates_on_syzygy():
    m = S3.irrelevant_ideal().module()
    assert is_torsion_free(m) and not is_reflexive(m)
    assert serre_Sr(m, 1) and not serre_Sr(m, 2)
    assert is_locally_free_punctured(m)
    assert not is_free(m) and is_free(dual(m))


def test_quasi_buchsbaum_and_m_annihilation():
    k = Ideal(S2, [S2.poly("x"), S2.poly("y")]).quotient()
    assert annihilated_by_m(k)
    m = S2.irrelevant_ideal().module()
    assert is_quasi_buchsbaum(m) is True


def test_canonical_module_veronese():
    S = AmbientRing(["a", "b", "c", "d"])
    R = QuotientRing(S, [S.poly("a*c - b^2"), S.poly("a*d - b*c"), S.poly("b*d - c^2")],
                     domain=True)
    assert ring_dim(R) == 2 and ring_degree(R) == 3
    w = canonical(R)
    assert mu(w) == 2 and rank(w) == 1
    assert cm_type(R) == 2 and not is_gorenstein(R)
    assert depth(w) == 2  # canonical module of a CM ring is MCM


def test_jacobian_ideal():
    S = AmbientRing(["x", "y", "z"])
    R = QuotientRing(S, [S.poly("x*y - z^2")], domain=True)
    J = jacobian_ideal(R)
    assert J.contains(R.poly("x")) and J.contains(R.poly("z"))
    assert dim(J.quotient()) <= 0  # isolated singularity
