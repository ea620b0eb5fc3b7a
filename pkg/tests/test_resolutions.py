"""Resolutions, Betti numbers, Ext and Tor."""

from __future__ import annotations

from math import comb, inf

from tensorcoh.kernel import AmbientRing
from tensorcoh.modules import Ideal, QuotientRing, tensor
from tensorcoh.resolutions import (
    ext_S, ext_module, resolve, tor_module, transpose_module,
)
from tensorcoh.invariants import length, mu

_VARS = ["x", "y", "z", "u", "v"]


def _residue_field(n):
    ring = QuotientRing(AmbientRing(_VARS[:n]))
    return ring, ring.irrelevant_ideal().quotient()


def test_koszul_betti():
    for n in range(2, 6):
        ring, k = _residue_field(n)
        res = resolve(k, over="S")
        assert res.pd() == n
        assert [res.rank(i) for i in range(n + 1)] == [comb(n, i) for i in range(n + 1)]


def test_tor_of_residue_field():
    ring, k = _residue_field(2)
    assert length(tor_module(k, k, 1, over="S")) == 2
    assert length(tor_module(k, k, 2, over="S")) == 1
    assert tor_module(k, k, 3, over="S").is_zero()


def test_ext_S_of_finite_length():
    ring, k = _residue_field(3)
    # only the top Ext survives for the residue field
    assert ext_S(k, 3).is_zero() is False
    assert length(ext_S(k, 3)) == 1
    assert ext_S(k, 2).is_zero()


def test_resolution_over_quotient_truncated():
    S = AmbientRing(["x", "y"])
    R = QuotientRing(S, [S.poly("x^2")])
    k = R.irrelevant_ideal().quotient()
    res = resolve(k, over="R", bound=4)
    assert res.pd() == ("ge", 4)
    # periodic tail of a hypersurface: constant ranks
    assert res.rank(3) == res.rank(4)


def test_ext_over_quotient():
    S = AmbientRing(["x", "y"])
    R = QuotientRing(S, [S.poly("x*y")])
    k = R.irrelevant_ideal().quotient()
    E1 = ext_module(k, R.one_module(), 1, over="R")
    assert length(E1) == 1


def test_transpose_module():
    ring, k = _residue_field(2)
    m = ring.irrelevant_ideal().module()
    D = transpose_module(m, over="S")
    # the transpose of m over a 2-dim regular ring is finite length
    assert length(D) != inf
