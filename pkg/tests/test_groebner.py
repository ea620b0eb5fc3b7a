"""Groebner bases, membership, syzygies."""

from __future__ import annotations

from tensorcoh.kernel import AmbientRing
from tensorcoh.groebner import ModuleGB, buchberger, reduce_poly
from tensorcoh.modules import vec_from_poly

R = AmbientRing(["x", "y", "z"])


def test_buchberger_twisted_cubic():
    # the three 2x2 minors of [[x,y],[y,z]] type relations: already a GB
    gens = [R.poly("x*z - y^2")]
    gb = buchberger(gens)
    assert len(gb) == 1
    gens = [R.poly("x^2"), R.poly("x*y + y^2")]
    gb = buchberger(gens)
    # y^3 is in the ideal: x^2, xy + y^2 generate (x^2, xy + y^2, y^3)
    assert not reduce_poly(R.poly("y^3"), gb)


def test_membership_and_normal_form():
    gens = [R.poly("x^2 - y*z")]
    gb = buchberger(gens)
    assert not reduce_poly(R.poly("x^4 - 2*x^2*y*z + y^2*z^2"), gb)
    assert reduce_poly(R.poly("x^3"), gb) == R.poly("x*y*z")


def test_syzygies_of_variables():
    cols = [vec_from_poly(R.poly(v)) for v in ("x", "y", "z")]
    mgb = ModuleGB(R, cols, 1, ())
    syz = mgb.syzygies()
    # Koszul: exactly three independent relations among x, y, z
    mgb2 = ModuleGB(R, syz, 3, ())
    assert len(mgb2.basis_of_columns()) == 3


def test_lift():
    cols = [vec_from_poly(R.poly("x^2")), vec_from_poly(R.poly("y"))]
    mgb = ModuleGB(R, cols, 1, ())
    target = vec_from_poly(R.poly("x^2*z + y^3"))
    assert mgb.contains(target)
    lift = mgb.lift(target)
    # verify the lift reassembles the target: lift is {(col, exp): coeff}
    acc = {}
    for (j, e2), c2 in lift.items():
        for (p, e), c in cols[j].items():
            key = (p, tuple(a + b for a, b in zip(e, e2)))
            acc[key] = (acc.get(key, 0) + c * c2) % R.char
    acc = {k: v for k, v in acc.items() if v}
    assert acc == {k: v % R.char for k, v in target.items()}
