"""Seeded random sharpness explorer for the bound checks.

Samples small monomial instances, evaluates lhs/rhs of a bound and records
the exact ratio.  Never asserts sharpness; a violated proven bound aborts
as an engine bug.
"""

from __future__ import annotations

import io
import csv
import random
from fractions import Fraction

from .kernel import AmbientRing, UnsupportedInput
from .modules import GradedMap, GradedModule, Ideal, QuotientRing, tensor
from .invariants import h, degree, length
from .checks import _BOUNDS, assert_sound, evaluate_bound

# desk-scale random model: monomial data in at most 3 variables, at most
# 5 generators, generator degrees at most 6
MAX_VARS = 3
MAX_GENS = 5
MAX_DEG = 6

_VARS = ["x", "y", "z"]


def _rand_ring(rng: random.Random) -> QuotientRing:
    n = rng.randint(2, MAX_VARS)
    return QuotientRing(AmbientRing(_VARS[:n]))


def _rand_monomial(rng, ring, lo=1):
    n = ring.ambient.n
    d = rng.randint(lo, MAX_DEG)
    exps = [0] * n
    for _ in range(d):
        exps[rng.randrange(n)] += 1
    text = "*".join(f"{v}^{e}" for v, e in zip(ring.ambient.names, exps) if e)
    return ring.poly(text or "1")


def _rand_artinian_ideal(rng, ring) -> Ideal:
    """Monomial ideal of finite colength: pure powers plus extras."""
    gens = [ring.poly(f"{v}^{rng.randint(1, MAX_DEG)}") for v in ring.ambient.names]
    for _ in range(rng.randint(0, MAX_GENS - len(gens))):
        gens.append(_rand_monomial(rng, ring))
    return Ideal(ring, gens)


def _rand_monomial_ideal(rng, ring) -> Ideal:
    gens = [_rand_monomial(rng, ring) for _ in range(rng.randint(1, MAX_GENS))]
    return Ideal(ring, gens)


def _ideal_desc(I: Ideal) -> str:
    return "(" + ",".join(str(g) for g in I.gens) + ")"


def _instance_generic(rng):
    """Finite-length M = R/I with artinian monomial I; monomial N = R/J."""
    ring = _rand_ring(rng)
    I = _rand_artinian_ideal(rng, ring)
    J = _rand_monomial_ideal(rng, ring)
    M = I.quotient()
    N = J.quotient()
    desc = (f"k[{','.join(ring.ambient.names)}]; M=R/{_ideal_desc(I)};"
            f" N=R/{_ideal_desc(J)}")
    return M, N, desc


def _instance_vasc(rng):
    """M = coker of a monomial column over k[x,y] (rows = cols + 1)."""
    ring = QuotientRing(AmbientRing(["x", "y"]))
    a = rng.randint(1, MAX_DEG)
    b = rng.randint(1, MAX_DEG)
    f = ring.poly(f"x^{a}")
    g = ring.poly(f"y^{b}")
    # twist the second row so the single column is homogeneous
    pres = GradedMap.from_entries(ring, [[f], [g]], target_twists=[0, a - b])
    M = GradedModule(pres)
    desc = f"k[x,y]; M=coker[x^{a}; y^{b}]"
    return M, M, desc


def explore(check_id: str, trials: int, seed: int):
    """Rows {instance_id, description, lhs, rhs, ratio} for a bound check."""
    if check_id not in _BOUNDS:
        raise UnsupportedInput(f"explore needs a bound check id, got {check_id!r}")
    rng = random.Random(seed)
    rows = []
    for t in range(trials):
        if check_id == "vasc-81":
            M, N, desc = _instance_vasc(rng)
        else:
            M, N, desc = _instance_generic(rng)
        rep = evaluate_bound(check_id, M, N)
        assert_sound(rep, f"explore instance {t}: {desc}")
        lhs, rhs = rep.lhs, rep.rhs
        ok = (isinstance(lhs, int) and isinstance(rhs, int)
              and rep.verdict in ("holds", "fails") and rhs != 0)
        ratio = str(Fraction(lhs, rhs)) if ok else ""
        rows.append({
            "instance_id": t,
            "description": desc,
            "lhs": lhs if isinstance(lhs, int) else "",
            "rhs": rhs if isinstance(rhs, int) else "",
            "ratio": ratio,
        })
    return rows


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["instance_id", "description", "lhs", "rhs", "ratio"],
                       lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
