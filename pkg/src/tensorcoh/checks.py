"""Registry of executable homological checks: bound evaluators, vanishing
tests, closed-formula verifiers, freeness criteria, depth sequences and the
perfect-times-Buchsbaum equality reporter.

Every check validates its hypotheses (computed, or certified by the caller),
computes both sides exactly, and returns a CheckReport.  A "fails" verdict on
a check marked proven signals an engine bug; the corpus runner aborts on it.
"""

from __future__ import annotations

import math
import time
from math import comb

from .kernel import KernelError, UnsupportedInput
from .modules import (
    GradedModule, Ideal, QuotientRing, dual, quotient_by_submodule, tensor,
    tensor_power,
)
from .invariants import (
    annihilated_by_m, degree, depth, dim, gamma_m, grade, h, hdeg,
    is_free, is_gorenstein, is_locally_free_off, is_locally_free_punctured,
    is_quasi_buchsbaum, is_reflexive, is_torsion_free, jacobian_ideal, length,
    mu, pd_S, rank, ring_degree, ring_dim, serre_Sr, _json_val, canonical,
    cm_type,
)
from .modules import fitting
from .resolutions import ext_module, resolve, tor_module, transpose_module


class SoundnessError(KernelError):
    """A proven statement failed on verified hypotheses: engine bug."""


VERIFIED = "verified"
CERTIFIED = "certified"
VIOLATED = "violated"


class CheckReport:
    """Value object: one check run on one set of inputs."""

    def __init__(self, check, hypotheses, lhs, rhs, verdict, millis, detail=None):
        self.check = check
        self.hypotheses = list(hypotheses)
        self.lhs = lhs
        self.rhs = rhs
        self.verdict = verdict
        self.millis = millis
        self.detail = detail or {}

    def as_json(self):
        out = {
            "check": self.check,
            "hypotheses": [{"name": n, "status": s} for n, s in self.hypotheses],
            "lhs": _deep_json(self.lhs),
            "rhs": _deep_json(self.rhs),
            "verdict": self.verdict,
            "millis": self.millis,
        }
        if self.detail:
            out["detail"] = _deep_json(self.detail)
        return out

    def __repr__(self):
        return f"CheckReport({self.check}: {self.verdict}, lhs={self.lhs}, rhs={self.rhs})"


def _deep_json(v):
    if isinstance(v, dict):
        return {str(k): _deep_json(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_deep_json(x) for x in v]
    return _json_val(v)


class DepthSequence:
    """depth(M^(x)i) for i = 1..nmax, with optional grade values for an ideal."""

    def __init__(self, values, grades, stabilization, truncated):
        self.values = list(values)
        self.grades = None if grades is None else list(grades)
        self.stabilization = stabilization
        self.truncated = truncated

    def as_json(self):
        return {
            "depths": [_json_val(v) for v in self.values],
            "grades": None if self.grades is None else [_json_val(v) for v in self.grades],
            "stabilization": self.stabilization,
            "truncated": self.truncated,
        }


# -- proven statements (the soundness gate aborts on a "fails" for these) --------

PROVEN = frozenset([
    "lemma-0", "lemma-red", "prop-vector", "prop-cvector", "cor-1d", "cor-jac",
    "prop-v5", "prop-buchs", "fact-3ht", "prop-vector2", "vasc-81",
    "g-vanish", "gc-vanish", "gor-ht2",
    "f-m2", "f-param", "f-claimA", "f-55i", "f-55ii", "f-54", "f-kan",
    "f-tor1", "f-tach", "f-dualpair", "f-bv",
    "free-2au", "free-t2", "free-t3", "free-hyp2", "free-518", "free-laun",
    "free-sph1", "sph-equiv", "refl-516",
    "depth_sequence",
])


# -- small helpers ----------------------------------------------------------------


def _now():
    return time.perf_counter()


def _ms(t0):
    return int(round((_now() - t0) * 1000))


def _report(check, hyps, lhs, rhs, holds, t0, detail=None, undecidable=False):
    if any(s == VIOLATED for _n, s in hyps):
        verdict = "hypotheses-violated"
    elif undecidable:
        verdict = "undecidable"
    else:
        verdict = "holds" if holds else "fails"
    return CheckReport(check, hyps, lhs, rhs, verdict, _ms(t0), detail)


def _as_module(x) -> GradedModule:
    if isinstance(x, GradedModule):
        return x
    if isinstance(x, Ideal):
        return x.module()
    if isinstance(x, QuotientRing):
        return x.one_module()
    raise UnsupportedInput(f"cannot interpret {x!r} as a graded module")


def _pd_base(M: GradedModule):
    """Projective dimension over the base ring; math.inf when infinite.

    Finite pd forces pd <= depth of the ring <= n, so a truncation at n + 2
    decides finiteness exactly.
    """
    ring = M.ring
    if M.is_zero():
        return 0
    if ring.is_ambient:
        return pd_S(M)
    n = ring.ambient.n
    res = resolve(M, over="R", bound=n + 2)
    p = res.pd()
    return p if isinstance(p, int) else math.inf


def _base_over(ring: QuotientRing) -> str:
    return "S" if ring.is_ambient else "R"


def _ring_is_regular(ring: QuotientRing) -> bool:
    return ring.is_ambient or not ring.gb


def _ring_depth(ring: QuotientRing) -> int:
    return depth(ring.one_module())


def _ring_is_cm(ring: QuotientRing) -> bool:
    return _ring_depth(ring) == ring_dim(ring)


def _ring_is_hypersurface(ring: QuotientRing) -> bool:
    # regular rings qualify: adding a variable and dividing it back out
    # realizes them as a quotient of a regular ring by one element
    return ring.is_ambient or len(ring.gb) == 1


def _ring_gen_cm(ring: QuotientRing) -> bool:
    R1 = ring.one_module()
    return all(h(R1, i) is not math.inf for i in range(ring_dim(ring)))


def _mod_gamma_quotient(M: GradedModule) -> GradedModule:
    """M / H^0_m(M)."""
    G, emb = gamma_m(M)
    if G.is_zero():
        return M
    return quotient_by_submodule(M, emb)


def _cert(certificates, key):
    return bool(certificates and certificates.get(key))


def _hyp_cert(certificates, key, label=None):
    name = label or key
    return (name, CERTIFIED if _cert(certificates, key) else VIOLATED)


def _betti_base(M: GradedModule, upto: int):
    ov = _base_over(M.ring)
    res = resolve(M, over=ov, bound=upto + 1)
    return [res.rank(i) for i in range(upto + 1)]


def _locally_free_hyp(M, a, certificates, label):
    flag, complete = is_locally_free_off(M, a)
    if flag:
        return (label, VERIFIED if complete else CERTIFIED), True
    if _cert(certificates, "locally_free"):
        return (label, CERTIFIED), True
    return (label, VIOLATED), False


# -- bound evaluators ---------------------------------------------------------------


def evaluate_bound(check_id, M, N=None, a=None, r=None, certificates=None) -> CheckReport:
    t0 = _now()
    M = _as_module(M)
    N = M if N is None else _as_module(N)
    ring = M.ring
    fn = _BOUNDS.get(check_id)
    if fn is None:
        raise UnsupportedInput(f"unknown bound check id {check_id!r}")
    return fn(M, N, ring, certificates or {}, t0, a=a, r=r)


def _b_lemma0(M, N, ring, certs, t0, **kw):
    lM = length(M)
    hyps = [("length(M) finite", VERIFIED if lM is not math.inf else VIOLATED)]
    lhs = h(tensor(M, N), 0)
    rhs = lM * mu(N) if lM is not math.inf else math.inf
    return _report("lemma-0", hyps, lhs, rhs, lhs <= rhs, t0)


def _b_lemmared(M, N, ring, certs, t0, **kw):
    Mt = _mod_gamma_quotient(M)
    Nt = _mod_gamma_quotient(N)
    lhs = h(tensor(M, N), 0)
    rhs = h(M, 0) * mu(N) + h(N, 0) * mu(N) + h(tensor(Mt, Nt), 0)
    return _report("lemma-red", [], lhs, rhs, lhs <= rhs, t0)


def _b_propvector(M, N, ring, certs, t0, **kw):
    hyps = []
    hyps.append(("base ring generalized Cohen-Macaulay",
                 VERIFIED if _ring_gen_cm(ring) else VIOLATED))
    hyps.append(("base ring equidimensional",
                 VERIFIED if _ring_is_regular(ring) else
                 (CERTIFIED if (ring.domain or _cert(certs, "equidimensional")) else VIOLATED)))
    hyps.append(("N locally free on the punctured spectrum",
                 VERIFIED if is_locally_free_punctured(N) else VIOLATED))
    hyps.append(("N of constant rank",
                 VERIFIED if ring.domain else _hyp_cert(certs, "constant_rank")[1]))
    p = _pd_base(M)
    dR = _ring_depth(ring)
    hyps.append(("pd(M) < depth of the base ring",
                 VERIFIED if p < dR else VIOLATED))
    lhs = h(tensor(M, N), 0)
    if p is math.inf or p >= dR:
        return _report("prop-vector", hyps, lhs, None, False, t0)
    bet = _betti_base(M, p)
    rhs = sum(bet[i] * h(N, i) for i in range(p + 1))
    return _report("prop-vector", hyps, lhs, rhs, lhs <= rhs, t0)


def _b_propcvector(M, N, ring, certs, t0, **kw):
    hyps = [("base ring regular", VERIFIED if _ring_is_regular(ring) else VIOLATED),
            ("N locally free on the punctured spectrum",
             VERIFIED if is_locally_free_punctured(N) else VIOLATED)]
    d = ring_dim(ring)
    lhs = h(tensor(M, N), 0)
    hh = hdeg(M) * hdeg(N)
    if M.is_zero():
        return _report("prop-cvector", hyps, lhs, 0, lhs == 0, t0)
    p = pd_S(M)
    rhs = d * hh if p < d else (d + 1) * hh - 1
    return _report("prop-cvector", hyps, lhs, rhs, lhs <= rhs, t0,
                   detail={"pd": p, "dim": d})


def _b_cor1d(M, N, ring, certs, t0, **kw):
    d = ring_dim(ring)
    hyps = [("base ring regular", VERIFIED if _ring_is_regular(ring) else VIOLATED)]
    if d == 1:
        hyps.append(("dimension-1 shape", VERIFIED))
    elif d == 2:
        hyps.append(("M torsion-free (dimension-2 shape)",
                     VERIFIED if is_torsion_free(M) else VIOLATED))
    elif d == 3:
        hyps.append(("M reflexive (dimension-3 shape)",
                     VERIFIED if is_reflexive(M) else VIOLATED))
    else:
        hyps.append(("dimension at most 3", VIOLATED))
    lhs = h(tensor(M, N), 0)
    rhs = (d + 1) * hdeg(M) * hdeg(N)
    return _report("cor-1d", hyps, lhs, rhs, lhs < rhs, t0)


def _b_corjac(M, N, ring, certs, t0, **kw):
    hyps = [("base ring of dimension 1", VERIFIED if ring_dim(ring) == 1 else VIOLATED),
            ("base ring a domain",
             VERIFIED if ring.is_ambient else _hyp_cert(certs, "domain")[1]),
            ("graded model of a complete equicharacteristic ring", CERTIFIED)]
    J = jacobian_ideal(ring)
    lj = length(J.quotient())
    hyps.append(("Jacobian ideal of finite colength",
                 VERIFIED if lj is not math.inf else VIOLATED))
    lhs = h(tensor(M, N), 0)
    if lj is math.inf or not ring.domain:
        return _report("cor-jac", hyps, lhs, None, False, t0)
    dr = ring_degree(ring)
    rhs = hdeg(M) * hdeg(N) * (2 + dr * lj) - rank(M) * rank(N) * dr * lj
    return _report("cor-jac", hyps, lhs, rhs, lhs <= rhs, t0)


def _b_propv5(M, N, ring, certs, t0, **kw):
    hyps = []
    try:
        gor = is_gorenstein(ring)
    except UnsupportedInput:
        gor = False
    hyps.append(("base ring Gorenstein", VERIFIED if gor else VIOLATED))
    J = jacobian_ideal(ring)
    iso = dim(J.quotient()) <= 0
    hyps.append(("isolated singularity",
                 VERIFIED if iso else _hyp_cert(certs, "isolated_singularity")[1]))
    d = ring_dim(ring)
    mcm = (not M.is_zero()) and depth(M) == d
    hyps.append(("M maximal Cohen-Macaulay", VERIFIED if mcm else VIOLATED))
    lhs = h(tensor(M, N), 0)
    if not mcm:
        return _report("prop-v5", hyps, lhs, None, False, t0)
    ov = _base_over(ring)
    b2 = resolve(N, over=ov, bound=3).rank(2)
    D = transpose_module(dual(M), over=ov)
    lD = length(D)
    rhs = b2 * lD
    return _report("prop-v5", hyps, lhs, rhs, lhs <= rhs, t0,
                   detail={"beta2(N)": b2, "length_transpose_dual": _json_val(lD)})


def _b_propbuchs(M, N, ring, certs, t0, **kw):
    d = ring_dim(ring)
    hyps = [("base ring Cohen-Macaulay of dimension > 1",
             VERIFIED if (_ring_is_cm(ring) and d > 1) else VIOLATED)]
    p = _pd_base(M)
    perfect = p == 1 and not M.is_zero() and dim(M) == d - 1
    hyps.append(("M perfect of projective dimension one",
                 VERIFIED if perfect else VIOLATED))
    hyps.append(_hyp_cert(certs, "buchsbaum", "N Buchsbaum"))
    hyps.append(("N of maximal dimension",
                 VERIFIED if (not N.is_zero() and dim(N) == d) else VIOLATED))
    lhs = h(tensor(M, N), 0)
    hh = hdeg(M) * hdeg(N)
    if not N.is_zero() and depth(N) > 0:
        rhs = 2 * hh
        holds = lhs <= rhs
    else:
        rhs = 3 * hh
        holds = lhs < rhs
    return _report("prop-buchs", hyps, lhs, rhs, holds, t0)


def _b_fact3ht(M, N, ring, certs, t0, **kw):
    hyps = [("base ring regular of dimension 3",
             VERIFIED if (_ring_is_regular(ring) and ring.ambient.n == 3) else VIOLATED),
            ("M torsion-free", VERIFIED if is_torsion_free(M) else VIOLATED),
            ("N torsion-free", VERIFIED if is_torsion_free(N) else VIOLATED)]
    lhs = h(tensor(M, N), 0)
    rhs = 16 * hdeg(M) * hdeg(N)
    return _report("fact-3ht", hyps, lhs, rhs, lhs < rhs, t0)


def _b_propvector2(M, N, ring, certs, t0, **kw):
    d = ring_dim(ring)
    hyps = [("base ring Cohen-Macaulay", VERIFIED if _ring_is_cm(ring) else VIOLATED)]
    p = _pd_base(M)
    perfect = p is not math.inf and not M.is_zero() and p == d - dim(M)
    hyps.append(("M perfect", VERIFIED if perfect else VIOLATED))
    hyps.append(("N locally free on the punctured spectrum",
                 VERIFIED if is_locally_free_punctured(N) else VIOLATED))
    hyps.append(("N of constant rank",
                 VERIFIED if ring.domain else _hyp_cert(certs, "constant_rank")[1]))
    if not perfect:
        return _report("prop-vector2", hyps, None, None, False, t0)
    dM = dim(M)
    T = tensor(M, N)
    bet = _betti_base(M, p)
    lhs = [h(T, i) for i in range(max(dM, 0))]
    rhs = [sum(bet[j] * h(N, j + i) for j in range(p + 1)) for i in range(max(dM, 0))]
    holds = all(x <= y for x, y in zip(lhs, rhs))
    return _report("prop-vector2", hyps, lhs, rhs, holds, t0)


def _b_vasc81(M, N, ring, certs, t0, **kw):
    d = ring_dim(ring)
    pres = M.minimal_presentation()
    hyps = [("base ring Cohen-Macaulay", VERIFIED if _ring_is_cm(ring) else VIOLATED),
            ("presentation shape rows = cols + dim - 1",
             VERIFIED if pres.nrows == pres.ncols + d - 1 else VIOLATED)]
    if pres.nrows != pres.ncols + d - 1:
        return _report("vasc-81", hyps, None, None, False, t0)
    inj = ring.domain and rank(M) == pres.nrows - pres.ncols
    hyps.append(("presentation matrix injective",
                 VERIFIED if inj else _hyp_cert(certs, "injective_presentation")[1]))
    F = fitting(M, pres.nrows - pres.ncols)
    lF = length(F.quotient())
    hyps.append(("maximal-minor ideal of finite colength",
                 VERIFIED if lF is not math.inf else VIOLATED))
    lhs = h(tensor(M, M), 0)
    if lF is math.inf:
        return _report("vasc-81", hyps, lhs, None, False, t0)
    rhs = d * ((d - 1) * degree(M) + lF) ** 2
    return _report("vasc-81", hyps, lhs, rhs, lhs <= rhs, t0,
                   detail={"deg(M)": degree(M), "colength_minors": lF})


_BOUNDS = {
    "lemma-0": _b_lemma0,
    "lemma-red": _b_lemmared,
    "prop-vector": _b_propvector,
    "prop-cvector": _b_propcvector,
    "cor-1d": _b_cor1d,
    "cor-jac": _b_corjac,
    "prop-v5": _b_propv5,
    "prop-buchs": _b_propbuchs,
    "fact-3ht": _b_fact3ht,
    "prop-vector2": _b_propvector2,
    "vasc-81": _b_vasc81,
}


# -- vanishing checks ---------------------------------------------------------------


def _decide_vanishing_range(T: GradedModule, a: Ideal | None, r: int):
    """Is H^0_a(T) = ... = H^r_a(T) = 0?  Returns (lhs, holds, undecidable)."""
    if T.is_zero():
        return [0] * (r + 1), True, False
    if a is None:
        vals = [h(T, i) for i in range(r + 1)]
        return vals, all(v == 0 for v in vals), False
    g = grade(a, T)
    # grade is the least index with nonvanishing a-local cohomology, so the
    # range 0..r vanishes exactly when grade > r
    return {"grade": _json_val(g)}, g > r, False


def verify_vanishing(check_id, M, N=None, a=None, r=0, certificates=None) -> CheckReport:
    t0 = _now()
    certs = certificates or {}
    if check_id == "gor-ht2":
        return _v_gorht2(M, t0)
    if check_id not in ("g-vanish", "gc-vanish"):
        raise UnsupportedInput(f"unknown vanishing check id {check_id!r}")
    M = _as_module(M)
    N = M if N is None else _as_module(N)
    ring = M.ring
    d = ring_dim(ring)
    hyps = []
    if check_id == "gc-vanish":
        hyps.append(("base ring of positive depth",
                     VERIFIED if _ring_depth(ring) > 0 else VIOLATED))
    pM = _pd_base(M)
    hyps.append(("pd(M) finite", VERIFIED if pM is not math.inf else VIOLATED))
    if check_id == "gc-vanish":
        pN = _pd_base(N)
        hyps.append(("pd(N) finite", VERIFIED if pN is not math.inf else VIOLATED))
    hM, okM = _locally_free_hyp(M, a, certs, "a factor locally free off the locus of a")
    if okM:
        hyps.append(hM)
    else:
        hN, okN = _locally_free_hyp(N, a, certs, "a factor locally free off the locus of a")
        hyps.append(hN if okN else hM)
    if a is None:
        gm = math.inf if M.is_zero() else depth(M)
        gn = math.inf if N.is_zero() else depth(N)
    else:
        gm = math.inf if M.is_zero() else grade(a, M)
        gn = math.inf if N.is_zero() else grade(a, N)
    hyps.append((f"grade(a,M) + grade(a,N) >= dim + r + 1",
                 VERIFIED if gm + gn >= d + r + 1 else VIOLATED))
    hyps.append(("0 <= r < dim of the base ring",
                 VERIFIED if 0 <= r < d else VIOLATED))
    T = tensor(M, N)
    lhs, holds, und = _decide_vanishing_range(T, a, r)
    return _report(check_id, hyps, lhs, [0] * (r + 1), holds, t0,
                   detail={"grade_M": _json_val(gm), "grade_N": _json_val(gn)},
                   undecidable=und)


def _v_gorht2(I, t0):
    if not isinstance(I, Ideal):
        raise UnsupportedInput("gor-ht2 expects an ideal")
    ring = I.ring
    d = ring_dim(ring)
    hyps = [("base ring regular of dimension > 2",
             VERIFIED if (_ring_is_regular(ring) and d > 2) else VIOLATED)]
    ci = len(I.gens) == 2 and dim(I.quotient()) == d - 2
    hyps.append(("height-two complete intersection ideal",
                 VERIFIED if ci else VIOLATED))
    M = I.module()
    lhs = h(tensor(M, M), 0)
    return _report("gor-ht2", hyps, lhs, 0, lhs == 0, t0)


# -- closed-formula verifiers ---------------------------------------------------------


def verify_formula(check_id, *args, certificates=None) -> CheckReport:
    t0 = _now()
    certs = certificates or {}
    fn = _FORMULAS.get(check_id)
    if fn is None:
        raise UnsupportedInput(f"unknown formula check id {check_id!r}")
    return fn(list(args), certs, t0)


def _ring_of(args):
    x = args[0]
    if isinstance(x, QuotientRing):
        return x
    if isinstance(x, (GradedModule, Ideal)):
        return x.ring
    raise UnsupportedInput("cannot determine the base ring of the check inputs")


def _f_m2(args, certs, t0):
    ring = _ring_of(args)
    hyps = [("base ring regular of dimension 2",
             VERIFIED if (_ring_is_regular(ring) and ring_dim(ring) == 2) else VIOLATED)]
    m = ring.irrelevant_ideal().module()
    lhs = h(tensor(m, m), 0)
    return _report("f-m2", hyps, lhs, 1, lhs == 1, t0)


def _f_param(args, certs, t0):
    I = args[0]
    if not isinstance(I, Ideal):
        raise UnsupportedInput("f-param expects an ideal")
    ring = I.ring
    hyps = [("base ring Cohen-Macaulay of dimension 2",
             VERIFIED if (_ring_is_cm(ring) and ring_dim(ring) == 2) else VIOLATED),
            ("base ring a domain",
             VERIFIED if ring.is_ambient else _hyp_cert(certs, "domain")[1])]
    lq = length(I.quotient())
    param = len(I.gens) == 2 and lq is not math.inf
    hyps.append(("ideal generated by a full parameter sequence",
                 VERIFIED if param else VIOLATED))
    M = I.module()
    lhs = h(tensor(M, M), 0)
    rhs = lq
    return _report("f-param", hyps, lhs, rhs, lhs == rhs, t0)


def _f_claimA(args, certs, t0):
    I = args[0]
    if not isinstance(I, Ideal):
        raise UnsupportedInput("f-claimA expects an ideal")
    ring = I.ring
    d = ring_dim(ring)
    hyps = [("base ring Cohen-Macaulay of dimension >= 2",
             VERIFIED if (_ring_is_cm(ring) and d >= 2) else VIOLATED)]
    lq = length(I.quotient())
    hyps.append(("ideal primary to the irrelevant maximal ideal",
                 VERIFIED if lq is not math.inf else VIOLATED))
    m = ring.irrelevant_ideal().module()
    T = tensor(I.module(), m)
    ov = _base_over(ring)
    b2 = resolve(I.quotient(), over=ov, bound=3).rank(2)
    lhs = [h(T, i) for i in range(max(d, 1))]
    rhs = [b2, mu(I.module()) + (0 if lq is math.inf else lq)] + [0] * max(d - 2, 0)
    rhs = rhs[:len(lhs)]
    return _report("f-claimA", hyps, lhs, rhs, lhs == rhs, t0)


def _f_55i(args, certs, t0):
    ring = _ring_of(args)
    d = ring_dim(ring)
    hyps = [("base ring regular of dimension >= 2",
             VERIFIED if (_ring_is_regular(ring) and d >= 2) else VIOLATED)]
    m = ring.irrelevant_ideal().module()
    T = tensor(m, m)
    lhs = [h(T, i) for i in range(d)]
    rhs = [comb(d, 2), d + 1] + [0] * (d - 2)
    return _report("f-55i", hyps, lhs, rhs, lhs == rhs, t0)


def _f_55ii(args, certs, t0):
    ring = _ring_of(args)
    d = ring_dim(ring)
    hyps = [("base ring regular of dimension > 3",
             VERIFIED if (_ring_is_regular(ring) and d > 3) else VIOLATED)]
    if not (_ring_is_regular(ring) and d > 3):
        return _report("f-55ii", hyps, None, None, False, t0)
    k = ring.irrelevant_ideal().quotient()
    M = resolve(k, over="S").syzygy_module(d - 1)
    T = tensor(M, dual(M))
    lhs = [h(T, i) for i in range(d)]
    rhs = [0, 1, d] + [0] * (d - 4) + [d]
    qb = is_quasi_buchsbaum(T)
    holds = lhs == rhs and qb is True
    return _report("f-55ii", hyps, lhs, rhs, holds, t0,
                   detail={"quasi_buchsbaum": qb})


def _f_54(args, certs, t0):
    ring = _ring_of(args)
    hyps = [("base ring of depth >= 3",
             VERIFIED if _ring_depth(ring) >= 3 else VIOLATED)]
    m = ring.irrelevant_ideal().module()
    ms = dual(m)
    lhs = [mu(ms), h(tensor(m, ms), 2)]
    rhs = [1, 0]
    return _report("f-54", hyps, lhs, rhs, lhs == rhs, t0)


def _kan_hypotheses(ring, certs):
    d = ring_dim(ring)
    hyps = [("base ring Cohen-Macaulay of dimension > 1",
             VERIFIED if (_ring_is_cm(ring) and d > 1) else VIOLATED)]
    try:
        typ = cm_type(ring)
    except UnsupportedInput:
        typ = None
    hyps.append(("base ring not Gorenstein",
                 VERIFIED if (typ is not None and typ > 1) else VIOLATED))
    J = jacobian_ideal(ring)
    iso = dim(J.quotient()) <= 0
    hyps.append(("isolated singularity (Gorenstein off the irrelevant ideal)",
                 VERIFIED if iso else _hyp_cert(certs, "isolated_singularity")[1]))
    return hyps, typ, d


def _f_kan(args, certs, t0):
    ring = _ring_of(args)
    hyps, _typ, d = _kan_hypotheses(ring, certs)
    if any(s == VIOLATED for _n, s in hyps):
        return _report("f-kan", hyps, None, None, False, t0)
    w = canonical(ring)
    T = tensor(w, dual(w))
    lhs = [h(T, i) for i in range(d + 1)]
    pattern = [i <= 1 or i == d for i in range(d + 1)]
    got = [v != 0 for v in lhs]
    return _report("f-kan", hyps, lhs, pattern, got == pattern, t0)


def _f_tor1(args, certs, t0):
    ring = _ring_of(args)
    hyps, typ, _d = _kan_hypotheses(ring, certs)
    hyps.append(("base ring of type 2", VERIFIED if typ == 2 else VIOLATED))
    if any(s == VIOLATED for _n, s in hyps):
        return _report("f-tor1", hyps, None, None, False, t0)
    w = canonical(ring)
    lhs = length(tor_module(w, w, 1, over="R"))
    return _report("f-tor1", hyps, lhs, "> 0", lhs != 0, t0)


def _f_tach(args, certs, t0):
    ring = _ring_of(args)
    hyps = [("base ring Cohen-Macaulay", VERIFIED if _ring_is_cm(ring) else VIOLATED),
            ("base ring a domain",
             VERIFIED if ring.is_ambient else _hyp_cert(certs, "domain")[1])]
    try:
        typ = cm_type(ring)
    except UnsupportedInput:
        typ = None
    hyps.append(("base ring of type 2", VERIFIED if typ == 2 else VIOLATED))
    if any(s == VIOLATED for _n, s in hyps):
        return _report("f-tach", hyps, None, None, False, t0)
    w = canonical(ring)
    E1 = ext_module(w, ring.one_module(), 1, over="R")
    lhs = 0 if E1.is_zero() else _json_val(length(E1))
    # type two means non-Gorenstein, so the registered statement demands a
    # nonzero first Ext of the canonical module against the ring
    return _report("f-tach", hyps, lhs, "!= 0", not E1.is_zero(), t0)


def _f_dualpair(args, certs, t0):
    A, B = _as_module(args[0]), _as_module(args[1] if len(args) > 1 else args[0])
    ring = A.ring
    d = ring_dim(ring)
    hyps = [("base ring regular of dimension >= 3",
             VERIFIED if (_ring_is_regular(ring) and d >= 3) else VIOLATED),
            ("A locally free on the punctured spectrum",
             VERIFIED if is_locally_free_punctured(A) else VIOLATED),
            ("B locally free on the punctured spectrum",
             VERIFIED if is_locally_free_punctured(B) else VIOLATED)]
    TAB = tensor(A, B)
    TD = tensor(dual(A), dual(B))
    lhs = [h(TAB, j) for j in range(2, d)]
    rhs = [h(TD, d + 1 - j) for j in range(2, d)]
    return _report("f-dualpair", hyps, lhs, rhs, lhs == rhs, t0)


def _f_bv(args, certs, t0):
    L = _as_module(args[0])
    N = _as_module(args[1] if len(args) > 1 else args[0])
    ring = L.ring
    hyps = [("L locally free on the punctured spectrum",
             VERIFIED if is_locally_free_punctured(L) else VIOLATED)]
    dN = math.inf if N.is_zero() else depth(N)
    hyps.append(("depth(N) >= 3", VERIFIED if dN >= 3 else VIOLATED))
    if any(s == VIOLATED for _n, s in hyps):
        return _report("f-bv", hyps, None, None, False, t0)
    T = tensor(N, dual(L))
    ov = _base_over(ring)
    top = int(dN) - 2
    lhs = [_json_val(length(ext_module(L, N, i, over=ov))) for i in range(1, top + 1)]
    rhs = [_json_val(h(T, i + 1)) for i in range(1, top + 1)]
    return _report("f-bv", hyps, lhs, rhs, lhs == rhs, t0)


_FORMULAS = {
    "f-m2": _f_m2,
    "f-param": _f_param,
    "f-claimA": _f_claimA,
    "f-55i": _f_55i,
    "f-55ii": _f_55ii,
    "f-54": _f_54,
    "f-kan": _f_kan,
    "f-tor1": _f_tor1,
    "f-tach": _f_tach,
    "f-dualpair": _f_dualpair,
    "f-bv": _f_bv,
}


# -- freeness criteria ---------------------------------------------------------------


def freeness_criterion(check_id, M, N=None, a=None, r=None, certificates=None) -> CheckReport:
    t0 = _now()
    certs = certificates or {}
    fn = _FREENESS.get(check_id)
    if fn is None:
        raise UnsupportedInput(f"unknown freeness check id {check_id!r}")
    M = _as_module(M)
    N = None if N is None else _as_module(N)
    return fn(M, N, a, r, certs, t0)


def _implication(check_id, hyps, premise, free_flag, t0, detail=None):
    holds = (not premise) or free_flag
    return _report(check_id, hyps, {"premise": premise}, {"free": free_flag},
                   holds, t0, detail)


def _fr_2au(M, N, a, r, certs, t0):
    ring = M.ring
    hyps = [("base ring regular of dimension 2",
             VERIFIED if (_ring_is_regular(ring) and ring_dim(ring) == 2) else VIOLATED),
            ("M torsion-free", VERIFIED if is_torsion_free(M) else VIOLATED),
            ("M nonzero", VERIFIED if not M.is_zero() else VIOLATED)]
    h0 = h(tensor(M, M), 0)
    free = is_free(M)
    holds = (h0 == 0) == free
    return _report("free-2au", hyps, {"h0": h0}, {"free": free}, holds, t0)


def _fr_t2(M, N, a, r, certs, t0):
    ring = M.ring
    hyps = [("base ring of depth 2", VERIFIED if _ring_depth(ring) == 2 else VIOLATED),
            ("M torsion-free", VERIFIED if is_torsion_free(M) else VIOLATED),
            ("pd(M) finite", VERIFIED if _pd_base(M) is not math.inf else VIOLATED)]
    premise = is_torsion_free(tensor(M, M))
    return _implication("free-t2", hyps, premise, is_free(M), t0)


def _fr_t3(M, N, a, r, certs, t0):
    ring = M.ring
    hyps = [("base ring Cohen-Macaulay of dimension 3",
             VERIFIED if (_ring_is_cm(ring) and ring_dim(ring) == 3) else VIOLATED),
            ("M reflexive", VERIFIED if is_reflexive(M) else VIOLATED),
            ("pd(M) finite", VERIFIED if _pd_base(M) is not math.inf else VIOLATED)]
    premise = is_torsion_free(tensor_power(M, 3))
    return _implication("free-t3", hyps, premise, is_free(M), t0)


def _fr_hyp2(M, N, a, r, certs, t0):
    ring = M.ring
    hyps = [("base ring a hypersurface of dimension 2",
             VERIFIED if (_ring_is_hypersurface(ring) and ring_dim(ring) == 2) else VIOLATED),
            _hyp_cert(certs, "normal", "base ring normal")]
    premise = is_torsion_free(tensor(M, M))
    return _implication("free-hyp2", hyps, premise, is_free(M), t0)


def _fr_518(M, N, a, r, certs, t0):
    ring = M.ring
    if r is None:
        raise UnsupportedInput("free-518 needs the cohomological index r")
    d = ring_dim(ring)
    hyps = [("base ring regular", VERIFIED if _ring_is_regular(ring) else VIOLATED)]
    hlf, _ok = _locally_free_hyp(M, a, certs, "M locally free off the locus of a")
    hyps.append(hlf)
    hyps.append((f"M satisfies the Serre condition (S_{r})",
                 VERIFIED if serre_Sr(M, r) else VIOLATED))
    P = tensor_power(M, max(d - r, 1))
    if a is None:
        premise = h(P, r) == 0
        und = False
    else:
        g = math.inf if P.is_zero() else grade(a, P)
        if g > r:
            premise, und = True, False
        elif g == r:
            premise, und = False, False
        else:
            # lower a-cohomology is nonzero but index r itself is undecided
            premise, und = False, True
    rep = _implication("free-518", hyps, premise, is_free(M), t0)
    if und and rep.verdict not in ("hypotheses-violated",):
        rep.verdict = "undecidable"
    return rep


def _fr_laun(M, N, a, r, certs, t0):
    ring = M.ring
    gM = math.inf if M.is_zero() else grade(a, M) if a is not None else depth(M)
    hyps = [("grade(a, M) > 0", VERIFIED if gM > 0 else VIOLATED)]
    hlf, _ok = _locally_free_hyp(M, a, certs, "M locally free off the locus of a")
    hyps.append(hlf)
    T = tensor(M, dual(M))
    if a is None:
        premise = h(T, 0) == 0 and h(T, 1) == 0
    else:
        g = math.inf if T.is_zero() else grade(a, T)
        premise = g >= 2
    return _implication("free-laun", hyps, premise, is_free(M), t0)


def _fr_sph1(M, N, a, r, certs, t0):
    ring = M.ring
    d = ring_dim(ring)
    hyps = [("pd(M) finite", VERIFIED if _pd_base(M) is not math.inf else VIOLATED)]
    hlf, _ok = _locally_free_hyp(M, a, certs, "M locally free off the locus of a")
    hyps.append(hlf)
    Ms = dual(M)
    if a is None:
        gm = math.inf if M.is_zero() else depth(M)
        gs = math.inf if Ms.is_zero() else depth(Ms)
    else:
        gm = math.inf if M.is_zero() else grade(a, M)
        gs = math.inf if Ms.is_zero() else grade(a, Ms)
    premise = gm + gs >= d + 2
    return _implication("free-sph1", hyps, premise, is_free(M), t0,
                        detail={"grade_M": _json_val(gm), "grade_dual": _json_val(gs)})


def _fr_sphequiv(M, N, a, r, certs, t0):
    ring = M.ring
    d = ring_dim(ring)
    hyps = [("base ring a hypersurface",
             VERIFIED if _ring_is_hypersurface(ring) else VIOLATED),
            ("M torsion-free", VERIFIED if is_torsion_free(M) else VIOLATED),
            ("M of constant rank",
             VERIFIED if ring.domain else _hyp_cert(certs, "constant_rank")[1]),
            ("M locally free on the punctured spectrum",
             VERIFIED if is_locally_free_punctured(M) else VIOLATED)]
    p = _pd_base(M)
    hyps.append(("pd(M) finite and positive",
                 VERIFIED if (p is not math.inf and p >= 1) else VIOLATED))
    if p is math.inf or p < 1:
        return _report("sph-equiv", hyps, None, None, False, t0)
    Ms = dual(M)
    c1 = depth(M) + (depth(Ms) if not Ms.is_zero() else 0) == d + 1
    c2 = is_torsion_free(tensor(M, Ms))
    c3 = all(ext_module(M, ring.one_module(), i, over=_base_over(ring)).is_zero()
             for i in range(1, p)) if p >= 1 else True
    conds = [c1, c2, c3]
    return _report("sph-equiv", hyps, conds, "all equal", len(set(conds)) == 1, t0)


def _fr_refl516(M, N, a, r, certs, t0):
    ring = M.ring
    if N is None:
        N = M
    hyps = [("base ring a hypersurface",
             VERIFIED if _ring_is_hypersurface(ring) else VIOLATED),
            ("M and N of constant rank",
             VERIFIED if ring.domain else _hyp_cert(certs, "constant_rank")[1]),
            ("pd(M) and pd(N) finite",
             VERIFIED if (_pd_base(M) is not math.inf and _pd_base(N) is not math.inf)
             else VIOLATED),
            ("M and N locally free on the punctured spectrum",
             VERIFIED if (is_locally_free_punctured(M) and is_locally_free_punctured(N))
             else VIOLATED)]
    premise = is_torsion_free(tensor(M, N))
    concl = is_reflexive(M) or is_reflexive(N)
    holds = (not premise) or concl
    return _report("refl-516", hyps, {"premise": premise},
                   {"reflexive_either": concl}, holds, t0)


_FREENESS = {
    "free-2au": _fr_2au,
    "free-t2": _fr_t2,
    "free-t3": _fr_t3,
    "free-hyp2": _fr_hyp2,
    "free-518": _fr_518,
    "free-laun": _fr_laun,
    "free-sph1": _fr_sph1,
    "sph-equiv": _fr_sphequiv,
    "refl-516": _fr_refl516,
}


# -- depth sequences ------------------------------------------------------------------


def depth_sequence(M, a=None, nmax=4, size_cap=20000):
    """(DepthSequence, CheckReport): depths of tensor powers plus the
    applicable theorem sub-verdicts."""
    t0 = _now()
    M = _as_module(M)
    if nmax < 1:
        raise UnsupportedInput("depth_sequence needs nmax >= 1")
    if M.is_zero():
        raise UnsupportedInput("depth sequence of the zero module is undefined")
    ring = M.ring
    d = ring_dim(ring)
    dR = _ring_depth(ring)
    values = []
    grades = [] if a is not None else None
    truncated = False
    P = M.minimize()
    for i in range(1, nmax + 1):
        if i > 1:
            T = tensor(P, M)
            if T.mu() > size_cap:
                truncated = True
                break
            P = T
        if P.is_zero():
            truncated = True
            break
        values.append(depth(P))
        if a is not None:
            grades.append(grade(a, P))
    stab = len(values)
    for s in range(len(values), 0, -1):
        if len(set(values[s - 1:])) <= 1:
            stab = s
    seq = DepthSequence(values, grades, stab, truncated)

    hyps = []
    sub = {}
    p = _pd_base(M)
    lf_punct = ring.domain and is_locally_free_punctured(M)
    if a is not None:
        lf_a, complete_a = is_locally_free_off(M, a)
        if lf_a and p is not math.inf:
            ok = all(g >= d - (i + 1) * p for i, g in enumerate(grades))
            sub["grade_lower_bound"] = ok
            hyps.append(("M locally free off the locus of a",
                         VERIFIED if complete_a else CERTIFIED))
    if lf_punct and p == 1:
        pred = [max(dR - i, 0) for i in range(1, len(values) + 1)]
        sub["pd1_formula"] = values == pred
        hyps.append(("M locally free of projective dimension one", VERIFIED))
    elif lf_punct and p is not math.inf and p >= 1:
        top = int(dR // p)
        pred = [dR - i * p for i in range(1, min(top, len(values)) + 1)]
        sub["pdp_formula"] = values[:len(pred)] == pred
        hyps.append(("M locally free of finite projective dimension", VERIFIED))
    sub["constant"] = len(set(values)) <= 1
    holds = all(v for k, v in sub.items() if k != "constant")
    rep = _report("depth_sequence", hyps, seq.as_json(), sub, holds, t0,
                  detail={"pd": _json_val(p), "ring_depth": dR})
    return seq, rep


# -- perfect x Buchsbaum equality reporter --------------------------------------------


def yoshida_report(M, N, certificates=None) -> CheckReport:
    """Per-index comparison of h^i(M(x)N) against the Betti-weighted sum of
    h^{j+i}(N); reports equality or one-sided slack, never asserts."""
    t0 = _now()
    certs = certificates or {}
    M = _as_module(M)
    N = _as_module(N)
    ring = M.ring
    d = ring_dim(ring)
    hyps = [("base ring Cohen-Macaulay", VERIFIED if _ring_is_cm(ring) else VIOLATED)]
    p = _pd_base(M)
    perfect = (p is not math.inf) and (M.is_zero() or p == d - dim(M))
    hyps.append(("M perfect", VERIFIED if perfect else VIOLATED))
    hyps.append(_hyp_cert(certs, "buchsbaum", "N Buchsbaum"))
    if any(s == VIOLATED for _n, s in hyps):
        return CheckReport("yoshida_report", hyps, None, None,
                           "hypotheses-violated", _ms(t0))
    dM = dim(M) if not M.is_zero() else 0
    T = tensor(M, N)
    bet = _betti_base(M, p) if p >= 0 else []
    lhs = [h(T, i) for i in range(max(dM, 0))]
    rhs = [sum(bet[j] * h(N, j + i) for j in range(p + 1)) for i in range(max(dM, 0))]
    if any(x > y for x, y in zip(lhs, rhs)):
        verdict = "bound-violated"
    elif lhs == rhs:
        verdict = "equality"
    else:
        verdict = "inequality-within-bound"
    return CheckReport("yoshida_report", hyps, lhs, rhs, verdict, _ms(t0))


# -- dispatch, registry table, soundness gate -----------------------------------------


def run_check(check_id, *args, a=None, r=None, certificates=None) -> CheckReport:
    """Uniform entry point used by the session runner and the CLI."""
    if check_id in _BOUNDS:
        M = args[0]
        N = args[1] if len(args) > 1 else None
        return evaluate_bound(check_id, M, N, a=a, r=r, certificates=certificates)
    if check_id in ("g-vanish", "gc-vanish"):
        M = args[0]
        N = args[1] if len(args) > 1 else None
        return verify_vanishing(check_id, M, N, a=a, r=r or 0,
                                certificates=certificates)
    if check_id == "gor-ht2":
        return verify_vanishing(check_id, args[0], certificates=certificates)
    if check_id in _FORMULAS:
        return verify_formula(check_id, *args, certificates=certificates)
    if check_id in _FREENESS:
        M = args[0]
        N = args[1] if len(args) > 1 else None
        return freeness_criterion(check_id, M, N=N, a=a, r=r,
                                  certificates=certificates)
    if check_id == "yoshida_report":
        return yoshida_report(args[0], args[1], certificates=certificates)
    raise UnsupportedInput(f"unknown check id {check_id!r}")


def assert_sound(report: CheckReport, context: str = ""):
    """Abort on a failing proven statement (engine-bug gate)."""
    if report.check in PROVEN and report.verdict == "fails":
        raise SoundnessError(
            f"proven check {report.check} failed"
            + (f" on {context}" if context else "")
            + f": lhs={report.lhs!r} rhs={report.rhs!r}")
    return report


_KIND = {}
for _id in _BOUNDS:
    _KIND[_id] = "bound"
for _id in ("g-vanish", "gc-vanish", "gor-ht2"):
    _KIND[_id] = "vanishing"
for _id in _FORMULAS:
    _KIND[_id] = "formula"
for _id in _FREENESS:
    _KIND[_id] = "freeness"
_KIND["depth_sequence"] = "depth-sequence"
_KIND["yoshida_report"] = "equality-report"

_STATEMENTS = {
    "lemma-0": "h0(M(x)N) <= length(M) * mu(N) for finite-length M",
    "lemma-red": "h0(M(x)N) <= h0(M)mu(N) + h0(N)mu(N) + h0 of the torsion-free-quotients tensor",
    "prop-vector": "h0(M(x)N) <= sum_i beta_i(M) h^i(N) when pd(M) < depth and N is a punctured vector bundle",
    "prop-cvector": "h0(M(x)N) <= d*hdeg(M)hdeg(N), or (d+1)*hdeg*hdeg - 1 at maximal pd, over a regular base",
    "cor-1d": "h0(M(x)N) < (d+1)hdeg(M)hdeg(N) in low dimension with torsion-free/reflexive shapes",
    "cor-jac": "Jacobian-colength bound for h0(M(x)N) over 1-dimensional domains",
    "prop-v5": "h0(M(x)N) <= beta_2(N) * length of the transpose of the dual, over Gorenstein isolated singularities",
    "prop-buchs": "h0(M(x)N) < 3 hdeg hdeg for perfect pd-1 M and Buchsbaum N (2 hdeg hdeg at positive depth)",
    "fact-3ht": "h0(M(x)N) < 16 hdeg(M) hdeg(N) for torsion-free modules over a 3-dimensional regular base",
    "prop-vector2": "h^i(M(x)N) <= sum_j beta_j(M) h^{j+i}(N) for i < dim M, M perfect, N a punctured bundle",
    "vasc-81": "h0(M(x)M) <= d((d-1)deg(M) + colength of the maximal minors)^2 for presentation-shaped M",
    "g-vanish": "grade sums >= dim + r + 1 with finite pd(M) and one locally free factor kill H^0..H^r of the tensor",
    "gc-vanish": "same vanishing with both projective dimensions finite over a positive-depth base",
    "gor-ht2": "h0(I(x)I) = 0 for a height-two complete intersection over a regular base of dimension > 2",
    "f-m2": "h0(m(x)m) = 1 over a 2-dimensional regular base",
    "f-param": "h0(I(x)I) = length(R/I) for full parameter ideals over 2-dimensional CM domains",
    "f-claimA": "h-values of I(x)m: (beta_2(R/I), mu(I)+length(R/I), 0, ...) for m-primary I over a CM base",
    "f-55i": "h-values of m(x)m: (C(d,2), d+1, 0, ...) over a d-dimensional regular base",
    "f-55ii": "h-values of Syz_{d-1}(k)(x)its dual: (0,1,d,0,...,0,d), and the tensor is quasi-Buchsbaum",
    "f-54": "the dual of m is free of rank one and h2(m(x)m*) = 0 when the base has depth >= 3",
    "f-kan": "h^i(omega(x)omega*) is nonzero exactly for i <= 1 and i = dim, over CM isolated non-Gorenstein bases",
    "f-tor1": "Tor_1(omega, omega) is nonzero when the base has type 2",
    "f-tach": "Ext^1(omega, R) vanishes exactly for Gorenstein bases; nonzero demanded at type 2",
    "f-dualpair": "lengths of H^j(A(x)B) and H^{d+1-j}(A*(x)B*) agree for punctured bundles over a regular base",
    "f-bv": "length Ext^i(L,N) = h^{i+1}(N(x)L*) for punctured bundles L and depth(N) >= 3",
    "free-2au": "over a 2-dimensional regular base, h0(M(x)M) = 0 iff torsion-free M is free",
    "free-t2": "torsion-free square plus finite pd over a depth-2 base forces freeness",
    "free-t3": "torsion-free cube for a reflexive finite-pd module over a 3-dimensional CM base forces freeness",
    "free-hyp2": "torsion-free square over a 2-dimensional normal hypersurface forces freeness",
    "free-518": "vanishing of H^r_a of the (d-r)-th power for an (S_r) module locally free off a forces freeness",
    "free-laun": "H^0_a = H^1_a(M(x)M*) = 0 with positive grade and local freeness off a forces freeness",
    "free-sph1": "grade(a,M) + grade(a,M*) >= dim + 2 with finite pd forces freeness",
    "sph-equiv": "depth pairing, torsion-freeness of M(x)M*, and spherical Ext vanishing agree over hypersurfaces",
    "refl-516": "a torsion-free tensor product over a hypersurface forces one factor to be reflexive",
    "depth_sequence": "depths of tensor powers with grade lower bounds and closed formulas at finite pd",
    "yoshida_report": "per-index comparison of h^i(M(x)N) with the Betti-weighted sum of h^{j+i}(N)",
}


def registry_table():
    """Stable documentation table for every registered check id."""
    rows = []
    for cid in sorted(_STATEMENTS):
        rows.append({
            "id": cid,
            "kind": _KIND[cid],
            "statement": _STATEMENTS[cid],
            "proven": cid in PROVEN,
        })
    return rows


ALL_CHECK_IDS = tuple(sorted(_STATEMENTS))
