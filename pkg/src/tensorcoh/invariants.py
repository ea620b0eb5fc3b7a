"""Numerical invariants: Hilbert series, dim, degree, length, depth, grade,
local cohomology lengths h^i via graded duality, hdeg, canonical module,
Jacobian ideal, and the predicate suite."""

from __future__ import annotations

import math
from functools import reduce
from itertools import combinations
from math import comb

from .groebner import ModuleGB
from .kernel import UnsupportedInput
from .modules import (
    GradedModule,
    Ideal,
    QuotientRing,
    _det,
    eval_map,
    fitting,
    saturate,
    tensor,
)
from .resolutions import ext_S, ext_module, resolve


class HilbertSeries:
    """numerator / prod_v (1 - t^{deg v}), numerator a Laurent polynomial."""

    def __init__(self, numerator: dict, weights):
        self.numerator = {j: c for j, c in numerator.items() if c}
        self.weights = tuple(weights)

    @property
    def n(self):
        return len(self.weights)

    def _reduced(self):
        """(g, a) with numerator = (1-t)^a * g and g(1) != 0."""
        num = dict(self.numerator)
        a = 0
        while num:
            q = _divide_by_one_minus_t(num)
            if q is None:
                break
            num = q
            a += 1
        return num, a

    def dim(self) -> int:
        """Krull dimension; -1 for the zero module."""
        if not self.numerator:
            return -1
        _g, a = self._reduced()
        return self.n - a

    def degree(self) -> int:
        """Multiplicity (= length when dim <= 0); 0 for the zero module."""
        if not self.numerator:
            return 0
        g, _a = self._reduced()
        val = sum(g.values())
        wprod = reduce(lambda x, y: x * y, self.weights, 1)
        if val % wprod:
            raise RuntimeError("non-integral multiplicity (engine bug)")
        return val // wprod

    def length(self):
        if not self.numerator:
            return 0
        if self.dim() > 0:
            return math.inf
        return self.degree()

    def values(self, upto: int):
        """Hilbert function values in degrees min..upto."""
        if not self.numerator:
            return {}
        lo = min(self.numerator)
        coeffs = {j: c for j, c in self.numerator.items()}
        for w in self.weights:
            # multiply by 1/(1-t^w) = 1 + t^w + t^{2w} + ...
            out = {}
            for d in range(lo, upto + 1):
                out[d] = coeffs.get(d, 0) + (out.get(d - w, 0) if d - w >= lo else 0)
            coeffs = out
        return {d: c for d, c in coeffs.items() if lo <= d <= upto}

    def canonical(self):
        return (tuple(sorted(self.numerator.items())), self.weights)

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and other.canonical() == self.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        terms = " + ".join(f"{c}*t^{j}" for j, c in sorted(self.numerator.items()))
        return f"<HilbertSeries ({terms or '0'}) / prod(1-t^w), w={self.weights}>"


def _divide_by_one_minus_t(num: dict):
    """Quotient of num by (1 - t), or None when it does not divide."""
    if not num:
        return {}
    lo = min(num)
    hi = max(num)
    q = {}
    carry = 0
    for d in range(lo, hi + 1):
        carry += num.get(d, 0)
        if d < hi and carry:
            q[d] = carry
    # exact division iff the top coefficient of the quotient vanishes
    if carry:
        return None
    return q


def hilbert_series(M: GradedModule) -> HilbertSeries:
    if M._hilbert is None:
        res = resolve(M, over="S")
        num = {}
        for i, tws in enumerate(res.twists):
            s = 1 if i % 2 == 0 else -1
            for t in tws:
                num[t] = num.get(t, 0) + s
        M._hilbert = HilbertSeries(num, M.ring.ambient.degrees)
    return M._hilbert


def dim(M: GradedModule) -> int:
    return hilbert_series(M).dim()


def degree(M: GradedModule) -> int:
    return hilbert_series(M).degree()


def length(M: GradedModule):
    return hilbert_series(M).length()


def mu(M: GradedModule) -> int:
    return M.mu()


def ring_dim(ring: QuotientRing) -> int:
    if ring._dim is None:
        ring._dim = dim(ring.one_module())
    return ring._dim


def ring_degree(ring: QuotientRing) -> int:
    if ring._degree is None:
        ring._degree = degree(ring.one_module())
    return ring._degree


def rank(M: GradedModule) -> int:
    """Generic rank over a certified domain, via multiplicity ratio."""
    ring = M.ring
    if not ring.domain:
        raise UnsupportedInput("rank needs a certified domain base ring")
    if M.is_zero():
        return 0
    if dim(M) < ring_dim(ring):
        return 0
    dm, dr = degree(M), ring_degree(ring)
    if dm % dr:
        raise RuntimeError("non-integral rank over a domain (engine bug)")
    return dm // dr


def pd_S(M: GradedModule) -> int:
    p = resolve(M, over="S").pd()
    return max(p, 0) if isinstance(p, int) else p


def depth(M: GradedModule) -> int:
    """depth_m(M) = n - pd_S(M) (Auslander-Buchsbaum over the ambient)."""
    if M.is_zero():
        raise UnsupportedInput("depth of the zero module is undefined")
    p = resolve(M, over="S").pd()
    return M.ring.ambient.n - p


def grade(a: Ideal, M: GradedModule):
    """grade(a, M) = least i with Ext^i_R(R/a, M) != 0; infinite iff M = aM."""
    ring = M.ring
    Q = a.quotient()
    if M.is_zero() or tensor(Q, M).is_zero():
        return math.inf
    dr = ring_dim(ring)
    over = "S" if ring.is_ambient else "R"
    resolve(Q, over=over, bound=dr + 1)
    for i in range(dr + 1):
        if not ext_module(Q, M, i, over=over).is_zero():
            return i
    raise RuntimeError("grade exceeded dim R on a module with M != aM (engine bug)")


def h(M: GradedModule, i: int):
    """h^i(M) = length of H^i_m(M), by graded local duality; may be infinite."""
    if i < 0:
        raise ValueError("negative cohomological degree")
    if M.is_zero():
        return 0
    amb = M.ring.ambient
    n = amb.n
    if i > dim(M) or i > n:
        return 0
    E = ext_S(M, n - i, twist=amb.sigma)
    if E.is_zero():
        return 0
    if dim(E) > 0:
        return math.inf
    return length(E)


def h_vector(M: GradedModule, upto: int | None = None):
    if upto is None:
        upto = ring_dim(M.ring)
    return [h(M, i) for i in range(upto + 1)]


def h0_sat(M: GradedModule) -> int:
    """Independent oracle for h^0: length of the m-saturation (0 :_M m^inf)."""
    if M.is_zero():
        return 0
    G, _emb = saturate(M, M.ring.irrelevant_ideal())
    val = length(G)
    if val is math.inf:
        raise RuntimeError("m-torsion submodule has positive dimension (engine bug)")
    return val


def gamma_m(M: GradedModule):
    """(H^0_m(M), embedding): the finite-length part of M."""
    return saturate(M, M.ring.irrelevant_ideal())


def hdeg(M: GradedModule) -> int:
    """Cohomological degree: length in dim 0, else multiplicity plus
    binomially weighted hdeg of the dualizing Ext modules."""
    if M.is_zero():
        return 0
    dM = dim(M)
    if dM <= 0:
        return length(M)
    n = M.ring.ambient.n
    out = degree(M)
    for j in range(1, dM + 1):
        E = ext_S(M, n - dM + j, 0)
        if not E.is_zero():
            out += comb(dM - 1, j - 1) * hdeg(E)
    return out


# -- canonical module, type, jacobian -----------------------------------------


def _as_R_module(E: GradedModule, ring: QuotientRing) -> GradedModule:
    """Re-present an S-module annihilated by I as a module over R = S/I."""
    from .modules import GradedMap

    pres = E.minimal_presentation()
    return GradedModule(
        GradedMap(ring, pres.target_twists, pres.source_twists, pres.cols)
    ).minimize()


def canonical(ring: QuotientRing) -> GradedModule:
    """omega_R = Ext^{n-d}_S(R, S(-sigma)); requires R Cohen-Macaulay."""
    amb = ring.ambient
    R1 = ring.one_module()
    d = ring_dim(ring)
    if depth(R1) != d:
        raise UnsupportedInput("canonical module computed only for CM rings")
    E = ext_S(R1, amb.n - d, twist=amb.sigma)
    return _as_R_module(E, ring)


def cm_type(ring: QuotientRing) -> int:
    return canonical(ring).mu()


def is_gorenstein(ring: QuotientRing) -> bool:
    return cm_type(ring) == 1


def jacobian_ideal(ring: QuotientRing) -> Ideal:
    """I plus the codim-sized minors of the Jacobian of the defining equations."""
    amb = ring.ambient
    c = amb.n - ring_dim(ring)
    if c == 0:
        return Ideal(ring, [amb.one()])
    gens = list(ring.ideal_gens)
    jac = [[g.derivative(v) for v in range(amb.n)] for g in gens]
    out = list(gens)
    for rows in combinations(range(len(gens)), c):
        for cols in combinations(range(amb.n), c):
            sub = [[jac[i][j] for j in cols] for i in rows]
            m = ring.nf(_det(sub, amb))
            if m:
                out.append(m)
    return Ideal(ring, out)


# -- predicates -----------------------------------------------------------------


def is_free(M: GradedModule) -> bool:
    return M.is_free()


def is_torsion_free(M: GradedModule) -> bool:
    return eval_map(M).kernel().is_zero()


def is_reflexive(M: GradedModule) -> bool:
    ev = eval_map(M)
    return ev.kernel().is_zero() and ev.cokernel().is_zero()


def annihilated_by_m(M: GradedModule) -> bool:
    """True when every variable kills the module (a k-vector space)."""
    if M.is_zero():
        return True
    ring = M.ring
    amb = ring.ambient
    pres = M.minimal_presentation()
    mgb = ModuleGB(amb, pres.cols, pres.nrows, ring.gb)
    for v in range(amb.n):
        e = [0] * amb.n
        e[v] = 1
        e = tuple(e)
        for i in range(pres.nrows):
            if not mgb.contains({(i, e): 1}):
                return False
    return True


def is_locally_free_off(M: GradedModule, a: Ideal | None = None, cap: int = 20):
    """(flag, complete): is M free away from V(a)?  a = None means a = m.

    Complete for a = m via dim(R/Fitt) <= 0; for general a the containment
    a^t subseteq Fitt is tried for t <= cap (incomplete when it never lands).
    """
    ring = M.ring
    rho = rank(M)
    F = fitting(M, rho)
    if not F.gens:
        return False, True
    if a is None or _same_ideal_as_irrelevant(a):
        return dim(F.quotient()) <= 0, True
    for t in range(1, cap + 1):
        if all(F.contains(g) for g in a.power(t).gens):
            return True, True
    return False, False


def _same_ideal_as_irrelevant(a: Ideal) -> bool:
    m = a.ring.irrelevant_ideal()
    return all(m.contains(g) for g in a.gens) and all(a.contains(g) for g in m.gens)


def is_locally_free_punctured(M: GradedModule) -> bool:
    return is_locally_free_off(M, None)[0]


def serre_Sr(M: GradedModule, r: int) -> bool:
    """(S_r) via the Ext-codimension criterion over the Gorenstein ambient."""
    if M.is_zero():
        return True
    amb = M.ring.ambient
    n = amb.n
    # scan starts right above the codimension of the base ring, so a torsion
    # module over the base is caught (S_1 agrees with torsion-freeness)
    dR = ring_dim(M.ring)
    for i in range(n - dR + 1, n + 1):
        E = ext_S(M, i, 0)
        if not E.is_zero() and dim(E) > n - i - r:
            return False
    return True


def is_quasi_buchsbaum(M: GradedModule):
    """True/False when decidable (generalized CM), None otherwise."""
    if M.is_zero():
        return True
    amb = M.ring.ambient
    n = amb.n
    dM = dim(M)
    for i in range(dM):
        E = ext_S(M, n - i, twist=amb.sigma)
        if E.is_zero():
            continue
        if dim(E) > 0:
            return None
        if not annihilated_by_m(E):
            return False
    return True


# -- report ----------------------------------------------------------------------


def _json_val(v):
    if v is math.inf:
        return "infinite"
    return v


def invariant_report(M: GradedModule, serre_r: int = 1) -> dict:
    """Full invariant set of one module, JSON-ready."""
    ring = M.ring
    if M.is_zero():
        return {
            "dim": -1, "depth": None, "pd": -1, "mu": 0, "length": 0,
            "deg": 0, "rank": 0 if ring.domain else "undefined: non-domain",
            "h": [], "hdeg": 0,
            "flags": {"free": True, "torsion_free": True, "reflexive": True,
                      "locally_free_punctured": True,
                      f"S_{serre_r}": True, "quasi_buchsbaum": True},
        }
    flags = {"free": is_free(M)}
    if ring.domain:
        rk = rank(M)
        flags["torsion_free"] = is_torsion_free(M)
        flags["reflexive"] = is_reflexive(M)
        flags["locally_free_punctured"] = is_locally_free_punctured(M)
    else:
        rk = "undefined: non-domain"
        flags["torsion_free"] = flags["reflexive"] = None
        flags["locally_free_punctured"] = None
    flags[f"S_{serre_r}"] = serre_Sr(M, serre_r)
    flags["quasi_buchsbaum"] = is_quasi_buchsbaum(M)
    return {
        "dim": dim(M),
        "depth": depth(M),
        "pd": resolve(M, over="S").pd(),
        "mu": M.mu(),
        "length": _json_val(length(M)),
        "deg": degree(M),
        "rank": rk,
        "h": [_json_val(x) for x in h_vector(M)],
        "hdeg": hdeg(M),
        "flags": flags,
    }
