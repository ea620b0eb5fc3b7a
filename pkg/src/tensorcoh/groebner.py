"""Groebner machinery for ideals and submodules of graded free modules.

Vectors in a free module of rank r are dicts mapping (position, exponent
tuple) to a nonzero field element.  The module order is position-over-term:
positions compared bottom-up (larger index wins), grevlex on monomials
within a position.  Syzygies are computed by the elimination embedding
F (+) R^t with the F block dominating; the same Groebner basis answers
membership, normal forms, lifts and syzygies.
"""

from __future__ import annotations

from .kernel import AmbientRing, Polynomial, UnsupportedInput


# -- vector helpers -----------------------------------------------------------


def vec_from_poly(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, e): c for e, c in f.coeffs.items()}


def vec_entry(v: dict, pos: int, ring: AmbientRing) -> Polynomial:
    return Polynomial(ring, {e: c for (p, e), c in v.items() if p == pos})

def vec_scale(v: dict, c: int, p: int) -> dict:
    c %= p
    if c == 0:
        return {}
    return {t: (a * c) % p for t, a in v.items()}


def vec_sub_mul(v: dict, c: int, e, g: dict, ring: AmbientRing) -> dict:
    """v - c * x^e * g, in place on a copy of v."""
    p = ring.char
    mul = ring.mono_mul
    out = dict(v)
    for (gp, ge), ga in g.items():
        t = (gp, mul(ge, e))
        b = (out.get(t, 0) - c * ga) % p
        if b:
            out[t] = b
        elif t in out:
            del out[t]
    return out


def vec_is_homogeneous(v: dict, ring: AmbientRing, twists=None) -> bool:
    degs = set()
    for (p, e) in v:
        d = ring.mono_deg(e) + (twists[p] if twists else 0)
        degs.add(d)
    return len(degs) <= 1


def vec_degree(v: dict, ring: AmbientRing, twists) -> int:
    """Twisted degree of a homogeneous vector."""
    for (p, e) in v:
        return ring.mono_deg(e) + twists[p]
    raise ValueError("zero vector has no degree")


def pot_key(ring: AmbientRing, split: int | None = None):
    """Position-over-term key; with split, positions < split dominate."""
    mono_key = ring.mono_key
    if split is None:
        def key(t):
            return (t[0], mono_key(t[1]))
    else:
        def key(t):
            pos = t[0]
            return (1 if pos < split else 0, pos, mono_key(t[1]))
    return key


def vec_lt(v: dict, key):
    return max(v, key=key)


# -- normal form ---------------------------------------------------------------


class _Reducers:
    """Groebner reducers indexed by leading position (monic)."""

    def __init__(self, ring, key, vectors=()):
        self.ring = ring
        self.key = key
        self.by_pos = {}
        self.items = []
        for g in vectors:
            self.add(g)

    def add(self, g):
        if not g:
            return
        lt = vec_lt(g, self.key)
        c = g[lt]
        if c != 1:
            g = vec_scale(g, self.ring.field.inv(c), self.ring.char)
        self.by_pos.setdefault(lt[0], []).append((lt[1], g))
        self.items.append((lt, g))

    def find(self, pos, e):
        div = self.ring.mono_div
        for le, g in self.by_pos.get(pos, ()):
            q = div(e, le)
            if q is not None:
                return q, g
        return None


def vec_nf(v: dict, red: _Reducers) -> dict:
    """Full normal form of v against monic reducers."""
    ring = red.ring
    key = red.key
    p = ring.char
    work = dict(v)
    result = {}
    while work:
        t = max(work, key=key)
        hit = red.find(t[0], t[1])
        if hit is None:
            result[t] = work.pop(t)
        else:
            q, g = hit
            work = vec_sub_mul(work, work[t], q, g, ring)
    return result


# -- Buchberger -----------------------------------------------------------------


def _spair_data(ring, key, gi, gj):
    ti = vec_lt(gi, key)
    tj = vec_lt(gj, key)
    if ti[0] != tj[0]:
        return None
    lcm = ring.mono_lcm(ti[1], tj[1])
    return lcm


def module_buchberger(gens, ring: AmbientRing, key, interreduce: bool = True):
    """Reduced monic Groebner basis of the submodule generated by gens."""
    import heapq

    G = []
    for g in gens:
        if g:
            lt = vec_lt(g, key)
            G.append(vec_scale(g, ring.field.inv(g[lt]), ring.char))
    lms = [vec_lt(g, key) for g in G]
    single_pos = [len({p for (p, _e) in g}) == 1 for g in G]
    red = _Reducers(ring, key, G)

    mul = ring.mono_mul
    div = ring.mono_div

    heap = []
    for j in range(len(G)):
        for i in range(j):
            lcm = _spair_data(ring, key, G[i], G[j])
            if lcm is not None:
                heapq.heappush(heap, (ring.mono_deg(lcm), i, j, lcm))
    while heap:
        deg, i, j, lcm = heapq.heappop(heap)
        pi, ei = lms[i]
        pj, ej = lms[j]
        # product criterion (only valid when both vectors live in one position)
        if single_pos[i] and single_pos[j] and lcm == mul(ei, ej):
            continue
        # chain criterion: a third leading term properly inside the lcm
        skip = False
        lcm_f = ring.mono_lcm
        for k in range(len(G)):
            if k in (i, j) or lms[k][0] != pi:
                continue
            ek = lms[k][1]
            if div(lcm, ek) is None:
                continue
            if lcm_f(ei, ek) != lcm and lcm_f(ej, ek) != lcm:
                skip = True
                break
        if skip:
            continue
        qi = div(lcm, ei)
        qj = div(lcm, ej)
        s = vec_sub_mul({}, -1, qi, G[i], ring)  # +x^qi * gi
        s = vec_sub_mul(s, 1, qj, G[j], ring)    # -x^qj * gj
        s = vec_nf(s, red)
        if s:
            lt = vec_lt(s, key)
            s = vec_scale(s, ring.field.inv(s[lt]), ring.char)
            G.append(s)
            lms.append(lt)
            single_pos.append(len({p for (p, _e) in s}) == 1)
            red.add(s)
            new = len(G) - 1
            for i2 in range(new):
                lcm2 = _spair_data(ring, key, G[i2], G[new])
                if lcm2 is not None:
                    heapq.heappush(heap, (ring.mono_deg(lcm2), i2, new, lcm2))

    if not interreduce:
        return G

    # minimalize: drop elements whose LT is divisible by another's LT
    order = sorted(range(len(G)), key=lambda i: key(lms[i]))
    keep = []
    for i in order:
        p, e = lms[i]
        if not any(lms[k][0] == p and div(e, lms[k][1]) is not None for k in keep):
            keep.append(i)
    Gmin = [G[i] for i in keep]
    # tail-reduce each against the others
    out = []
    for i in range(len(Gmin)):
        others = Gmin[:i] + Gmin[i + 1:]
        r = vec_nf(Gmin[i], _Reducers(ring, key, others))
        if r:
            lt = vec_lt(r, key)
            out.append(vec_scale(r, ring.field.inv(r[lt]), ring.char))
    out.sort(key=lambda g: key(vec_lt(g, key)), reverse=True)
    return out


# -- elimination engine (membership / lifts / syzygies over S or S/I) -----------


class ModuleGB:
    """Groebner data for the R-submodule of R^rank generated by cols.

    R = S/I is presented by iquot (generators of I over the ambient S); the
    computation lifts to S, appends I times each basis vector, and runs
    Buchberger under the elimination order where the rank original positions
    dominate the appended syzygy coordinates.
    """

    def __init__(self, ring: AmbientRing, cols, rank: int, iquot=()):
        self.ring = ring
        self.rank = rank
        self.ncols = len(cols)
        self.key = pot_key(ring, split=rank)
        gens = []
        for idx, col in enumerate(cols):
            g = dict(col)
            g[(rank + idx, ring._zero_exp)] = 1
            gens.append(g)
        for q in iquot:
            for j in range(rank):
                if q:
                    gens.append(vec_from_poly(q, j))
        self.gb = module_buchberger(gens, ring, self.key)
        self._red = _Reducers(ring, self.key, self.gb)

    def reduce_full(self, w: dict) -> dict:
        return vec_nf(dict(w), self._red)

    def nf(self, w: dict) -> dict:
        """Normal form of w in R^rank against the column module."""
        r = self.reduce_full(w)
        return {t: c for t, c in r.items() if t[0] < self.rank}

    def contains(self, w: dict) -> bool:
        return not self.nf(w)

    def lift(self, w: dict):
        """Coefficients h with w = sum h_i * col_i in R^rank, or None."""
        r = self.reduce_full(w)
        if any(t[0] < self.rank for t in r):
            return None
        p = self.ring.char
        return {(t[0] - self.rank, t[1]): (p - c) % p for t, c in r.items()}

    def basis_of_columns(self):
        """Groebner basis of the column module (projection to R^rank)."""
        out = []
        for g in self.gb:
            lt = vec_lt(g, self.key)
            if lt[0] < self.rank:
                out.append({t: c for t, c in g.items() if t[0] < self.rank})
        return out

    def syzygies(self):
        """Generators of the syzygy module of the columns, over R."""
        out = []
        for g in self.gb:
            lt = vec_lt(g, self.key)
            if lt[0] >= self.rank:
                out.append({(t[0] - self.rank, t[1]): c for t, c in g.items()})
        return out


# -- polynomial-level API ---------------------------------------------------------


def _require_same_ring(polys):
    rings = {f.ring for f in polys if isinstance(f, Polynomial)}
    if len(rings) > 1:
        from .kernel import RingMismatch

        raise RingMismatch("polynomials from different rings")


def reduce_poly(f: Polynomial, G) -> Polynomial:
    """Normal form of f modulo the polynomials G (reducers in given order)."""
    G = list(G)
    _require_same_ring([f] + G)
    ring = f.ring
    key = pot_key(ring)
    red = _Reducers(ring, key, [vec_from_poly(g) for g in G if g])
    r = vec_nf(vec_from_poly(f), red)
    return Polynomial(ring, {e: c for (_p, e), c in r.items()})


def buchberger(gens) -> list:
    """Unique reduced monic Groebner basis of a homogeneous ideal."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    _require_same_ring(gens)
    ring = gens[0].ring
    for g in gens:
        if not g.is_homogeneous():
            raise UnsupportedInput("inhomogeneous generator; the engine is graded-only")
    key = pot_key(ring)
    gb = module_buchberger([vec_from_poly(g) for g in gens], ring, key)
    return [Polynomial(ring, {e: c for (_p, e), c in g.items()}) for g in gb]
