"""Finitely presented graded modules over R = S/I and their operations.

A module is the cokernel of a degree-compatible map of twisted graded free
modules.  All computations run over the ambient polynomial ring S: a
computation over a proper quotient R lifts columns to S and appends I times
each basis vector (see groebner.ModuleGB).
"""

from __future__ import annotations

from .kernel import AmbientRing, Polynomial, RingMismatch, UnsupportedInput
from .groebner import (
    ModuleGB,
    buchberger,
    reduce_poly,
    vec_degree,
    vec_entry,
    vec_from_poly,
    vec_is_homogeneous,
)


class QuotientRing:
    """R = S/I for a homogeneous ideal I (possibly zero, giving R = S)."""

    def __init__(self, ambient: AmbientRing, ideal_gens=(), domain: bool | None = None):
        self.ambient = ambient
        gens = [g for g in ideal_gens if g]
        for g in gens:
            if g.ring != ambient:
                raise RingMismatch("ideal generator from a different ring")
            if not g.is_homogeneous():
                raise UnsupportedInput("defining ideal must be homogeneous")
        self.ideal_gens = tuple(gens)
        self.gb = tuple(buchberger(gens)) if gens else ()
        # corpus-supplied certificate; primality is never decided here
        self.domain = (domain if domain is not None else not gens)
        self._dim = None
        self._ambient_q = None
        self._degree = None

    @property
    def is_ambient(self) -> bool:
        return not self.gb

    def ambient_q(self) -> "QuotientRing":
        """The ambient S viewed as a quotient ring (for S-level computations)."""
        if self.is_ambient:
            return self
        if self._ambient_q is None:
            self._ambient_q = QuotientRing(self.ambient, (), domain=True)
        return self._ambient_q

    def nf(self, f: Polynomial) -> Polynomial:
        if not self.gb or not f:
            return f
        return reduce_poly(f, self.gb)

    def col_nf(self, col: dict) -> dict:
        """Reduce every entry of a column mod the defining ideal."""
        if not self.gb:
            return col
        out = {}
        positions = sorted({p for (p, _e) in col})
        for p in positions:
            f = self.nf(vec_entry(col, p, self.ambient))
            for e, c in f.coeffs.items():
                out[(p, e)] = c
        return out

    def poly(self, text: str) -> Polynomial:
        return self.nf(self.ambient.poly(text))

    def free(self, twists) -> "GradedModule":
        return free_module(self, twists)

    def one_module(self) -> "GradedModule":
        return free_module(self, [0])

    def irrelevant_ideal(self) -> "Ideal":
        return Ideal(self, self.ambient.gens())

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and other.ambient == self.ambient
            and other.gb == self.gb
        )

    def __hash__(self):
        return hash((self.ambient, self.gb))

    def __repr__(self):
        if self.is_ambient:
            return repr(self.ambient)
        return f"{self.ambient!r}/({', '.join(str(g) for g in self.ideal_gens)})"


class GradedMap:
    """Degree-compatible matrix between twisted graded free modules.

    Columns are stored as vectors {(row, exponent): coeff}; column j is
    homogeneous of degree source_twists[j] - 0 relative to target twists.
    """

    __slots__ = ("ring", "target_twists", "source_twists", "cols")

    def __init__(self, ring: QuotientRing, target_twists, source_twists, cols, normalize=True):
        self.ring = ring
        self.target_twists = tuple(target_twists)
        self.source_twists = tuple(source_twists)
        if normalize and ring.gb:
            cols = [ring.col_nf(col) for col in cols]
        self.cols = [dict(col) for col in cols]
        if len(self.cols) != len(self.source_twists):
            raise ValueError("column count does not match source twists")
        amb = ring.ambient
        for j, col in enumerate(self.cols):
            for (p, e) in col:
                if p >= len(self.target_twists):
                    raise ValueError("row index out of range")
                if amb.mono_deg(e) + self.target_twists[p] != self.source_twists[j]:
                    raise UnsupportedInput(
                        f"entry at row {p}, column {j} is not degree-compatible"
                    )

    @classmethod
    def from_entries(cls, ring, entries, target_twists=None, source_twists=None):
        """Build from a rows x cols matrix of polynomials, inferring twists."""
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        amb = ring.ambient
        ents = [[ring.nf(f) for f in row] for row in entries]
        if target_twists is None:
            target_twists = [0] * nrows
        target_twists = list(target_twists)
        if source_twists is None:
            source_twists = []
            for j in range(ncols):
                tw = None
                for i in range(nrows):
                    f = ents[i][j]
                    if f:
                        if not f.is_homogeneous():
                            raise UnsupportedInput("matrix entries must be homogeneous")
                        tw = f.degree() + target_twists[i]
                        break
                if tw is None:
                    raise UnsupportedInput(
                        f"cannot infer the degree of zero column {j}"
                    )
                source_twists.append(tw)
        cols = []
        for j in range(ncols):
            col = {}
            for i in range(nrows):
                for e, c in ents[i][j].coeffs.items():
                    col[(i, e)] = c
            cols.append(col)
        return cls(ring, target_twists, source_twists, cols, normalize=False)

    @property
    def nrows(self):
        return len(self.target_twists)

    @property
    def ncols(self):
        return len(self.source_twists)

    def entry(self, i: int, j: int) -> Polynomial:
        return vec_entry(self.cols[j], i, self.ring.ambient)

    def entries(self):
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def has_constant_entry(self) -> bool:
        z = self.ring.ambient._zero_exp
        return any(t[1] == z for col in self.cols for t in col)

    def transpose_map(self) -> "GradedMap":
        """The dual map between dualized free modules (twists negated)."""
        cols = []
        for i in range(self.nrows):
            col = {}
            for j in range(self.ncols):
                for e, c in self.cols[j].items():
                    if e[0] == i:
                        col[(j, e[1])] = c
            cols.append(col)
        return GradedMap(
            self.ring,
            [-t for t in self.source_twists],
            [-t for t in self.target_twists],
            cols,
            normalize=False,
        )

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other (other's target is self's source)."""
        if other.target_twists != self.source_twists:
            raise ValueError("maps are not composable")
        amb = self.ring.ambient
        cols = []
        for col in other.cols:
            out = {}
            for (j, e), c in col.items():
                for (i, e2), c2 in self.cols[j].items():
                    t = (i, amb.mono_mul(e, e2))
                    b = (out.get(t, 0) + c * c2) % amb.char
                    if b:
                        out[t] = b
                    elif t in out:
                        del out[t]
            cols.append(out)
        return GradedMap(self.ring, self.target_twists, other.source_twists, cols)

    def __repr__(self):
        return f"<GradedMap {self.nrows}x{self.ncols} over {self.ring!r}>"


def _col_mul_poly(col: dict, f: Polynomial, amb: AmbientRing) -> dict:
    out = {}
    p = amb.char
    for (i, e), c in col.items():
        for e2, c2 in f.coeffs.items():
            t = (i, amb.mono_mul(e, e2))
            b = (out.get(t, 0) + c * c2) % p
            if b:
                out[t] = b
            elif t in out:
                del out[t]
    return out


def _col_sub(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for t, c in b.items():
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        elif t in out:
            del out[t]
    return out


def _drop_row(col: dict, r: int) -> dict:
    out = {}
    for (i, e), c in col.items():
        if i == r:
            continue
        out[(i - 1, e) if i > r else (i, e)] = c
    return out


def minimize_presentation(gmap: GradedMap):
    """Cancel nonzero constant entries; returns (map, kept_target_indices).

    Deterministic pivot order: lowest row, then lowest column.
    """
    ring = gmap.ring
    amb = ring.ambient
    z = amb._zero_exp
    cols = [dict(c) for c in gmap.cols]
    ttw = list(gmap.target_twists)
    stw = list(gmap.source_twists)
    kept = list(range(len(ttw)))
    while True:
        pivot = None
        for r in range(len(ttw)):
            for c in range(len(cols)):
                u = cols[c].get((r, z), 0)
                if u:
                    pivot = (r, c, u)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r, c, u = pivot
        uinv = amb.field.inv(u)
        piv_col = cols[c]
        new_cols = []
        for j, col in enumerate(cols):
            if j == c:
                continue
            a_rj = vec_entry(col, r, amb)
            if a_rj:
                col = _col_sub(col, _col_mul_poly(piv_col, a_rj.scale(uinv), amb), amb.char)
                col = ring.col_nf(col)
            new_cols.append((_drop_row(col, r), stw[j]))
        cols = [cc for cc, _ in new_cols]
        stw = [tw for _, tw in new_cols]
        ttw.pop(r)
        kept.pop(r)
    return GradedMap(ring, ttw, stw, cols, normalize=False), kept


def minimalize_complex(twists, maps, ring):
    """Cancel constant entries across a complex F_0 <- F_1 <- ... in place.

    twists[i] are the twists of F_i; maps[i]: F_{i+1} -> F_i.  Returns new
    (twists, maps) as plain lists (cols as dicts).
    """
    amb = ring.ambient
    z = amb._zero_exp
    T = [list(t) for t in twists]
    D = [[dict(c) for c in m] for m in maps]
    changed = True
    while changed:
        changed = False
        for i in range(len(D)):
            pivot = None
            for c in range(len(D[i])):
                for (r, e) in D[i][c]:
                    if e == z:
                        pivot = (r, c, D[i][c][(r, z)])
                        break
                if pivot:
                    break
            if pivot is None:
                continue
            r, c, u = pivot
            uinv = amb.field.inv(u)
            piv = D[i][c]
            newD = []
            for j, col in enumerate(D[i]):
                if j == c:
                    continue
                a = vec_entry(col, r, amb)
                if a:
                    col = _col_sub(col, _col_mul_poly(piv, a.scale(uinv), amb), amb.char)
                    col = ring.col_nf(col)
                newD.append(_drop_row(col, r))
            D[i] = newD
            T[i].pop(r)
            T[i + 1].pop(c)
            if i + 1 < len(D):
                D[i + 1] = [_drop_row(col2, c) for col2 in D[i + 1]]
            if i > 0:
                D[i - 1] = [col2 for k, col2 in enumerate(D[i - 1]) if k != r]
            changed = True
            break
    return T, D


class GradedModule:
    """Cokernel of a graded presentation map over R = S/I."""

    def __init__(self, presentation: GradedMap):
        self.ring = presentation.ring
        self.presentation = presentation
        self._minimal = None
        self._minimal_kept = None
        self._hilbert = None
        self._resolutions = {}

    # -- presentation bookkeeping ------------------------------------------

    @property
    def gens_twists(self):
        return self.presentation.target_twists

    def minimal_presentation(self) -> GradedMap:
        if self._minimal is None:
            self._minimal, self._minimal_kept = minimize_presentation(self.presentation)
        return self._minimal

    def minimal_kept(self):
        self.minimal_presentation()
        return self._minimal_kept

    def minimize(self) -> "GradedModule":
        return GradedModule(self.minimal_presentation())

    def mu(self) -> int:
        """Minimal number of generators."""
        return self.minimal_presentation().nrows

    def is_zero(self) -> bool:
        return self.mu() == 0

    def is_free(self) -> bool:
        return self.minimal_presentation().is_zero()

    def s_presentation(self) -> GradedMap:
        """Presentation over the ambient S (append I times each generator)."""
        ring = self.ring
        pres = self.minimal_presentation()
        if ring.is_ambient:
            return pres
        amb = ring.ambient
        rs = ring.ambient_q()
        cols = [dict(c) for c in pres.cols]
        stw = list(pres.source_twists)
        for j, tw in enumerate(pres.target_twists):
            for q in ring.gb:
                cols.append({(j, e): c for e, c in q.coeffs.items()})
                stw.append(q.degree() + tw)
        return GradedMap(rs, pres.target_twists, stw, cols, normalize=False)

    def twist(self, a: int) -> "GradedModule":
        """M(a): all twists shifted by -a ... i.e. degrees shift by -a."""
        pres = self.presentation
        return GradedModule(
            GradedMap(
                self.ring,
                [t - a for t in pres.target_twists],
                [t - a for t in pres.source_twists],
                pres.cols,
                normalize=False,
            )
        )

    def __repr__(self):
        p = self.presentation
        return f"<GradedModule {p.nrows} gens, {p.ncols} rels over {self.ring!r}>"


# -- constructors ------------------------------------------------------------


def free_module(ring: QuotientRing, twists) -> GradedModule:
    return GradedModule(GradedMap(ring, twists, [], [], normalize=False))


def zero_module(ring: QuotientRing) -> GradedModule:
    return free_module(ring, [])


def module_from_matrix(ring, entries, target_twists=None) -> GradedModule:
    """coker of the matrix (rows of polynomials)."""
    return GradedModule(GradedMap.from_entries(ring, entries, target_twists))


def cyclic_module(ring: QuotientRing, gens) -> GradedModule:
    """R/(gens) as a module."""
    gens = [ring.nf(g) for g in gens]
    gens = [g for g in gens if g]
    if not gens:
        return free_module(ring, [0])
    return module_from_matrix(ring, [gens])


class Ideal:
    """A homogeneous ideal of R, as a generator list with module views."""

    def __init__(self, ring: QuotientRing, gens):
        self.ring = ring
        self.gens = [ring.nf(g) for g in gens]
        for g in self.gens:
            if g and not g.is_homogeneous():
                raise UnsupportedInput("ideal generators must be homogeneous")
        self.gens = [g for g in self.gens if g]
        self._module = None
        self._quotient = None

    def module(self) -> GradedModule:
        """The ideal as an R-module (image of its generators in R)."""
        if self._module is None:
            if not self.gens:
                self._module = zero_module(self.ring)
            else:
                cols = [vec_from_poly(g) for g in self.gens]
                twists = [g.degree() for g in self.gens]
                mgb = ModuleGB(self.ring.ambient, cols, 1, self.ring.gb)
                syz = [self.ring.col_nf(s) for s in mgb.syzygies()]
                syz = [s for s in syz if s]
                stw = [vec_degree(s, self.ring.ambient, twists) for s in syz]
                self._module = GradedModule(
                    GradedMap(self.ring, twists, stw, syz, normalize=False)
                )
        return self._module

    def quotient(self) -> GradedModule:
        """R/I as a module."""
        if self._quotient is None:
            self._quotient = cyclic_module(self.ring, self.gens)
        return self._quotient

    def contains(self, f: Polynomial) -> bool:
        cols = [vec_from_poly(g) for g in self.gens]
        mgb = ModuleGB(self.ring.ambient, cols, 1, self.ring.gb)
        return mgb.contains(vec_from_poly(self.ring.nf(f)))

    def power(self, k: int) -> "Ideal":
        if k == 0:
            return Ideal(self.ring, [self.ring.ambient.one()])
        out = list(self.gens)
        for _ in range(k - 1):
            seen = {}
            for a in out:
                for b in self.gens:
                    f = self.ring.nf(a * b)
                    if f:
                        seen[frozenset(f.coeffs.items())] = f
            out = [seen[key] for key in sorted(seen, key=lambda s: sorted(s))]
        return Ideal(self.ring, out)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"


# -- syzygies -----------------------------------------------------------------


def syzygies(gmap: GradedMap) -> GradedMap:
    """Kernel of a map of free modules, as a map onto its generators.

    Output columns are a Groebner basis of ker(gmap) over R.
    """
    ring = gmap.ring
    amb = ring.ambient
    mgb = ModuleGB(amb, gmap.cols, gmap.nrows, ring.gb)
    syz = [ring.col_nf(s) for s in mgb.syzygies()]
    syz = [s for s in syz if s]
    stw = [vec_degree(s, amb, gmap.source_twists) for s in syz]
    return GradedMap(ring, gmap.source_twists, stw, syz, normalize=False)


def _concat_maps(a: GradedMap, b: GradedMap) -> GradedMap:
    if a.target_twists != b.target_twists:
        raise ValueError("cannot concatenate maps with different targets")
    return GradedMap(
        a.ring,
        a.target_twists,
        list(a.source_twists) + list(b.source_twists),
        list(a.cols) + list(b.cols),
        normalize=False,
    )


def _top_block_syzygies(first: GradedMap, rest_cols, rest_twists):
    """Syzygies of [first | rest]; returns the block of coefficients on first.

    Generates {x : first*x in im(rest)} as columns over first's source.
    """
    ring = first.ring
    amb = ring.ambient
    all_cols = list(first.cols) + list(rest_cols)
    mgb = ModuleGB(amb, all_cols, first.nrows, ring.gb)
    k = first.ncols
    out = []
    for s in mgb.syzygies():
        top = {(p, e): c for (p, e), c in s.items() if p < k}
        top = ring.col_nf(top)
        if top:
            out.append(top)
    # drop duplicate columns deterministically
    seen = set()
    uniq = []
    for c in out:
        sig = tuple(sorted(c.items()))
        if sig not in seen:
            seen.add(sig)
            uniq.append(c)
    stw = [vec_degree(c, amb, first.source_twists) for c in uniq]
    return GradedMap(ring, first.source_twists, stw, uniq, normalize=False)


class Morphism:
    """A map of finitely presented modules, given on generator columns."""

    def __init__(self, source: GradedModule, target: GradedModule, cols):
        self.source = source
        self.target = target
        self.ring = source.ring
        cols = [self.ring.col_nf(dict(c)) for c in cols]
        self.matrix = GradedMap(
            self.ring, target.gens_twists, source.gens_twists, cols, normalize=False
        )

    def kernel_with_embedding(self):
        """(K, U): K fin. presented, U columns embed K's gens into source."""
        tgt_pres = self.target.presentation
        U = _top_block_syzygies(self.matrix, tgt_pres.cols, tgt_pres.source_twists)
        src_pres = self.source.presentation
        V = _top_block_syzygies(U, src_pres.cols, src_pres.source_twists)
        kmod = GradedModule(V)
        kept = kmod.minimal_kept()
        K = kmod.minimize()
        embed = [U.cols[i] for i in kept]
        return K, GradedMap(
            self.ring,
            U.target_twists,
            [U.source_twists[i] for i in kept],
            embed,
            normalize=False,
        )

    def kernel(self) -> GradedModule:
        return self.kernel_with_embedding()[0]

    def cokernel(self) -> GradedModule:
        pres = _concat_maps(self.matrix, self.target.presentation)
        return GradedModule(pres).minimize()

    def image(self) -> GradedModule:
        """Image as a module generated by the columns of the matrix."""
        tgt_pres = self.target.presentation
        rel = _top_block_syzygies(self.matrix, tgt_pres.cols, tgt_pres.source_twists)
        return GradedModule(rel).minimize()

    def is_zero(self) -> bool:
        """Zero as a morphism of modules (columns land in the relations)."""
        tgt = self.target.presentation
        mgb = ModuleGB(self.ring.ambient, tgt.cols, tgt.nrows, self.ring.gb)
        return all(mgb.contains(c) for c in self.matrix.cols)


def submodule(target: GradedModule, cols, col_twists) -> tuple:
    """Submodule of target generated by columns (in generator coordinates).

    Returns (module, embedding map).
    """
    ring = target.ring
    gmap = GradedMap(ring, target.gens_twists, col_twists, cols)
    pres = target.presentation
    rel = _top_block_syzygies(gmap, pres.cols, pres.source_twists)
    smod = GradedModule(rel)
    kept = smod.minimal_kept()
    return smod.minimize(), GradedMap(
        ring,
        gmap.target_twists,
        [gmap.source_twists[i] for i in kept],
        [gmap.cols[i] for i in kept],
        normalize=False,
    )


def quotient_by_submodule(target: GradedModule, embed: GradedMap) -> GradedModule:
    return GradedModule(_concat_maps(embed, target.presentation)).minimize()


# -- tensor / hom / dual ---------------------------------------------------------


def tensor(M: GradedModule, N: GradedModule) -> GradedModule:
    """Presentation of M (x) N over their common base ring."""
    if M.ring != N.ring:
        raise RingMismatch("tensor of modules over different rings")
    ring = M.ring
    A = M.minimal_presentation()
    B = N.minimal_presentation()
    a0, b0 = A.nrows, B.nrows
    ttw = [A.target_twists[i] + B.target_twists[j] for i in range(a0) for j in range(b0)]
    cols = []
    stw = []
    # A (x) id
    for c in range(A.ncols):
        for j in range(b0):
            col = {}
            for (i, e), cf in A.cols[c].items():
                col[(i * b0 + j, e)] = cf
            cols.append(col)
            stw.append(A.source_twists[c] + B.target_twists[j])
    # id (x) B
    for i in range(a0):
        for c in range(B.ncols):
            col = {}
            for (j, e), cf in B.cols[c].items():
                col[(i * b0 + j, e)] = cf
            cols.append(col)
            stw.append(B.source_twists[c] + A.target_twists[i])
    return GradedModule(GradedMap(ring, ttw, stw, cols, normalize=False)).minimize()


def tensor_power(M: GradedModule, k: int, size_cap: int = 20000) -> GradedModule:
    if k == 0:
        return M.ring.one_module()
    out = M.minimize()
    for _ in range(k - 1):
        out = tensor(out, M)
        if out.mu() > size_cap:
            raise UnsupportedInput("presentation-size cap exceeded in tensor power")
    return out


def direct_sum(M: GradedModule, N: GradedModule) -> GradedModule:
    A = M.minimal_presentation()
    B = N.minimal_presentation()
    ttw = list(A.target_twists) + list(B.target_twists)
    cols = [dict(c) for c in A.cols]
    off = A.nrows
    for c in B.cols:
        cols.append({(p + off, e): cf for (p, e), cf in c.items()})
    stw = list(A.source_twists) + list(B.source_twists)
    return GradedModule(GradedMap(M.ring, ttw, stw, cols, normalize=False))


def _free_cover_of_power(N: GradedModule, copies_twists):
    """Free cover and block presentation of (+)_i N(-t_i)."""
    B = N.minimal_presentation()
    g0 = B.nrows
    ttw = []
    for t in copies_twists:
        ttw.extend(tw + t for tw in B.target_twists)
    cols = []
    stw = []
    for i, t in enumerate(copies_twists):
        for c in range(B.ncols):
            cols.append({(i * g0 + p, e): cf for (p, e), cf in B.cols[c].items()})
            stw.append(B.source_twists[c] + t)
    return ttw, cols, stw, g0


def hom_with_embedding(M: GradedModule, N: GradedModule):
    """Hom_R(M, N) with the embedding of its generators into N^{mu(M)}.

    Returns (H, U, block_twists) where U's columns live in the free cover of
    N^{mu(M)} (block i corresponds to the i-th generator of M).
    """
    if M.ring != N.ring:
        raise RingMismatch("hom of modules over different rings")
    ring = M.ring
    A = M.minimal_presentation()
    a0, a1 = A.nrows, A.ncols
    # Hom(F0, N) = (+)_i N(+t_i): copy i twisted by -t_i
    t0 = [-t for t in A.target_twists]
    t1 = [-t for t in A.source_twists]
    h0_ttw, h0_cols, h0_stw, g0 = _free_cover_of_power(N, t0)
    h1_ttw, h1_cols, h1_stw, _ = _free_cover_of_power(N, t1)
    # gen-level matrix of precomposition with A: source gen (i, j) maps to
    # A[i][c] placed in copy c, coordinate j
    phi_cols = []
    for i in range(a0):
        for j in range(g0):
            col = {}
            for c in range(a1):
                f = A.entry(i, c)
                for e, cf in f.coeffs.items():
                    col[(c * g0 + j, e)] = cf
            phi_cols.append(col)
    phi = GradedMap(ring, h1_ttw, h0_ttw, phi_cols, normalize=False)
    U = _top_block_syzygies(phi, h1_cols, h1_stw)
    rel = _top_block_syzygies(U, h0_cols, h0_stw)
    hmod = GradedModule(rel)
    kept = hmod.minimal_kept()
    H = hmod.minimize()
    embed = GradedMap(
        ring,
        U.target_twists,
        [U.source_twists[i] for i in kept],
        [U.cols[i] for i in kept],
        normalize=False,
    )
    return H, embed, t0


def hom(M: GradedModule, N: GradedModule) -> GradedModule:
    return hom_with_embedding(M, N)[0]


def dual(M: GradedModule) -> GradedModule:
    return hom(M, M.ring.one_module())


def eval_map(M: GradedModule) -> Morphism:
    """The natural morphism M -> M**; kernel is torsion, cokernel detects
    reflexivity.  Requires a certified domain base."""
    ring = M.ring
    if not ring.domain:
        raise UnsupportedInput("eval_map requires a certified domain base ring")
    M = M.minimize()
    R1 = ring.one_module()
    Mst, U, _ = hom_with_embedding(M, R1)
    Mss, W, _ = hom_with_embedding(Mst, R1)
    # generator i of M gives the functional (u |-> u(e_i)) on M*
    A = M.minimal_presentation()
    s = Mst.mu()
    amb = ring.ambient
    cols = []
    wgb = ModuleGB(amb, W.cols, s, ring.gb)
    for i in range(A.nrows):
        phi = {}
        for k in range(s):
            f = vec_entry(U.cols[k], i, amb)
            for e, c in f.coeffs.items():
                phi[(k, e)] = c
        lift = wgb.lift(phi)
        if lift is None:
            raise RuntimeError("biduality image failed to lift (engine bug)")
        cols.append(lift)
    return Morphism(M, Mss, cols)


def torsion(M: GradedModule) -> GradedModule:
    """The torsion submodule, as the kernel of the biduality morphism."""
    return eval_map(M).kernel()


# -- fitting ideals, annihilator, saturation ----------------------------------


def _det(entries, amb):
    """Determinant of a small square polynomial matrix (Laplace expansion)."""
    n = len(entries)
    if n == 0:
        return amb.one()
    memo = {}

    def rec(rows, cols):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            out = entries[rows[0]][cols[0]]
        else:
            out = amb.zero()
            r = rows[0]
            rest = rows[1:]
            for idx, c in enumerate(cols):
                f = entries[r][c]
                if not f:
                    continue
                sub = rec(rest, cols[:idx] + cols[idx + 1:])
                term = f * sub
                out = out + (term if idx % 2 == 0 else -term)
        memo[key] = out
        return out

    return rec(tuple(range(n)), tuple(range(n)))


def fitting(M: GradedModule, r: int, size_cap: int = 200000) -> Ideal:
    """Fitting ideal Fitt_r(M): (g - r)-minors of the minimal presentation."""
    from math import comb

    ring = M.ring
    A = M.minimal_presentation()
    g, m = A.nrows, A.ncols
    k = g - r
    if k <= 0:
        return Ideal(ring, [ring.ambient.one()])
    if k > m or k > g:
        return Ideal(ring, [])
    if comb(g, k) * comb(m, k) > size_cap:
        raise UnsupportedInput("fitting ideal too large to expand")
    from itertools import combinations

    ents = A.entries()
    gens = []
    for rows in combinations(range(g), k):
        for cols in combinations(range(m), k):
            sub = [[ents[i][j] for j in cols] for i in rows]
            d = _det(sub, ring.ambient)
            d = ring.nf(d)
            if d:
                gens.append(d)
    return Ideal(ring, gens)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J via the kernel of R -> R/I (+) R/J."""
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring, [])
    if I.quotient().is_zero():
        return J
    if J.quotient().is_zero():
        return I
    T = direct_sum(I.quotient(), J.quotient())
    R1 = ring.one_module()
    phi = Morphism(R1, T, [{(0, ring.ambient._zero_exp): 1, (1, ring.ambient._zero_exp): 1}])
    _k, embed = phi.kernel_with_embedding()
    gens = [vec_entry(c, 0, ring.ambient) for c in embed.cols]
    return Ideal(ring, gens)


def annihilator(M: GradedModule) -> Ideal:
    """(0 :_R M)."""
    ring = M.ring
    A = M.minimal_presentation()
    if A.nrows == 0:
        return Ideal(ring, [ring.ambient.one()])
    out = None
    for i in range(A.nrows):
        e_i = GradedMap(
            ring,
            A.target_twists,
            [A.target_twists[i]],
            [{(i, ring.ambient._zero_exp): 1}],
            normalize=False,
        )
        q = _top_block_syzygies(e_i, A.cols, A.source_twists)
        gens = [vec_entry(c, 0, ring.ambient) for c in q.cols]
        ideal = Ideal(ring, gens)
        out = ideal if out is None else ideal_intersection(out, ideal)
    return out


def torsion_part(M: GradedModule, a: Ideal):
    """(0 :_M a); returns (module, embedding into M's generators)."""
    M = M.minimize()
    gens = a.gens
    if not gens:
        g0 = M.mu()
        z = M.ring.ambient._zero_exp
        ident = GradedMap(
            M.ring,
            M.gens_twists,
            M.gens_twists,
            [{(i, z): 1} for i in range(g0)],
            normalize=False,
        )
        return M, ident
    A = M.minimal_presentation()
    g0 = A.nrows
    # morphism M -> (+)_j M(deg a_j) sending x to (a_1 x, ..., a_t x)
    twisted = [M.twist(g.degree()) for g in gens]
    target = twisted[0]
    for t in twisted[1:]:
        target = direct_sum(target, t)
    cols = []
    for i in range(g0):
        col = {}
        for j, g in enumerate(gens):
            for e, c in g.coeffs.items():
                col[(j * g0 + i, e)] = c
        cols.append(col)
    phi = Morphism(M, target, cols)
    return phi.kernel_with_embedding()


def saturate(M: GradedModule, a: Ideal, max_iter: int = 30):
    """(0 :_M a^infty), iterating (0 :_M a^k) until the chain stabilizes.

    Returns (module, embedding into M's generators).
    """
    M = M.minimize()
    pres = M.minimal_presentation()
    ring = M.ring
    prev = None
    for k in range(1, max_iter + 1):
        K, emb = torsion_part(M, a.power(k))
        if prev is not None:
            # (0 : a^k) always contains (0 : a^{k-1}); stable when it also
            # sits inside it
            pk, pemb = prev
            mgb = ModuleGB(
                ring.ambient,
                list(pemb.cols) + list(pres.cols),
                pres.nrows,
                ring.gb,
            )
            if all(mgb.contains(c) for c in emb.cols):
                return pk, pemb
        prev = (K, emb)
    raise RuntimeError("saturation did not stabilize")


def _module_signature(M: GradedModule):
    A = M.minimal_presentation()
    return (
        A.target_twists,
        A.source_twists,
        tuple(tuple(sorted(c.items())) for c in A.cols),
    )


def iso_candidate(M: GradedModule, N: GradedModule, bound: int | None = None) -> bool:
    """Decidable surrogate for isomorphism: equal Hilbert series and Betti
    tables up to the truncation bound."""
    from .resolutions import resolve
    from .invariants import hilbert_series

    if M.ring != N.ring:
        return False
    if hilbert_series(M) != hilbert_series(N):
        return False
    if bound is None:
        bound = M.ring.ambient.n + 1
    rm = resolve(M, over="S", bound=bound)
    rn = resolve(N, over="S", bound=bound)
    return rm.betti().entries == rn.betti().entries


# -- koszul ---------------------------------------------------------------------


def koszul(seq, ring: QuotientRing | None = None):
    """Koszul complex maps [d_1, ..., d_c] with standard signs."""
    from itertools import combinations

    seq = list(seq)
    if ring is None:
        if not seq:
            raise ValueError("empty sequence needs an explicit ring")
        ring = QuotientRing(seq[0].ring)
    polys = [ring.nf(f) for f in seq]
    for f in polys:
        if not f.is_homogeneous():
            raise UnsupportedInput("Koszul complex needs homogeneous elements")
    c = len(polys)
    degs = [f.degree() for f in polys]
    bases = [list(combinations(range(c), k)) for k in range(c + 1)]
    maps = []
    for k in range(1, c + 1):
        src = bases[k]
        tgt = bases[k - 1]
        tgt_index = {T: i for i, T in enumerate(tgt)}
        ttw = [sum(degs[i] for i in T) for T in tgt]
        stw = [sum(degs[i] for i in T) for T in src]
        cols = []
        for T in src:
            col = {}
            for l, i in enumerate(T):
                rest = tuple(x for x in T if x != i)
                row = tgt_index[rest]
                f = polys[i] if l % 2 == 0 else -polys[i]
                for e, cf in f.coeffs.items():
                    col[(row, e)] = cf
            cols.append(col)
        maps.append(GradedMap(ring, ttw, stw, cols, normalize=False))
    return maps
