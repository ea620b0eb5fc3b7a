"""Free resolutions, Betti tables, and Ext/Tor via explicit subquotients."""

from __future__ import annotations

from .kernel import UnsupportedInput
from .modules import (
    GradedMap,
    GradedModule,
    QuotientRing,
    _concat_maps,
    _top_block_syzygies,
    minimalize_complex,
    syzygies,
)


class BettiTable:
    """Graded Betti numbers beta_{i,j}; reliable for i <= reliable_len."""

    def __init__(self, entries: dict, reliable_len: int, terminated: bool):
        self.entries = dict(entries)  # (i, j) -> count
        self.reliable_len = reliable_len
        self.terminated = terminated

    def beta(self, i: int, j: int | None = None) -> int:
        if j is not None:
            return self.entries.get((i, j), 0)
        return sum(c for (i2, _j), c in self.entries.items() if i2 == i)

    def totals(self):
        top = max((i for (i, _j) in self.entries), default=-1)
        return [self.beta(i) for i in range(top + 1)]

    def as_json(self) -> dict:
        return {f"{i},{j}": c for (i, j), c in sorted(self.entries.items())}

    def text(self) -> str:
        """Staircase layout: row d lists beta_{i, i+d}."""
        if not self.entries:
            return "(zero module)"
        imax = max(i for (i, _j) in self.entries)
        dvals = sorted({j - i for (i, j) in self.entries})
        lines = []
        header = ["d\\i"] + [str(i) for i in range(imax + 1)]
        rows = [header]
        for d in dvals:
            row = [str(d)]
            for i in range(imax + 1):
                c = self.entries.get((i, i + d), 0)
                row.append(str(c) if c else ".")
            rows.append(row)
        widths = [max(len(r[k]) for r in rows) for k in range(imax + 2)]
        for r in rows:
            lines.append("  ".join(s.rjust(w) for s, w in zip(r, widths)))
        return "\n".join(lines)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and other.entries == self.entries

    def __repr__(self):
        return f"<BettiTable {self.totals()}{'' if self.terminated else ' (truncated)'}>"


class Resolution:
    """A (graded, minimal) free resolution F_0 <- F_1 <- ... of a module.

    Over the ambient polynomial ring the resolution always terminates; over a
    proper quotient it is truncated at the bound and pd() returns a lower
    bound sentinel when unfinished.
    """

    def __init__(self, ring, twists, maps, terminated, bound):
        self.ring = ring
        self.twists = [tuple(t) for t in twists]
        self.maps = maps
        self.terminated = terminated
        self.bound = bound

    def length(self) -> int:
        return len(self.twists) - 1

    def rank(self, i: int) -> int:
        if i < 0:
            return 0
        if i < len(self.twists):
            return len(self.twists[i])
        if self.terminated:
            return 0
        raise UnsupportedInput(f"resolution truncated below homological degree {i}")

    def reliable_len(self) -> int:
        if self.terminated:
            return self.length()
        return len(self.twists) - 2

    def betti(self) -> BettiTable:
        entries = {}
        top = self.length() if self.terminated else self.reliable_len()
        for i in range(top + 1):
            for j in self.twists[i]:
                entries[(i, j)] = entries.get((i, j), 0) + 1
        return BettiTable(entries, top, self.terminated)

    def pd(self):
        """Projective dimension, or ('ge', bound) when truncated."""
        if self.terminated:
            top = len(self.twists) - 1
            while top >= 0 and not self.twists[top]:
                top -= 1
            return top  # -1 for the zero module
        return ("ge", self.reliable_len())

    def map(self, i: int) -> GradedMap:
        """The differential F_i -> F_{i-1} (i >= 1)."""
        if 1 <= i <= len(self.maps):
            return self.maps[i - 1]
        if self.terminated:
            src = self.twists[i] if i < len(self.twists) else ()
            tgt = self.twists[i - 1] if i - 1 < len(self.twists) else ()
            return GradedMap(self.ring, tgt, src, [{} for _ in src], normalize=False)
        raise UnsupportedInput(f"resolution truncated below homological degree {i}")

    def syzygy_module(self, i: int) -> GradedModule:
        """Syz_i(M) = coker of the differential F_{i+1} -> F_i ... presented
        by the image of d_{i+1} inside F_i."""
        if i == 0:
            return GradedModule(self.map(1))
        return GradedModule(self.map(i + 1))


def resolve(M: GradedModule, over: str = "S", bound: int | None = None) -> Resolution:
    """Minimal graded free resolution of M over S or over its base ring R.

    Minimalization is interleaved: each new syzygy map is pruned before the
    next kernel, so intermediate ranks stay at the Betti numbers.
    """
    if over not in ("S", "R"):
        raise ValueError("over must be 'S' or 'R'")
    ring = M.ring
    amb = ring.ambient
    if over == "S" or ring.is_ambient:
        over = "S"
        base = ring.ambient_q()
        pres = M.s_presentation()
    else:
        base = ring
        pres = M.minimal_presentation()
    if bound is None:
        bound = amb.n + 1
    cached = M._resolutions.get(over)
    if cached is not None and (cached.terminated or cached.bound >= bound):
        return cached

    T = [list(pres.target_twists), list(pres.source_twists)]
    D = [[dict(c) for c in pres.cols]]
    T, D = minimalize_complex(T, D, base)
    terminated = not T[1]
    limit = bound + 1 if over == "R" else max(bound + 1, amb.n + 2)
    while not terminated and len(D) < limit:
        last = GradedMap(base, T[-2], T[-1], D[-1], normalize=False)
        K = syzygies(last)
        if K.ncols == 0:
            terminated = True
            break
        T.append(list(K.source_twists))
        D.append([dict(c) for c in K.cols])
        T, D = minimalize_complex(T, D, base)
        if not T[-1]:
            T.pop()
            D.pop()
            terminated = True
    if over == "S" and not terminated:
        raise RuntimeError("resolution over the polynomial ring did not terminate")
    maps = []
    for i, cols in enumerate(D):
        maps.append(GradedMap(base, T[i], T[i + 1], cols, normalize=False))
    res = Resolution(base, T, maps, terminated, bound)
    M._resolutions[over] = res
    return res


def betti(M: GradedModule, over: str = "S", bound: int | None = None) -> BettiTable:
    return resolve(M, over, bound).betti()


def pd(M: GradedModule, over: str = "S", bound: int | None = None):
    return resolve(M, over, bound).pd()


def transpose_module(M: GradedModule, over: str = "R") -> GradedModule:
    """Auslander transpose: cokernel of the dualized minimal presentation."""
    if over == "R" and not M.ring.is_ambient:
        A = resolve(M, over="R", bound=2).map(1)
    else:
        A = resolve(M, over="S", bound=2).map(1)
    return GradedModule(A.transpose_map()).minimize()


# -- homology of complexes of finitely presented modules -------------------------


def _free_kernel_then_subquotient(dnext: GradedMap, next_rels, mid_rels_cols,
                                  mid_rels_stw, img_cols, img_stw) -> GradedModule:
    """H = ker(dnext mod next_rels) / (im + mid relations) at the middle spot.

    dnext acts on free covers; next_rels/mid_rels present the actual modules.
    """
    U = _top_block_syzygies(dnext, next_rels[0], next_rels[1])
    rest_cols = list(img_cols) + list(mid_rels_cols)
    rest_stw = list(img_stw) + list(mid_rels_stw)
    rel = _top_block_syzygies(U, rest_cols, rest_stw)
    return GradedModule(rel).minimize()


def _hom_complex_maps(res: Resolution, N: GradedModule, i: int):
    """Free-cover data for Hom(F_i, N) and the two adjacent differentials."""
    ring = N.ring
    B = N.minimal_presentation()
    g0 = B.nrows

    def cover(k):
        tws = [-t for t in res.twists[k]] if k <= res.length() else []
        ttw = []
        cols = []
        stw = []
        for idx, t in enumerate(tws):
            ttw.extend(tw + t for tw in B.target_twists)
            for c in range(B.ncols):
                cols.append({(idx * g0 + p, e): cf for (p, e), cf in B.cols[c].items()})
                stw.append(B.source_twists[c] + t)
        return ttw, cols, stw

    def induced(k):
        # Hom(F_{k-1}, N) -> Hom(F_k, N) from d_k: F_k -> F_{k-1}
        d = res.map(k)
        src_ttw, _c, _s = cover(k - 1)
        tgt_ttw, _c2, _s2 = cover(k)
        cols = []
        for r in range(d.nrows):
            for j in range(g0):
                col = {}
                for c in range(d.ncols):
                    f = d.entry(r, c)
                    for e, cf in f.coeffs.items():
                        col[(c * g0 + j, e)] = cf
                cols.append(col)
        return GradedMap(ring, tgt_ttw, src_ttw, cols, normalize=False)

    return cover, induced


def ext_module(M: GradedModule, N: GradedModule, i: int, over: str = "R") -> GradedModule:
    """Ext^i(M, N) as a finitely presented graded module."""
    if i < 0:
        return None
    ring = N.ring
    if over == "S" and not ring.is_ambient:
        raise UnsupportedInput("ext over S needs modules presented over S")
    res = resolve(M, over=over, bound=i + 1)
    if not res.terminated and res.reliable_len() < i + 1:
        raise UnsupportedInput("resolution too short for the requested ext")
    if i > res.length():
        from .modules import zero_module

        return zero_module(ring)
    cover, induced = _hom_complex_maps(res, N, i)
    _t_mid, mid_cols, mid_stw = cover(i)
    next_ttw, next_cols, next_stw = cover(i + 1)
    if i + 1 > res.length():
        dnext = GradedMap(ring, [], [t for t in cover(i)[0]],
                          [{} for _ in cover(i)[0]], normalize=False)
    else:
        dnext = induced(i + 1)
    if i == 0:
        img_cols, img_stw = [], []
    else:
        dprev = induced(i)
        img_cols, img_stw = dprev.cols, dprev.source_twists
    return _free_kernel_then_subquotient(
        dnext, (next_cols, next_stw), mid_cols, mid_stw, img_cols, img_stw
    )


def ext_S(M: GradedModule, i: int, twist: int = 0) -> GradedModule:
    """Ext^i_S(M, S(-twist)) for an R-module M, computed over the ambient S."""
    base = M.ring.ambient_q()
    N = base.free([twist])
    res = resolve(M, over="S", bound=max(i + 1, M.ring.ambient.n + 1))
    # N is free: covers are plain duals, no block relations
    ring = base
    if i > res.length():
        from .modules import zero_module

        return zero_module(base)

    def dual_twists(k):
        return [twist - t for t in res.twists[k]] if k <= res.length() else []

    if i + 1 > res.length():
        dnext = GradedMap(ring, [], dual_twists(i), [{} for _ in dual_twists(i)],
                          normalize=False)
    else:
        dnext = res.map(i + 1).transpose_map()
        dnext = GradedMap(ring, [t + twist for t in dnext.target_twists],
                          [t + twist for t in dnext.source_twists], dnext.cols,
                          normalize=False)
    if i == 0:
        img_cols, img_stw = [], []
    else:
        dprev = res.map(i).transpose_map()
        img_cols = dprev.cols
        img_stw = [t + twist for t in dprev.source_twists]
    return _free_kernel_then_subquotient(dnext, ([], []), [], [], img_cols, img_stw)


def tor_module(M: GradedModule, N: GradedModule, i: int, over: str = "R") -> GradedModule:
    """Tor_i(M, N) from a resolution of M tensored with N."""
    ring = N.ring
    if i == 0:
        from .modules import tensor

        return tensor(M, N)
    res = resolve(M, over=over, bound=i + 1)
    if not res.terminated and res.reliable_len() < i + 1:
        raise UnsupportedInput("resolution too short for the requested tor")
    if i > res.length():
        from .modules import zero_module

        return zero_module(ring)
    B = N.minimal_presentation()
    g0 = B.nrows

    def cover(k):
        tws = res.twists[k] if k <= res.length() else []
        ttw = []
        cols = []
        stw = []
        for idx, t in enumerate(tws):
            ttw.extend(tw + t for tw in B.target_twists)
            for c in range(B.ncols):
                cols.append({(idx * g0 + p, e): cf for (p, e), cf in B.cols[c].items()})
                stw.append(B.source_twists[c] + t)
        return ttw, cols, stw

    def induced(k):
        # F_k (x) N -> F_{k-1} (x) N
        d = res.map(k)
        tgt_ttw, _c, _s = cover(k - 1)
        src_ttw, _c2, _s2 = cover(k)
        cols = []
        for c in range(d.ncols):
            for j in range(g0):
                col = {}
                for (r, e), cf in d.cols[c].items():
                    col[(r * g0 + j, e)] = cf
                cols.append(col)
        return GradedMap(ring, tgt_ttw, src_ttw, cols, normalize=False)

    _t_mid, mid_cols, mid_stw = cover(i)
    next_ttw, next_cols, next_stw = cover(i - 1)
    dnext = induced(i)  # boundary out of spot i (homological indexing)
    if i + 1 > res.length():
        img_cols, img_stw = [], []
    else:
        dprev = induced(i + 1)
        img_cols, img_stw = dprev.cols, dprev.source_twists
    return _free_kernel_then_subquotient(
        dnext, (next_cols, next_stw), mid_cols, mid_stw, img_cols, img_stw
    )


def complex_homology(maps, twists, ring, i) -> GradedModule:
    """Homology ker(d_i)/im(d_{i+1}) of a complex of free modules (Koszul etc).

    maps[k] is the differential F_{k+1} -> F_k; twists[k] are F_k's twists.
    """
    from .modules import zero_module

    n = len(maps)
    if i < 0 or i > n:
        return zero_module(ring)
    if i == 0:
        dout = GradedMap(ring, [], twists[0], [{} for _ in twists[0]], normalize=False)
    else:
        dout = maps[i - 1]
    U = _top_block_syzygies(dout, [], [])
    if i < n:
        img_cols, img_stw = maps[i].cols, maps[i].source_twists
    else:
        img_cols, img_stw = [], []
    rel = _top_block_syzygies(U, img_cols, img_stw)
    return GradedModule(rel).minimize()
