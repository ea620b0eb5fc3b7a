"""Seeded property suites: oracle cross-checks on randomized instances."""

from __future__ import annotations

import math
import random

from conftest import (
    rand_artinian_ideal, rand_finite_length_module, rand_module,
    rand_monomial_ideal, ring_n,
)
from tensorcoh.modules import tensor
from tensorcoh.invariants import (
    degree, depth, dim, gamma_m, grade, h, h0_sat, hdeg, is_torsion_free,
    length, mu, pd_S, serre_Sr,
)
from tensorcoh.resolutions import pd as pd_of, resolve, tor_module
from tensorcoh import checks
from tensorcoh.explore import explore

N_TRIALS = 50


def _ring(rng):
    return ring_n(rng.randint(2, 3))


def test_h0_duality_equals_saturation():
    rng = random.Random(101)
    for _ in range(N_TRIALS):
        M = rand_module(rng, _ring(rng))
        assert h(M, 0) == h0_sat(M)


def test_grade_depth_auslander_buchsbaum():
    rng = random.Random(102)
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        M = rand_module(rng, ring)
        d = depth(M)
        assert d == ring.ambient.n - pd_S(M)
        assert d == grade(ring.irrelevant_ideal(), M)


def test_h_vanishes_above_dim_and_h0_is_length_in_dim_zero():
    rng = random.Random(103)
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        M = rand_module(rng, ring)
        dM = dim(M)
        for i in range(dM + 1, ring.ambient.n + 2):
            assert h(M, i) == 0
        if dM <= 0:
            assert h(M, 0) == length(M)


def test_serre_s1_is_torsion_freeness_on_domains():
    rng = random.Random(104)
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        M = rand_module(rng, ring)
        assert serre_Sr(M, 1) == is_torsion_free(M)


def test_finite_length_bound_never_violated():
    rng = random.Random(105)
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        M = rand_finite_length_module(rng, ring)
        N = rand_module(rng, ring)
        rep = checks.evaluate_bound("lemma-0", M, N)
        checks.assert_sound(rep, "random finite-length instance")
        assert rep.verdict == "holds"
        assert rep.lhs <= rep.rhs  # monotone consistency of the crude bound


def test_reduction_bound_never_violated():
    rng = random.Random(106)
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        M = rand_module(rng, ring)
        N = rand_module(rng, ring)
        rep = checks.evaluate_bound("lemma-red", M, N)
        checks.assert_sound(rep, "random reduction instance")
        assert rep.verdict == "holds"


def test_explorer_soundness_gate():
    rows = explore("lemma-0", N_TRIALS, 107)
    assert len(rows) == N_TRIALS
    for row in rows:
        if row["ratio"]:
            num, _, den = row["ratio"].partition("/")
            assert int(num) <= int(den or 1)


def test_tor_symmetry():
    rng = random.Random(108)
    for _ in range(20):
        ring = _ring(rng)
        M = rand_finite_length_module(rng, ring)
        N = rand_module(rng, ring)
        assert length(tor_module(M, N, 1, over="S")) == \
            length(tor_module(N, M, 1, over="S"))


def test_depth_formula_when_tor_vanishes():
    # rigidity cross-check: vanishing higher Tor forces pd and depth to add
    rng = random.Random(109)
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        A = rand_module(rng, ring)
        B = rand_module(rng, ring)
        pa, pb = pd_S(A), pd_S(B)
        if any(not tor_module(A, B, i, over="S").is_zero() for i in range(1, pa + 1)):
            continue
        T = tensor(A, B)
        assert pd_S(T) == pa + pb
        assert depth(T) == depth(A) + depth(B) - ring.ambient.n


def test_hdeg_gates():
    rng = random.Random(110)
    seen_cm = seen_zero = 0
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        M = rand_module(rng, ring)
        # generic gate: hdeg dominates both the multiplicity and mu
        assert hdeg(M) >= degree(M)
        assert hdeg(M) >= mu(M) or dim(M) > 0
        if dim(M) <= 0:
            assert hdeg(M) == length(M)
            seen_zero += 1
        if not M.is_zero() and depth(M) == dim(M):
            assert hdeg(M) == degree(M)
            seen_cm += 1
        G, emb = gamma_m(M)
        if not G.is_zero():
            from tensorcoh.modules import quotient_by_submodule
            Mbar = quotient_by_submodule(M, emb)
            assert hdeg(Mbar) == hdeg(M) - length(G)
    assert seen_cm >= 5 and seen_zero >= 1


def test_mu_at_most_hdeg_corpus_wide():
    from tensorcoh import corpus
    rng = random.Random(111)
    for _ in range(N_TRIALS):
        ring = _ring(rng)
        N = rand_module(rng, ring)
        assert mu(N) <= hdeg(N)
