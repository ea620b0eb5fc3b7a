"""Shared seeded generators for the property suites."""

from __future__ import annotations

import random

from tensorcoh.kernel import AmbientRing
from tensorcoh.modules import Ideal, QuotientRing

_VARS = ["x", "y", "z"]
_RING_CACHE = {}


def ring_n(n: int) -> QuotientRing:
    if n not in _RING_CACHE:
        _RING_CACHE[n] = QuotientRing(AmbientRing(_VARS[:n]))
    return _RING_CACHE[n]


def rand_monomial(rng: random.Random, ring, max_deg=4):
    n = ring.ambient.n
    exps = [0] * n
    for _ in range(rng.randint(1, max_deg)):
        exps[rng.randrange(n)] += 1
    text = "*".join(f"{v}^{e}" for v, e in zip(ring.ambient.names, exps) if e)
    return ring.poly(text)


def rand_artinian_ideal(rng, ring, max_deg=4) -> Ideal:
    gens = [ring.poly(f"{v}^{rng.randint(1, max_deg)}") for v in ring.ambient.names]
    for _ in range(rng.randint(0, 2)):
        gens.append(rand_monomial(rng, ring, max_deg))
    return Ideal(ring, gens)


def rand_monomial_ideal(rng, ring, max_deg=4) -> Ideal:
    gens = [rand_monomial(rng, ring, max_deg) for _ in range(rng.randint(1, 3))]
    return Ideal(ring, gens)


def rand_module(rng, ring):
    """Random cyclic quotient or ideal-as-module (both nonzero)."""
    if rng.random() < 0.5:
        return rand_monomial_ideal(rng, ring).quotient()
    return rand_monomial_ideal(rng, ring).module()


def rand_finite_length_module(rng, ring):
    return rand_artinian_ideal(rng, ring).quotient()
