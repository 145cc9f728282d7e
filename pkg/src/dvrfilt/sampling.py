"""Seeded random element generation, stratified by valuation.

Elements are drawn as pi^k * u with k uniform in a window and u a random
unit (bounded numerator and denominator coprime to the uniformizer), so
every valuation stratum in the window is covered.  All functions consume
an explicit ``random.Random`` and are deterministic given its state.
"""

from __future__ import annotations

import random

from .elements import PADIC, FieldElement, FieldSpec, pi_power, poly


def _random_poly_unit(rng: random.Random, p: int) -> tuple:
    # nonzero constant term => t-order 0
    deg = rng.randrange(0, 4)
    if p:
        cs = [rng.randrange(p) for _ in range(deg + 1)]
        cs[0] = rng.randrange(1, p)
        if deg and cs[-1] == 0:
            cs[-1] = rng.randrange(1, p)
    else:
        cs = [rng.randrange(-5, 6) for _ in range(deg + 1)]
        cs[0] = rng.choice((1, 2, 3, -1, -2, 5))
        if deg and cs[-1] == 0:
            cs[-1] = rng.choice((1, -1, 2))
    return poly(cs, p)


def random_unit(field: FieldSpec, rng: random.Random) -> FieldElement:
    """A random element of valuation exactly 0."""
    if field.kind == PADIC:
        p = field.param
        num = rng.randrange(1, 50)
        while num % p == 0:
            num = rng.randrange(1, 50)
        den = rng.randrange(1, 50)
        while den % p == 0:
            den = rng.randrange(1, 50)
        if rng.random() < 0.5:
            num = -num
        return FieldElement(field, num, den)
    return FieldElement(field, _random_poly_unit(rng, field.param), _random_poly_unit(rng, field.param))


def random_nonzero_element(
    field: FieldSpec, rng: random.Random, kmin: int = -6, kmax: int = 6
) -> FieldElement:
    return pi_power(field, rng.randint(kmin, kmax)) * random_unit(field, rng)


def random_element(field: FieldSpec, rng: random.Random, kmin: int = -6, kmax: int = 6) -> FieldElement:
    """Like :func:`random_nonzero_element` but zero with probability 1/12."""
    if rng.randrange(12) == 0:
        return FieldElement.zero(field)
    return random_nonzero_element(field, rng, kmin, kmax)


def random_ring_element(field: FieldSpec, rng: random.Random) -> FieldElement:
    return random_element(field, rng, kmin=0, kmax=6)


def random_level_element(field: FieldSpec, rng: random.Random, n: int) -> FieldElement:
    """A random member of the level set {v >= n} (zero included occasionally)."""
    return pi_power(field, n) * random_ring_element(field, rng)


def random_nonzero_level_element(field: FieldSpec, rng: random.Random, n: int) -> FieldElement:
    return pi_power(field, n + rng.randint(0, 6)) * random_unit(field, rng)


def random_maximal_ideal_element(field: FieldSpec, rng: random.Random) -> FieldElement:
    """A random nonzero element of valuation >= 1."""
    return random_nonzero_level_element(field, rng, 1)
