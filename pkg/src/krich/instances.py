"""Seeded random instances.

Every generator takes a :class:`random.Random`; rationals have numerators
in ``[-10, 10]`` and denominators in ``[1, 10]`` unless stated otherwise.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .algebra import Monomial, OrderSpec, Polynomial
from .groebner import enumerate_monomials
from .laurent import ParamChange

__all__ = [
    "BOUND",
    "rng_for",
    "rational",
    "nonzero_rational",
    "g1n2_tuple",
    "rank1_matrix",
    "rank2_matrix",
    "hyperelliptic_coefficients",
    "param_change",
    "divisor",
    "homogeneous_ideal",
]

BOUND = 10


def rng_for(seed: int, label: str) -> random.Random:
    """Independent stream per (seed, label), stable across runs and platforms."""
    return random.Random(f"{seed}:{label}")


def rational(rng: random.Random, bound: int = BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def nonzero_rational(rng: random.Random, bound: int = BOUND) -> Fraction:
    while True:
        q = rational(rng, bound)
        if q:
            return q


def g1n2_tuple(rng: random.Random) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """``(a, b, e, pi)``; ``a = 0`` (the second point on a rational tail) is allowed."""
    return rational(rng), rational(rng), rational(rng), rational(rng)


def rank1_matrix(rng: random.Random) -> list[list[Fraction]]:
    u = [nonzero_rational(rng) for _ in range(2)]
    v = [nonzero_rational(rng) for _ in range(4)]
    return [[x * y for y in v] for x in u]


def rank2_matrix(rng: random.Random) -> list[list[Fraction]]:
    while True:
        m = [[rational(rng) for _ in range(4)] for _ in range(2)]
        if any(m[0][i] * m[1][j] - m[0][j] * m[1][i] for i in range(4) for j in range(i + 1, 4)):
            return m


def hyperelliptic_coefficients(rng: random.Random, g: int) -> list[Fraction]:
    return [rational(rng) for _ in range(2 * g)]


def param_change(rng: random.Random, n: int, order: int) -> ParamChange:
    return ParamChange(tuple(tuple(rational(rng) for _ in range(order)) for _ in range(n)))


def divisor(rng: random.Random, n: int, top: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, top) for _ in range(n))


def homogeneous_ideal(rng: random.Random, nvars: int, maxdeg: int = 3, count: int | None = None,
                      density: float = 0.6) -> tuple[list[Polynomial], OrderSpec]:
    """Random homogeneous ideal in ``x1..x_nvars`` (standard grading, grevlex ties)."""
    names = [f"x{k}" for k in range(1, nvars + 1)]
    deg = {v: 1 for v in names}
    order = OrderSpec.from_degrees(deg, {v: 0 for v in names}, names)
    count = count or rng.randint(1, nvars + 1)
    gens = []
    while len(gens) < count:
        d = rng.randint(1, maxdeg)
        mons = [m for m in enumerate_monomials(names, deg, d) if m.total_degree() == d]
        terms = {m: rational(rng) for m in mons if rng.random() < density}
        p = Polynomial(terms)
        if p:
            gens.append(p)
    return gens, order


def monomials_of_degree(names: Sequence[str], d: int) -> list[Monomial]:
    deg = {v: 1 for v in names}
    return [m for m in enumerate_monomials(names, deg, d) if m.total_degree() == d]
