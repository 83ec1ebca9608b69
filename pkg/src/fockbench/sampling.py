"""Seeded random scalars, one-particle vectors and Fock vectors for the check suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .fock import FockVector, OneParticleVector, Workspace, occupation_indices
from .scalars import GaussianRational

# numerators and denominators of random exact coordinates stay within this bound
BOUND = 16


def rational(rng: random.Random, bound: int = BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def scalar(rng: random.Random, ws: Workspace, bound: int = BOUND):
    if ws.exact:
        return GaussianRational(rational(rng, bound), rational(rng, bound))
    return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))


def nonzero_scalar(rng: random.Random, ws: Workspace):
    while True:
        c = scalar(rng, ws)
        if c:
            return c


def one_particle(rng: random.Random, ws: Workspace) -> OneParticleVector:
    return ws.one_particle([scalar(rng, ws) for _ in range(ws.d)])


def unit_vector(rng: random.Random, ws: Workspace) -> OneParticleVector:
    """A random unit vector; exactly unit on the exact backend.

    Exact points come from inverse stereographic projection of a random
    rational point of R^(2d-1) onto the unit sphere of C^d = R^(2d).
    """
    if not ws.exact:
        coords = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(ws.d)]
        norm = sum(abs(c) ** 2 for c in coords) ** 0.5
        return ws.one_particle([c / norm for c in coords])
    t = [rational(rng, 4) for _ in range(2 * ws.d - 1)]
    s = sum(x * x for x in t)
    real = [2 * x / (s + 1) for x in t] + [(s - 1) / (s + 1)]
    rng.shuffle(real)
    return ws.one_particle([GaussianRational(real[2 * i], real[2 * i + 1])
                            for i in range(ws.d)])


def fock_vector(rng: random.Random, ws: Workspace, max_grade: int | None = None,
                max_terms: int = 8, grade: int | None = None) -> FockVector:
    """Random sparse vector with 1..max_terms nonzero monomials.

    ``grade`` makes it homogeneous; otherwise grades run up to ``max_grade``.
    """
    if grade is not None:
        pool = list(occupation_indices(ws.d, grade))
    else:
        pool = list(ws.indices(ws.n_max if max_grade is None else max_grade))
    chosen = rng.sample(pool, rng.randint(1, min(max_terms, len(pool))))
    return FockVector(ws, {alpha: nonzero_scalar(rng, ws) for alpha in chosen})
