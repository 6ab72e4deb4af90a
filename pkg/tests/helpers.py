"""Shared test utilities: seeded random polynomials and contexts."""

from __future__ import annotations

import random
from fractions import Fraction

from lndkit import Polynomial, VarContext


def rand_coeff(rng: random.Random) -> Fraction:
    num = rng.choice([n for n in range(-5, 6) if n])
    den = rng.choice([1, 1, 2, 3])
    return Fraction(num, den)


def rand_poly(
    rng: random.Random,
    ctx: VarContext,
    max_degree: int = 3,
    max_terms: int = 4,
    names: tuple[str, ...] | None = None,
    allow_zero: bool = True,
) -> Polynomial:
    """Random sparse polynomial in the given variables (all by default)."""
    if names is None:
        names = ctx.variables
    idx = [ctx.index(n) for n in names]
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        mono = [0] * ctx.nvars
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            mono[rng.choice(idx)] += 1
        terms[tuple(mono)] = rand_coeff(rng)
    return Polynomial(ctx, terms)
