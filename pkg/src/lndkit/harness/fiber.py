"""Sampled fiber witnesses: specialization at a rational base point.

A witness claims coordinates for the fiber of a subalgebra over one
rational point of the base.  Both containments are checked by bounded
membership after specialization: every claimed coordinate lies in the
specialized algebra, and every specialized generator lies in the algebra
the coordinates generate.  This is a per-point check, never a statement
about all primes at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..context import VarContext
from ..errors import DomainError
from ..polynomial import Polynomial
from ..subalgebra import Subalgebra, subalgebra_member


@dataclass(frozen=True)
class FiberWitness:
    point: dict[str, Fraction]  # one value per coefficient variable
    coordinates: tuple[Polynomial, ...]  # claimed fiber coordinates (main variables only)
    bound: int

    def __hash__(self):
        return hash((tuple(sorted(self.point.items())), self.coordinates, self.bound))


@dataclass(frozen=True)
class FiberCheck:
    passed: bool
    direction: str | None  # which containment failed
    element: Polynomial | None


def check_fiber_witness(S: Subalgebra, witness: FiberWitness) -> FiberCheck:
    ctx = S.context
    if set(witness.point) != set(ctx.coeff_vars):
        raise DomainError("the witness point must assign every coefficient variable")
    fiber_ctx = VarContext((), ctx.main_vars)
    rename = {
        name: Polynomial.variable(fiber_ctx, name) for name in ctx.main_vars
    }
    bindings = dict(witness.point) | rename

    def specialize(p: Polynomial) -> Polynomial:
        return p.substitute(bindings, context=fiber_ctx)

    specialized = [specialize(g) for g in S.algebra_generators]
    live = tuple(g for g in specialized if not (g.is_zero() or g.is_constant()))
    coords = tuple(specialize(c) for c in witness.coordinates)
    for c in coords:
        if c.is_zero() or c.is_constant():
            raise DomainError(f"claimed coordinate {c} specializes to a constant")

    fiber_algebra = Subalgebra(fiber_ctx, (), _dedupe(live)) if live else None
    coord_algebra = Subalgebra(fiber_ctx, (), _dedupe(coords))

    for c in coords:
        if fiber_algebra is None or subalgebra_member(c, fiber_algebra, witness.bound) is None:
            return FiberCheck(False, "coordinate-not-in-fiber", c)
    for g in live:
        if subalgebra_member(g, coord_algebra, witness.bound) is None:
            return FiberCheck(False, "generator-not-reachable", g)
    return FiberCheck(True, None, None)


def _dedupe(polys) -> tuple[Polynomial, ...]:
    out: list[Polynomial] = []
    for p in polys:
        if p not in out:
            out.append(p)
    return tuple(out)
