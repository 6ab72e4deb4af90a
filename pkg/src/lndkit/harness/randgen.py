"""Seeded random instance generators and the randomized property families.

Everything is deterministic given the seed: generators derive their
randomness from ``random.Random(seed)`` only, and every emitted instance
is re-verified against the property it was constructed to have before it
leaves the generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..context import VarContext
from ..derivation import Derivation, is_fixed_point_free, is_triangular, nilpotency_verdict
from ..groebner import ideal_member
from ..linalg import RowSpace, vec_of
from ..polynomial import Polynomial
from ..slices import RetractionSpec, dixmier, find_slice, lnd_from_retraction, verify_slice_theorem
from ..subalgebra import Subalgebra


@dataclass(frozen=True)
class TriangularProfile:
    num_coeff_vars: int = 1
    image_degree: int = 3
    fpf: bool = True

    def __post_init__(self):
        if not 0 <= self.num_coeff_vars <= 2:
            raise ValueError("at most two coefficient variables are supported")
        if not 1 <= self.image_degree <= 3:
            raise ValueError("image degree must be between 1 and 3")


_COEFF_NAMES = ("t", "u")


def _context(profile: TriangularProfile) -> VarContext:
    return VarContext(_COEFF_NAMES[: profile.num_coeff_vars], ("X", "Y"))


def _rand_coeff(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([n for n in range(-4, 5) if n]), rng.choice([1, 1, 2]))


def _rand_poly(rng, ctx, names, degree, terms, allow_zero=True) -> Polynomial:
    idx = [ctx.index(n) for n in names]
    out = {}
    lo = 0 if allow_zero else 1
    for _ in range(rng.randint(lo, terms)):
        mono = [0] * ctx.nvars
        for _ in range(rng.randint(0, degree)):
            mono[rng.choice(idx)] += 1
        out[tuple(mono)] = _rand_coeff(rng)
    return Polynomial(ctx, out)


def random_triangular_lnd(seed: int, profile: TriangularProfile = TriangularProfile()) -> Derivation:
    """Deterministic-by-seed triangular derivation on two main variables.

    With ``fpf`` requested the construction arranges a unit in the image
    ideal and the fixed-point-free verdict is re-checked before returning;
    without it the images generate a proper ideal, also re-checked.
    """
    rng = random.Random(seed)
    ctx = _context(profile)
    coeff = ctx.coeff_vars
    deg = profile.image_degree
    while True:
        if profile.fpf:
            if rng.random() < 0.5 or not coeff:
                img_x = Polynomial.constant(ctx, _rand_coeff(rng))
                img_y = _rand_poly(rng, ctx, coeff + ("X",), deg, 3)
            else:
                p = _rand_poly(rng, ctx, coeff, deg - 1, 2, allow_zero=False)
                if p.is_zero():
                    continue
                q = _rand_poly(rng, ctx, coeff + ("X",), deg - (p.degree() or 0), 2)
                img_x = p
                img_y = Polynomial.one(ctx) - p * q
            d = Derivation(ctx, {"X": img_x, "Y": img_y})
            if is_fixed_point_free(d) is None:
                continue
        else:
            shape = rng.random()
            if shape < 0.5:
                img_x = Polynomial.zero(ctx)
                img_y = Polynomial.variable(ctx, "X") * _rand_poly(
                    rng, ctx, coeff + ("X",), deg - 1, 2, allow_zero=False
                )
            else:
                img_x = Polynomial.zero(ctx)
                img_y = _rand_poly(rng, ctx, coeff + ("X",), deg, 2, allow_zero=False)
                if img_y.is_constant():
                    continue
            d = Derivation(ctx, {"X": img_x, "Y": img_y})
            if d.is_zero() or is_fixed_point_free(d) is not None:
                continue
        if is_triangular(d) is None:
            continue
        return d


@dataclass
class FamilyOutcome:
    count: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_slice_pipeline_family(
    seed: int, count: int, profile: TriangularProfile = TriangularProfile(), bound: int = 8
) -> FamilyOutcome:
    """Full pipeline per seeded instance: certify, witness fpf, slice, re-express."""
    failures: list[str] = []
    for k in range(count):
        d = random_triangular_lnd(seed + k, profile)
        label = f"seed {seed + k}: " + ", ".join(
            f"{v}->{d.images[v]}" for v in d.context.main_vars
        )
        verdict = nilpotency_verdict(d)
        if not verdict.certified:
            failures.append(label + " [nilpotency not certified]")
            continue
        witness = is_fixed_point_free(d)
        if witness is None:
            failures.append(label + " [not fixed point free]")
            continue
        acc = Polynomial.zero(d.context)
        for name, cof in witness.items():
            acc = acc + cof * d.images[name]
        if acc != Polynomial.one(d.context):
            failures.append(label + " [cofactor identity broke]")
            continue
        S = Subalgebra.full(d.context)
        s = find_slice(d, S, bound)
        if s is None:
            failures.append(label + f" [no slice up to bound {bound}]")
            continue
        cert = verify_slice_theorem(d, s, S)
        if not hasattr(cert, "reexpression"):
            failures.append(label + " [re-expression incomplete]")
            continue
        target = Subalgebra(d.context, S.base_generators, cert.kernel_generators + (s,))
        for g, w in zip(S.algebra_generators, cert.reexpression):
            if w.evaluate(target) != g:
                failures.append(label + f" [witness for {g} failed]")
                break
    return FamilyOutcome(count, failures)


def run_falling_factorial_family(seed: int, count: int, max_power: int = 5) -> FamilyOutcome:
    """Iterated images of a*W^m under a retraction-composed derivation.

    Checks D^i(a*W^m) == m(m-1)...(m-i+1) * a * W^(m-i) exactly for all
    1 <= i <= m+1 (the last one vanishing), with a fixed by the retraction.
    """
    rng = random.Random(seed)
    ctx = VarContext(("t",), ("W", "U1", "U2"))
    failures: list[str] = []
    w = Polynomial.variable(ctx, "W")
    for k in range(count):
        if rng.random() < 0.5:
            spec = RetractionSpec(
                Subalgebra.full(ctx),
                "W",
                {
                    "U1": Polynomial.variable(ctx, "U1"),
                    "U2": Polynomial.variable(ctx, "U2"),
                },
            )
            alpha_names = ("t", "U1", "U2")
        else:
            S = Subalgebra(
                ctx,
                (Polynomial.variable(ctx, "t"),),
                (w, Polynomial.variable(ctx, "U1")),
            )
            spec = RetractionSpec(
                S,
                "W",
                {
                    "U1": Polynomial.variable(ctx, "U1"),
                    "U2": _rand_poly(rng, ctx, ("t", "U1"), 3, 3),
                },
            )
            alpha_names = ("t", "U1")
        rd = lnd_from_retraction(spec)
        alpha = _rand_poly(rng, ctx, alpha_names, 3, 3, allow_zero=False)
        m = rng.randint(1, max_power)
        f = alpha * w ** m
        expected_factor = 1
        ok = True
        for i in range(1, m + 2):
            if i <= m:
                expected_factor *= m - i + 1
                expected = expected_factor * alpha * w ** (m - i)
            else:
                expected = Polynomial.zero(ctx)
            if rd.iterate_composed(f, i) != expected:
                failures.append(f"case {k}: m={m} i={i} alpha={alpha}")
                ok = False
                break
        if not ok:
            continue
    return FamilyOutcome(count, failures)


def run_groebner_oracle_family(seed: int, count: int, oracle_degree: int = 6) -> FamilyOutcome:
    """Membership engine vs. a brute-force bounded-degree linear oracle.

    On every instance where the oracle certifies membership the engine
    must too, and every engine Yes must recombine to the target exactly.
    """
    rng = random.Random(seed)
    ctx = VarContext((), ("X", "Y"))
    failures: list[str] = []
    monos = [
        (i, j) for i in range(oracle_degree + 1) for j in range(oracle_degree + 1 - i)
    ]
    for k in range(count):
        gens = [
            _rand_poly(rng, ctx, ("X", "Y"), 3, 3, allow_zero=False)
            for _ in range(rng.randint(1, 3))
        ]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        target = _rand_poly(rng, ctx, ("X", "Y"), 3, 3)
        if rng.random() < 0.4:
            # force a membership instance so the Yes path is exercised
            mult = _rand_poly(rng, ctx, ("X", "Y"), 2, 2)
            target = gens[0] * mult
        space = RowSpace()
        for gi, g in enumerate(gens):
            for m in monos:
                space.insert(vec_of(Polynomial(ctx, {m: Fraction(1)}) * g), (gi, m))
        oracle = space.express(vec_of(target))
        verdict = ideal_member(target, gens)
        label = f"case {k}: {target} in <{'; '.join(str(g) for g in gens)}>"
        if oracle is not None and verdict is None:
            failures.append(label + " [oracle found a witness, engine said No]")
            continue
        if verdict is not None:
            acc = Polynomial.zero(ctx)
            for c, g in zip(verdict, gens):
                acc = acc + c * g
            if acc != target:
                failures.append(label + " [cofactors do not recombine]")
    return FamilyOutcome(count, failures)


def run_projection_law_family(seed: int, count: int) -> FamilyOutcome:
    """The kernel projection is a ring homomorphism killing its argument's image."""
    rng = random.Random(seed)
    failures: list[str] = []
    for k in range(count):
        d = random_triangular_lnd(seed * 1_000_003 + k, TriangularProfile(fpf=True))
        ctx = d.context
        S = Subalgebra.full(ctx)
        s = find_slice(d, S, 8)
        if s is None:
            failures.append(f"case {k}: no slice")
            continue
        p = _rand_poly(rng, ctx, ctx.variables, 2, 3)
        q = _rand_poly(rng, ctx, ctx.variables, 2, 3)
        lhs = dixmier(d, s, p * q)
        rhs = dixmier(d, s, p) * dixmier(d, s, q)
        if lhs != rhs or not d.apply(lhs).is_zero():
            failures.append(f"case {k}: projection law failed on {p} and {q}")
    return FamilyOutcome(count, failures)
