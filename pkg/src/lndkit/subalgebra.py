"""Finitely generated subalgebras and bounded-degree exact linear algebra.

A subalgebra is given by base generators (polynomials in the coefficient
variables, generating the base ring) and algebra generators.  Membership,
fixed-point-freeness and kernel computations all search the span of
generator products of bounded *formal degree*: the sum of the formal
exponents weighted by the total degree of each generator.  Bounded
searches are semi-decisions; a miss is reported with its bound, never as
a refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .context import VarContext
from .errors import ContextMismatchError, UnsupportedSizeError
from .derivation import Derivation
from .linalg import RowSpace, canonical_rref, vec_of
from .polynomial import Polynomial

PRODUCT_CAP = 500_000


@dataclass(frozen=True)
class Subalgebra:
    context: VarContext
    base_generators: tuple[Polynomial, ...]
    algebra_generators: tuple[Polynomial, ...]
    full_ring: bool = False

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if g.context != self.context:
                raise ContextMismatchError("generator lives in a foreign context")
            if g.is_zero() or g.is_constant():
                raise ValueError("generators must be nonconstant")
            if g in seen:
                raise ValueError(f"duplicate generator {g}")
            seen.add(g)
        coeff = set(self.context.coeff_vars)
        for g in self.base_generators:
            if not g.involves_only(coeff):
                raise ValueError(f"base generator {g} involves main variables")
        if self.full_ring:
            expected = tuple(
                Polynomial.variable(self.context, n) for n in self.context.main_vars
            )
            if self.algebra_generators != expected:
                raise ValueError("full_ring requires the main variables as algebra generators")

    @classmethod
    def full(cls, context: VarContext) -> Subalgebra:
        return cls(
            context,
            tuple(Polynomial.variable(context, n) for n in context.coeff_vars),
            tuple(Polynomial.variable(context, n) for n in context.main_vars),
            full_ring=True,
        )

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.base_generators + self.algebra_generators

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(g.degree() for g in self.generators)

    def algebra_index(self, k: int) -> int:
        """Index of the k-th algebra generator within the combined list."""
        return len(self.base_generators) + k


@lru_cache(maxsize=None)
def symbol_context(S: Subalgebra) -> VarContext:
    """Context of abstract generator symbols: b1..bn for base, g1..gm for algebra."""
    names = tuple(f"b{i + 1}" for i in range(len(S.base_generators))) + tuple(
        f"g{i + 1}" for i in range(len(S.algebra_generators))
    )
    return VarContext((), names)


def generator_products(
    S: Subalgebra, bound: int, cap: int = PRODUCT_CAP
) -> list[tuple[tuple[int, ...], Polynomial]]:
    """All products of generators with weighted formal degree <= bound.

    Deterministic exponent-lexicographic order; includes the empty product 1.
    """
    gens = S.generators
    weights = S.weights
    out: list[tuple[tuple[int, ...], Polynomial]] = []

    def rec(idx: int, budget: int, expo: list[int], poly: Polynomial):
        if idx == len(gens):
            if len(out) >= cap:
                raise UnsupportedSizeError(
                    f"more than {cap} generator products below bound {bound}"
                )
            out.append((tuple(expo), poly))
            return
        w = weights[idx]
        current = poly
        e = 0
        while e * w <= budget:
            expo.append(e)
            rec(idx + 1, budget - e * w, expo, current)
            expo.pop()
            e += 1
            if e * w <= budget:
                current = current * gens[idx]

    rec(0, bound, [], Polynomial.one(S.context))
    return out


@dataclass(frozen=True)
class MembershipWitness:
    """An exact expression of ``target`` in abstract generator symbols."""

    target: Polynomial
    expression: Polynomial  # over symbol_context(S)
    bound: int

    def evaluate(self, S: Subalgebra) -> Polynomial:
        bindings = {
            name: gen for name, gen in zip(symbol_context(S).variables, S.generators)
        }
        return self.expression.substitute(bindings, context=S.context)


class GeneratorSpan:
    """Reusable row space of the generator products up to one bound."""

    def __init__(self, S: Subalgebra, bound: int, cap: int = PRODUCT_CAP):
        self.subalgebra = S
        self.bound = bound
        self.products = generator_products(S, bound, cap)
        self.space = RowSpace()
        self.dependencies: list[dict[int, Fraction]] = []
        for j, (_, poly) in enumerate(self.products):
            dep = self.space.insert(vec_of(poly), j)
            if dep is not None:
                rel = dict(dep)
                rel[j] = rel.get(j, Fraction(0)) - 1
                self.dependencies.append(rel)

    def express(self, f: Polynomial) -> Polynomial | None:
        """Expression of f over the products, as a symbol polynomial."""
        combo = self.space.express(vec_of(f))
        if combo is None:
            return None
        sym = symbol_context(self.subalgebra)
        terms = {self.products[j][0]: c for j, c in combo.items() if c}
        if not terms and not f.is_zero():
            return None
        return Polynomial(sym, terms)

    def contains(self, f: Polynomial) -> bool:
        return self.space.contains(vec_of(f))


def subalgebra_member(
    f: Polynomial, S: Subalgebra, bound: int, span: GeneratorSpan | None = None
) -> MembershipWitness | None:
    """Search f in the bounded span of generator products.

    A hit returns a re-verified witness; None means not found up to the
    bound, which is not a refutation.
    """
    if f.context != S.context:
        raise ContextMismatchError("membership query across contexts")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if span is None:
        span = GeneratorSpan(S, bound)
    expr = span.express(f)
    if expr is None:
        return None
    witness = MembershipWitness(f, expr, bound)
    if witness.evaluate(S) != f:
        raise AssertionError("membership witness failed re-verification")
    return witness


@dataclass(frozen=True)
class RestrictedDerivation:
    """A derivation of a subalgebra, described by generator images.

    Base generators map to zero (base-ring linearity); ``images`` is
    aligned with the algebra generators.
    """

    subalgebra: Subalgebra
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != len(self.subalgebra.algebra_generators):
            raise ValueError("one image per algebra generator is required")
        for img in self.images:
            if img.context != self.subalgebra.context:
                raise ContextMismatchError("image lives in a foreign context")

    def image_of_product(self, expo: tuple[int, ...]) -> Polynomial:
        """Leibniz image of a generator product given by its exponent vector."""
        S = self.subalgebra
        ctx = S.context
        gens = S.generators
        nbase = len(S.base_generators)
        out = Polynomial.zero(ctx)
        for i, e in enumerate(expo):
            if e == 0 or i < nbase:
                continue
            img = self.images[i - nbase]
            if img.is_zero():
                continue
            term = Polynomial.constant(ctx, e) * img * gens[i] ** (e - 1)
            for k, ek in enumerate(expo):
                if k != i and ek:
                    term = term * gens[k] ** ek
            out = out + term
        return out

    def image_of_generator(self, g: Polynomial) -> Polynomial:
        for gen, img in zip(self.subalgebra.algebra_generators, self.images):
            if gen == g:
                return img
        raise ValueError(f"{g} is not an algebra generator")


def restriction_of(D: Derivation, S: Subalgebra) -> RestrictedDerivation:
    """RestrictedDerivation view of an ambient derivation (images unchecked)."""
    return RestrictedDerivation(S, tuple(D.apply(g) for g in S.algebra_generators))


@dataclass(frozen=True)
class RestrictionFailure:
    generator: Polynomial
    image: Polynomial


def restrict_derivation(
    D: Derivation, S: Subalgebra, bound: int, span: GeneratorSpan | None = None
) -> tuple[RestrictedDerivation, tuple[MembershipWitness, ...]] | RestrictionFailure:
    """Restrict an ambient derivation to S, witnessing every image.

    Succeeds iff D(g) lies in the bounded span for every algebra generator
    g; base generators are killed automatically.  Returns the failing
    generator with its image otherwise.
    """
    if span is None:
        span = GeneratorSpan(S, bound)
    images = []
    witnesses = []
    for g in S.algebra_generators:
        img = D.apply(g)
        if img.is_zero():
            images.append(img)
            witnesses.append(MembershipWitness(img, Polynomial.zero(symbol_context(S)), bound))
            continue
        w = subalgebra_member(img, S, bound, span)
        if w is None:
            return RestrictionFailure(g, img)
        images.append(img)
        witnesses.append(w)
    return RestrictedDerivation(S, tuple(images)), tuple(witnesses)


def _product_images(
    rd: RestrictedDerivation | Derivation,
    S: Subalgebra,
    products: list[tuple[tuple[int, ...], Polynomial]],
) -> list[Polynomial]:
    if isinstance(rd, Derivation):
        return [rd.apply(poly) for _, poly in products]
    return [rd.image_of_product(expo) for expo, _ in products]


def subalgebra_fpf(
    rd: RestrictedDerivation, bound: int, span: GeneratorSpan | None = None
) -> list[Polynomial] | None:
    """Bounded search for cofactors a_i in S with sum(a_i * D(g_i)) == 1.

    Returns cofactors aligned with the algebra generators, or None when no
    combination exists within the bound (not a refutation).
    """
    S = rd.subalgebra
    if span is None:
        span = GeneratorSpan(S, bound)
    ctx = S.context
    space = RowSpace()
    for i, img in enumerate(rd.images):
        if img.is_zero():
            continue
        for j, (_, poly) in enumerate(span.products):
            space.insert(vec_of(poly * img), (j, i))
    combo = space.express(vec_of(Polynomial.one(ctx)))
    if combo is None:
        return None
    cof = [Polynomial.zero(ctx) for _ in rd.images]
    for (j, i), c in combo.items():
        cof[i] = cof[i] + span.products[j][1] * c
    acc = Polynomial.zero(ctx)
    for a, img in zip(cof, rd.images):
        acc = acc + a * img
    if acc != Polynomial.one(ctx):
        raise AssertionError("fpf cofactors failed re-verification")
    return cof


def kernel_up_to_degree(
    rd: RestrictedDerivation | Derivation,
    S: Subalgebra,
    bound: int,
    span: GeneratorSpan | None = None,
) -> list[Polynomial]:
    """Basis of {f in bounded span of S : D(f) == 0}.

    Exact nullspace of the derivation on the span of generator products;
    every basis element is re-verified to have image zero.
    """
    if span is None:
        span = GeneratorSpan(S, bound)
    products = span.products
    images = _product_images(rd, S, products)
    space = RowSpace()
    kernel_vecs = []
    for j, img in enumerate(images):
        dep = space.insert(vec_of(img), j)
        if dep is None:
            continue
        # img_j == sum(dep) over earlier images, so P_j - combination is killed.
        f = products[j][1]
        check = images[j]
        for k, c in dep.items():
            f = f - products[k][1] * c
            check = check - images[k] * c
        if not check.is_zero():
            raise AssertionError("kernel relation failed image re-verification")
        if not f.is_zero():
            kernel_vecs.append(vec_of(f))
    basis = []
    for row in canonical_rref(kernel_vecs):
        f = Polynomial(S.context, row)
        if isinstance(rd, Derivation):
            if not rd.apply(f).is_zero():
                raise AssertionError("kernel basis element not killed by derivation")
        else:
            expr = span.express(f)
            if expr is None:
                raise AssertionError("kernel basis element left the span")
            img = Polynomial.zero(S.context)
            for expo, c in expr.terms.items():
                img = img + rd.image_of_product(expo) * c
            if not img.is_zero():
                raise AssertionError("kernel basis element not killed by derivation")
        basis.append(f)
    return basis
