"""Slice search, kernel projection, and the witnessed ring decompositions.

For a locally nilpotent derivation D with a slice s (an element with
D(s) = 1), the projection

    pi_s(a) = sum_i (1/i!) * (-s)^i * D^i(a)

is a ring homomorphism onto Ker(D) fixing Ker(D) pointwise, and the ring
decomposes as Ker(D)[s].  This module finds slices by bounded exact
linear algebra, computes kernel generators through the projection, and
certifies the decomposition by exact re-expression witnesses.  It also
builds the two witness-guided derivations used by the corpus: the one
composed from a retraction with a partial derivative, and the
complementary one defined through coordinate witnesses over a localized
base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .context import VarContext
from .derivation import Derivation, NilpotencyVerdict
from .errors import ContextMismatchError, DomainError, FailsUpToCapError
from .linalg import RowSpace, canonical_rref, reduce_by_rref, vec_of
from .polygcd import exact_divide, gcd
from .polynomial import Polynomial
from .subalgebra import (
    GeneratorSpan,
    MembershipWitness,
    RestrictedDerivation,
    Subalgebra,
    subalgebra_member,
)

DIXMIER_ITERATION_CAP = 4096

AnyDerivation = Derivation | RestrictedDerivation


def _span_apply(rd: RestrictedDerivation, span: GeneratorSpan, f: Polynomial) -> Polynomial:
    """Image of f under a restricted derivation, through its span expression."""
    expr = span.express(f)
    if expr is None:
        raise DomainError("element left the bounded span while applying the derivation")
    out = Polynomial.zero(rd.subalgebra.context)
    for expo, c in expr.terms.items():
        out = out + rd.image_of_product(expo) * c
    return out


def _applier(D: AnyDerivation, span: GeneratorSpan | None) -> Callable[[Polynomial], Polynomial]:
    if isinstance(D, Derivation):
        return D.apply
    if span is None:
        raise ValueError("a restricted derivation needs a generator span to apply")
    return lambda f: _span_apply(D, span, f)


def _solve_unit_image(
    images: list[Polynomial],
    products: list[tuple[tuple[int, ...], Polynomial]],
    context,
) -> Polynomial | None:
    """Solve sum(c_j * images[j]) == 1 and canonicalize modulo the kernel.

    Returns the unique solution carrying no term on a pivot monomial of
    the kernel of the image map (deterministic regardless of candidate
    order), or None when the system is infeasible.
    """
    space = RowSpace()
    relations: list[dict[int, Fraction]] = []
    for j, img in enumerate(images):
        dep = space.insert(vec_of(img), j)
        if dep is not None:
            rel = dict(dep)
            rel[j] = rel.get(j, Fraction(0)) - 1
            relations.append(rel)
    combo = space.express(vec_of(Polynomial.one(context)))
    if combo is None:
        return None
    s0 = Polynomial.zero(context)
    for j, c in combo.items():
        s0 = s0 + products[j][1] * c
    kernel_vecs = []
    for rel in relations:
        f = Polynomial.zero(context)
        for j, c in rel.items():
            f = f + products[j][1] * c
        if not f.is_zero():
            kernel_vecs.append(vec_of(f))
    rref = canonical_rref(kernel_vecs)
    return Polynomial(context, reduce_by_rref(vec_of(s0), rref))


def find_slice(
    D: AnyDerivation, S: Subalgebra, bound: int, span: GeneratorSpan | None = None
) -> Polynomial | None:
    """Search the bounded span for s with D(s) == 1.

    Callers should have certified local nilpotency first.  Among all
    solutions the canonical kernel-reduced one is returned, so outputs are
    deterministic; None means none exists up to the bound (for a fixed
    point free certified derivation on a full ring a large enough bound
    always succeeds).
    """
    if span is None:
        span = GeneratorSpan(S, bound)
    if isinstance(D, Derivation):
        images = [D.apply(poly) for _, poly in span.products]
    else:
        images = [D.image_of_product(expo) for expo, _ in span.products]
    s = _solve_unit_image(images, span.products, S.context)
    if s is None:
        return None
    check = _applier(D, span)(s)
    if check != Polynomial.one(S.context):
        raise AssertionError("slice candidate failed the image check")
    return s


def dixmier(
    D: AnyDerivation,
    s: Polynomial,
    a: Polynomial,
    span: GeneratorSpan | None = None,
) -> Polynomial:
    """Kernel projection pi_s(a); requires D(s) == 1 and terminating iterates.

    The sum is finite for locally nilpotent derivations; factorial
    denominators are exact rationals.  The result is re-checked to be
    killed by D before returning.
    """
    apply_fn = _applier(D, span)
    ctx = a.context
    if apply_fn(s) != Polynomial.one(ctx):
        raise DomainError("dixmier projection needs a slice: D(s) must be 1")
    result = Polynomial.zero(ctx)
    power = Polynomial.one(ctx)  # (-s)^i
    term = a  # D^i(a)
    i = 0
    while not term.is_zero():
        if i > DIXMIER_ITERATION_CAP:
            raise DomainError(
                f"derivation iterates of {a} did not vanish within {DIXMIER_ITERATION_CAP} steps"
            )
        result = result + power * term * Fraction(1, math.factorial(i))
        term = apply_fn(term)
        power = power * (-s)
        i += 1
    if not apply_fn(result).is_zero():
        raise AssertionError("dixmier image is not a kernel element")
    return result


def kernel_generators(
    D: AnyDerivation, s: Polynomial, S: Subalgebra, span: GeneratorSpan | None = None
) -> list[Polynomial]:
    """Projections of the algebra generators: they generate Ker(D) over the base.

    Zero and constant projections are dropped; duplicates are removed
    preserving first occurrence.
    """
    out: list[Polynomial] = []
    for g in S.algebra_generators:
        k = dixmier(D, s, g, span)
        if k.is_zero() or k.is_constant():
            continue
        if k not in out:
            out.append(k)
    return out


@dataclass(frozen=True)
class SliceCertificate:
    """Exact witnesses for the decomposition of the algebra as Ker(D)[s]."""

    slice: Polynomial
    kernel_generators: tuple[Polynomial, ...]
    reexpression: tuple[MembershipWitness, ...]  # aligned with the algebra generators
    bound: int


@dataclass(frozen=True)
class IncompleteReexpression:
    missing: tuple[Polynomial, ...]
    bound: int


def _taylor_bound(D: Derivation, s: Polynomial, S: Subalgebra) -> int:
    """A re-expression bound sufficient on full rings.

    Every generator g satisfies g = sum_i (s^i/i!) * pi_s(D^i g) and
    pi_s substitutes each main variable by its projection, so the witness
    degree is bounded by the weighted degree of the iterates.
    """
    ctx = S.context
    ncoeff = len(ctx.coeff_vars)
    proj_deg = {}
    for idx, name in enumerate(ctx.main_vars):
        k = dixmier(D, s, Polynomial.variable(ctx, name))
        d = k.degree()
        proj_deg[ncoeff + idx] = 0 if d is None else max(d, 0)
    s_deg = max(1, s.degree() or 1)
    best = 1
    for g in S.algebra_generators:
        f = g
        i = 0
        while not f.is_zero():
            if i > DIXMIER_ITERATION_CAP:
                raise DomainError("derivation iterate did not vanish; certify nilpotency first")
            for mono in f.terms:
                w = sum(mono[:ncoeff])
                for j in range(ncoeff, ctx.nvars):
                    w += mono[j] * proj_deg[j]
                best = max(best, w + i * s_deg)
            f = D.apply(f)
            i += 1
    return best


def verify_slice_theorem(
    D: AnyDerivation,
    s: Polynomial,
    S: Subalgebra,
    bound: int | None = None,
    span: GeneratorSpan | None = None,
) -> SliceCertificate | IncompleteReexpression:
    """Certify the slice decomposition by re-expressing every generator.

    Each algebra generator is searched as a polynomial in the kernel
    generators and s over the base, at the given bound (default: a
    computed bound that is provably sufficient on full rings).  All
    witness identities are exact; a miss returns the incomplete set
    rather than failing.
    """
    kgens = kernel_generators(D, s, S, span)
    if bound is None:
        if isinstance(D, Derivation) and S.full_ring:
            bound = _taylor_bound(D, s, S)
        else:
            raise ValueError("an explicit bound is required off the full ring")
    target = Subalgebra(S.context, S.base_generators, tuple(kgens) + (s,))
    target_span = GeneratorSpan(target, bound)
    witnesses = []
    missing = []
    for g in S.algebra_generators:
        w = subalgebra_member(g, target, bound, target_span)
        if w is None:
            missing.append(g)
        else:
            witnesses.append(w)
    if missing:
        return IncompleteReexpression(tuple(missing), bound)
    apply_fn = _applier(D, span)
    if apply_fn(s) != Polynomial.one(S.context):
        raise AssertionError("certificate slice lost the unit image")
    for k in kgens:
        if not apply_fn(k).is_zero():
            raise AssertionError("certificate kernel generator is not killed")
    return SliceCertificate(s, tuple(kgens), tuple(witnesses), bound)


# -- retraction-composed derivations ----------------------------------------


@dataclass(frozen=True)
class RetractionSpec:
    """A retraction of the ambient ring onto a subalgebra, fixing one variable.

    ``fixed_images`` sends every main variable except ``slice_var`` to its
    retraction image; those images must not involve ``slice_var`` and the
    retraction must fix every generator of the target subalgebra.
    """

    subalgebra: Subalgebra
    slice_var: str
    fixed_images: dict[str, Polynomial]

    def __post_init__(self):
        ctx = self.subalgebra.context
        if not ctx.is_main(self.slice_var):
            raise ValueError(f"{self.slice_var!r} is not a main variable")
        others = set(ctx.main_vars) - {self.slice_var}
        if set(self.fixed_images) != others:
            raise ValueError("retraction must map exactly the other main variables")
        for name, img in self.fixed_images.items():
            if img.context != ctx:
                raise ContextMismatchError(f"image of {name!r} lives in a foreign context")
            if not img.partial_derivative(self.slice_var).is_zero():
                raise ValueError(f"retraction image of {name!r} involves {self.slice_var!r}")
        for g in self.subalgebra.generators:
            if g.substitute(self.fixed_images) != g:
                raise ValueError(f"retraction does not fix the generator {g}")

    def __hash__(self):
        return hash((self.subalgebra, self.slice_var, tuple(sorted(self.fixed_images.items()))))

    def retract(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.fixed_images)


@dataclass(frozen=True)
class RetractionDerivation:
    """Derivation obtained by retracting the partial derivative in slice_var.

    ``apply_composed`` is the total formula f -> retract(df/dW); it is a
    derivation on the target subalgebra (not on the whole ambient ring).
    """

    spec: RetractionSpec
    restricted: RestrictedDerivation
    nilpotency: NilpotencyVerdict

    def apply_composed(self, f: Polynomial) -> Polynomial:
        return self.spec.retract(f.partial_derivative(self.spec.slice_var))

    def iterate_composed(self, f: Polynomial, n: int) -> Polynomial:
        for _ in range(n):
            if f.is_zero():
                break
            f = self.apply_composed(f)
        return f


def lnd_from_retraction(spec: RetractionSpec) -> RetractionDerivation:
    """Build the derivation g -> retract(dg/dW) on the subalgebra.

    Construction checks: the slice variable (when it is a generator) maps
    to 1, every retraction image is killed, and each generator vanishes
    within (its degree in the slice variable) + 1 iterations, which
    certifies local nilpotency.
    """
    S = spec.subalgebra
    ctx = S.context
    w = spec.slice_var
    images = []
    indices: dict[str, int] = {}
    for g in S.algebra_generators:
        img = spec.retract(g.partial_derivative(w))
        images.append(img)
        cap = (g.degree_in(w) or 0) + 1
        f = g
        n = 0
        while not f.is_zero():
            if n > cap:
                raise AssertionError("retraction derivation exceeded its grading bound")
            f = spec.retract(f.partial_derivative(w))
            n += 1
        indices[str(g)] = n
    wpoly = Polynomial.variable(ctx, w)
    for g, img in zip(S.algebra_generators, images):
        if g == wpoly and img != Polynomial.one(ctx):
            raise AssertionError("slice variable image is not 1")
    for img_name, fixed in spec.fixed_images.items():
        killed = spec.retract(fixed.partial_derivative(w))
        if not killed.is_zero():
            raise AssertionError(f"retraction image of {img_name!r} is not killed")
    verdict = NilpotencyVerdict(True, indices, max(indices.values(), default=1))
    return RetractionDerivation(spec, RestrictedDerivation(S, tuple(images)), verdict)


# -- complementary derivation from coordinate witnesses ----------------------

COORD_V = "V_"
COORD_U = "U0_"


def coordinate_context(ctx: VarContext) -> VarContext:
    """Context for coordinate witnesses: base variables plus two slot symbols."""
    return VarContext(ctx.coeff_vars, (COORD_V, COORD_U))


@dataclass(frozen=True)
class CoordinateWitness:
    """t^power * generator == numerator(V_, U0_), coefficients in the base."""

    numerator: Polynomial  # over coordinate_context
    t_power: int

    def __post_init__(self):
        if self.t_power < 0:
            raise ValueError("t_power must be non-negative")


@dataclass(frozen=True)
class ComplementaryLnd:
    derivation: RestrictedDerivation
    alpha: int
    nilpotency: NilpotencyVerdict
    kernel_basis: tuple[Polynomial, ...]
    membership: tuple[MembershipWitness, ...]
    reduced_by: Polynomial | None


def complementary_lnd(
    S: Subalgebra,
    v: Polynomial,
    u0: Polynomial,
    t: Polynomial,
    witnesses: list[CoordinateWitness],
    alpha_cap: int,
    member_bound: int,
    kernel_bound: int,
) -> ComplementaryLnd:
    """Derivation with image t^alpha along the U0 coordinate and V in its kernel.

    Each generator g carries a witness t^k * g == N_g(V, U0); the candidate
    images are t^(alpha-k) * dN_g/dU0 with denominators cleared by powers
    of t, and the least alpha <= alpha_cap for which every image lies in
    the bounded span of S is accepted.  Post-checks: the image of V is
    zero, nilpotency is certified from the U0-degrees of the witnesses,
    and the bounded kernel lies in the span of the base adjoined with V.

    Raises FailsUpToCapError with the per-alpha trace when no alpha works.
    """
    ctx = S.context
    if v not in S.algebra_generators:
        raise DomainError("the kernel coordinate must be an algebra generator")
    if len(witnesses) != len(S.algebra_generators):
        raise DomainError("one coordinate witness per algebra generator is required")
    if t.is_zero():
        raise DomainError("the clearing element must be nonzero")
    if not t.involves_only(ctx.coeff_vars):
        raise DomainError("the clearing element must lie in the base")
    if not t.is_constant() and S.base_generators:
        base_only = Subalgebra(ctx, S.base_generators, ())
        if subalgebra_member(t, base_only, member_bound) is None:
            raise DomainError("the clearing element is not visible in the base span")
    bindings = {COORD_V: v, COORD_U: u0}
    for g, cw in zip(S.algebra_generators, witnesses):
        lhs = t ** cw.t_power * g
        if cw.numerator.substitute(bindings, context=ctx) != lhs:
            raise DomainError(f"coordinate witness for {g} does not evaluate exactly")

    span = GeneratorSpan(S, member_bound)
    trace: list[tuple[int, str, str]] = []
    chosen: tuple[int, list[Polynomial], list[MembershipWitness]] | None = None
    for alpha in range(alpha_cap + 1):
        images: list[Polynomial] = []
        mwits: list[MembershipWitness] = []
        ok = True
        for g, cw in zip(S.algebra_generators, witnesses):
            deriv = cw.numerator.partial_derivative(COORD_U)
            base_img = deriv.substitute(bindings, context=ctx)
            if base_img.is_zero():
                img = base_img
            elif alpha >= cw.t_power:
                img = t ** (alpha - cw.t_power) * base_img
            else:
                quo = exact_divide(base_img, t ** (cw.t_power - alpha))
                if quo is None:
                    trace.append((alpha, str(g), "denominator does not clear"))
                    ok = False
                    break
                img = quo
            if img.is_zero():
                images.append(img)
                mwits.append(MembershipWitness(img, Polynomial.zero(_symctx(S)), member_bound))
                continue
            w = subalgebra_member(img, S, member_bound, span)
            if w is None:
                trace.append((alpha, str(g), f"image {img} not found in span at {member_bound}"))
                ok = False
                break
            images.append(img)
            mwits.append(w)
        if ok:
            chosen = (alpha, images, mwits)
            break
    if chosen is None:
        raise FailsUpToCapError(
            f"no alpha up to {alpha_cap} maps every generator into the subalgebra", trace
        )
    alpha, images, mwits = chosen

    # Irreducibility reduction: divide out a common base factor when the
    # quotients stay inside the subalgebra.
    reduced_by = None
    nonzero = [img for img in images if not img.is_zero()]
    if nonzero:
        common = nonzero[0]
        for img in nonzero[1:]:
            common = gcd(common, img)
            if common.is_constant():
                break
        if not common.is_constant() and common.involves_only(ctx.coeff_vars):
            quotients = [
                Polynomial.zero(ctx) if img.is_zero() else exact_divide(img, common)
                for img in images
            ]
            if all(q is not None for q in quotients):
                new_wits = []
                good = True
                for q in quotients:
                    if q.is_zero():
                        new_wits.append(
                            MembershipWitness(q, Polynomial.zero(_symctx(S)), member_bound)
                        )
                        continue
                    w = subalgebra_member(q, S, member_bound, span)
                    if w is None:
                        good = False
                        break
                    new_wits.append(w)
                if good:
                    images = quotients  # type: ignore[assignment]
                    mwits = new_wits
                    reduced_by = common

    rd = RestrictedDerivation(S, tuple(images))
    v_index = S.algebra_generators.index(v)
    if not images[v_index].is_zero():
        raise AssertionError("the kernel coordinate is not killed")

    indices: dict[str, int] = {}
    for g, cw in zip(S.algebra_generators, witnesses):
        du = cw.numerator.degree_in(COORD_U)
        idx = 0 if cw.numerator.is_zero() else (du or 0) + 1
        probe = cw.numerator
        for _ in range(idx):
            probe = probe.partial_derivative(COORD_U)
        if not probe.is_zero():
            raise AssertionError("nilpotency index check failed")
        indices[str(g)] = idx
    verdict = NilpotencyVerdict(True, indices, max(indices.values(), default=1))

    from .subalgebra import kernel_up_to_degree  # local import to avoid cycle noise

    kernel_span = GeneratorSpan(S, kernel_bound)
    basis = kernel_up_to_degree(rd, S, kernel_bound, kernel_span)
    sv = Subalgebra(ctx, S.base_generators, (v,))
    sv_span = GeneratorSpan(sv, kernel_bound)
    for f in basis:
        if not sv_span.contains(f):
            raise DomainError(f"kernel element {f} escapes the span of the base and {v}")
    return ComplementaryLnd(rd, alpha, verdict, tuple(basis), tuple(mwits), reduced_by)


def _symctx(S: Subalgebra):
    from .subalgebra import symbol_context

    return symbol_context(S)


# -- transcendence and proportionality ---------------------------------------


@dataclass(frozen=True)
class TranscendenceResult:
    bound: int
    relation: tuple[Polynomial, ...] | None  # a_0..a_n with sum(a_i x^i) == 0

    @property
    def no_relation(self) -> bool:
        return self.relation is None


def transcendence_check(
    D: AnyDerivation, x: Polynomial, S: Subalgebra, bound: int
) -> TranscendenceResult:
    """Search for an algebraic relation of x over the bounded base span.

    Precondition: the image of x under D is a nonzero rational (a unit of
    the base).  No relation up to the bound is exactly the conclusion the
    unit image forces degree by degree; a found relation is returned with
    its exact coefficients.
    """
    if isinstance(D, Derivation):
        img = D.apply(x)
    else:
        img = D.image_of_generator(x)
    val = img.as_rational()
    if val is None or val == 0:
        raise DomainError("transcendence check requires a unit image for x")
    ctx = S.context
    base_only = Subalgebra(ctx, S.base_generators, ())
    base_products = [poly for _, poly in GeneratorSpan(base_only, bound).products]
    independent: list[Polynomial] = []
    probe = RowSpace()
    for p in base_products:
        if probe.insert(vec_of(p), len(independent)) is None:
            independent.append(p)
    space = RowSpace()
    xpow = Polynomial.one(ctx)
    for i in range(bound + 1):
        for k, b in enumerate(independent):
            tag = (i, k)
            dep = space.insert(vec_of(b * xpow), tag)
            if dep is not None:
                # normalize so the newly inserted power enters with +b
                coeffs = [Polynomial.zero(ctx) for _ in range(bound + 1)]
                for (ii, kk), c in dep.items():
                    coeffs[ii] = coeffs[ii] - independent[kk] * c
                coeffs[i] = coeffs[i] + b
                acc = Polynomial.zero(ctx)
                xp = Polynomial.one(ctx)
                for a in coeffs:
                    acc = acc + a * xp
                    xp = xp * x
                if not acc.is_zero():
                    raise AssertionError("relation failed re-verification")
                return TranscendenceResult(bound, tuple(coeffs))
        xpow = xpow * x
    return TranscendenceResult(bound, None)


@dataclass(frozen=True)
class ProportionalityResult:
    factor: Polynomial | None
    counterexample: Polynomial | None

    @property
    def proportional(self) -> bool:
        return self.factor is not None


def proportionality_check(
    d1: RestrictedDerivation,
    d: RestrictedDerivation,
    cofactors: list[Polynomial],
    S: Subalgebra,
) -> ProportionalityResult:
    """Check d1 == c * d with c recovered from a fixed-point-free witness.

    ``cofactors`` a_i (aligned with the algebra generators) must satisfy
    sum(a_i * d(g_i)) == 1 exactly; then c := sum(a_i * d1(g_i)) and every
    generator identity d1(g) == c * d(g) is verified exactly.
    """
    ctx = S.context
    if d1.subalgebra != S or d.subalgebra != S:
        raise ContextMismatchError("derivations do not live on the given subalgebra")
    if len(cofactors) != len(S.algebra_generators):
        raise DomainError("one cofactor per algebra generator is required")
    acc = Polynomial.zero(ctx)
    for a, img in zip(cofactors, d.images):
        acc = acc + a * img
    if acc != Polynomial.one(ctx):
        raise DomainError("invalid fixed-point-free witness")
    c = Polynomial.zero(ctx)
    for a, img in zip(cofactors, d1.images):
        c = c + a * img
    for g, i1, i0 in zip(S.algebra_generators, d1.images, d.images):
        if i1 != c * i0:
            return ProportionalityResult(None, g)
    return ProportionalityResult(c, None)


# -- iterated coordinate extraction ------------------------------------------


@dataclass(frozen=True)
class CoordinateSystem:
    coordinates: tuple[Polynomial, ...]
    witnesses: tuple[MembershipWitness, ...]  # aligned with the algebra generators
    bound: int


def coordinate_system(
    derivations: list[Derivation],
    given: list[Polynomial],
    S: Subalgebra,
    bound: int,
) -> CoordinateSystem | IncompleteReexpression:
    """Extract a full coordinate system from a tuple of sliced derivations.

    ``given`` supplies the first coordinates (given[i] is a slice of the
    i-th derivation after projecting through the earlier kernels, and is
    killed by all later derivations); remaining coordinates are discovered
    by bounded slice search on the induced derivations.  The result
    re-expresses every algebra generator in the coordinates over the base,
    exactly; the coordinates are themselves polynomials in the generators,
    which is the reverse direction of the equivalence.
    """
    ctx = S.context
    if len(given) > len(derivations):
        raise DomainError("more given coordinates than derivations")
    for j, D in enumerate(derivations):
        for i, e in enumerate(given):
            if j > i and not D.apply(e).is_zero():
                raise DomainError(
                    f"derivation {j + 1} does not kill the given coordinate {e}"
                )

    projections: list[tuple[Callable[[Polynomial], Polynomial], Polynomial]] = []

    def project(f: Polynomial, upto: int) -> Polynomial:
        for apply_fn, s in projections[:upto]:
            out = Polynomial.zero(ctx)
            power = Polynomial.one(ctx)
            term = f
            i = 0
            while not term.is_zero():
                if i > DIXMIER_ITERATION_CAP:
                    raise DomainError("projection iterates did not vanish")
                out = out + power * term * Fraction(1, math.factorial(i))
                term = apply_fn(term)
                power = power * (-s)
                i += 1
            f = out
        return f

    def induced_apply(k: int) -> Callable[[Polynomial], Polynomial]:
        D = derivations[k]
        return lambda f: project(D.apply(f), k)

    current = list(S.algebra_generators)
    coords: list[Polynomial] = []
    for k, D in enumerate(derivations):
        apply_k = induced_apply(k)
        if k < len(given):
            s_k = project(given[k], k)
            if apply_k(s_k) != Polynomial.one(ctx):
                raise DomainError(
                    f"projected coordinate {given[k]} is not a slice of the induced derivation"
                )
            coords.append(given[k])
        else:
            kernel_gens = [g for g in current if not (g.is_zero() or g.is_constant())]
            dedup: list[Polynomial] = []
            for g in kernel_gens:
                if g not in dedup:
                    dedup.append(g)
            search = Subalgebra(ctx, S.base_generators, tuple(dedup))
            search_span = GeneratorSpan(search, bound)
            images = [apply_k(poly) for _, poly in search_span.products]
            s_k = _solve_unit_image(images, search_span.products, ctx)
            if s_k is None:
                raise DomainError(f"no slice found for induced derivation {k + 1} at {bound}")
            coords.append(s_k)
        projections.append((apply_k, s_k))
        current = [project(g, k + 1) for g in current]

    target = Subalgebra(ctx, S.base_generators, tuple(coords))
    target_span = GeneratorSpan(target, bound)
    witnesses = []
    missing = []
    for g in S.algebra_generators:
        w = subalgebra_member(g, target, bound, target_span)
        if w is None:
            missing.append(g)
        else:
            witnesses.append(w)
    if missing:
        return IncompleteReexpression(tuple(missing), bound)
    return CoordinateSystem(tuple(coords), tuple(witnesses), bound)
