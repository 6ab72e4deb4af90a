"""Derivations of a polynomial ring, given by images of the main variables.

A derivation kills every coefficient variable (it is linear over the base
ring) and extends to the whole ring by the Leibniz rule, so ``apply``
computes ``sum_x dp/dx * D(x)`` over the main variables.  Local
nilpotency is certified on generators by bounded iteration; triangularity
gives an unconditional certificate in characteristic zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .context import VarContext
from .errors import ContextMismatchError, DomainError, UnsupportedSizeError
from .groebner import ideal_member
from .polygcd import gcd
from .polynomial import Polynomial

DEFAULT_NILPOTENCY_BOUND = 64
TRIANGULAR_VAR_CAP = 8


@dataclass(frozen=True)
class Derivation:
    context: VarContext
    images: dict[str, Polynomial]

    def __post_init__(self):
        missing = set(self.context.main_vars) - set(self.images)
        extra = set(self.images) - set(self.context.main_vars)
        if missing:
            raise ValueError(f"no image for main variables {sorted(missing)}")
        if extra:
            raise ValueError(f"images given for non-main variables {sorted(extra)}")
        for name, img in self.images.items():
            if img.context != self.context:
                raise ContextMismatchError(f"image of {name!r} lives in a foreign context")

    def __hash__(self):
        return hash((self.context, tuple(sorted(self.images.items()))))

    def apply(self, p: Polynomial) -> Polynomial:
        if p.context != self.context:
            raise ContextMismatchError("derivation applied across contexts")
        out = Polynomial.zero(self.context)
        for name in self.context.main_vars:
            img = self.images[name]
            if img.is_zero():
                continue
            dp = p.partial_derivative(name)
            if not dp.is_zero():
                out = out + dp * img
        return out

    def iterate(self, p: Polynomial, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("iteration count must be non-negative")
        for _ in range(n):
            if p.is_zero():
                break
            p = self.apply(p)
        return p

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images.values())


@dataclass(frozen=True)
class NilpotencyVerdict:
    certified: bool
    indices: Mapping[str, int] | None  # smallest n with D^n(x) == 0, per main variable
    bound: int

    @property
    def status(self) -> str:
        return "certified-lnd" if self.certified else "inconclusive"


def nilpotency_verdict(D: Derivation, bound: int = DEFAULT_NILPOTENCY_BOUND) -> NilpotencyVerdict:
    """Certify local nilpotency on the ring generators by iteration.

    Certification on the main variables suffices because the locally
    nilpotent locus is a subalgebra.  An exhausted bound is reported as
    inconclusive, never as a refutation.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    indices: dict[str, int] = {}
    for name in D.context.main_vars:
        p = Polynomial.variable(D.context, name)
        n = 0
        while n <= bound:
            if p.is_zero():
                break
            p = D.apply(p)
            n += 1
        if not p.is_zero():
            return NilpotencyVerdict(False, None, bound)
        indices[name] = n
    return NilpotencyVerdict(True, indices, bound)


def is_triangular(D: Derivation) -> tuple[str, ...] | None:
    """Search for a variable ordering making D triangular.

    Returns an ordering ``x1 < ... < xn`` such that each image ``D(xi)``
    involves only coefficient variables and ``x1..x(i-1)``, or None.  The
    search is brute force over orderings and refuses more than
    ``TRIANGULAR_VAR_CAP`` main variables.
    """
    main = D.context.main_vars
    if len(main) > TRIANGULAR_VAR_CAP:
        raise UnsupportedSizeError(
            f"triangularity search supports at most {TRIANGULAR_VAR_CAP} main variables"
        )
    coeff = set(D.context.coeff_vars)
    for perm in itertools.permutations(main):
        allowed = set(coeff)
        ok = True
        for name in perm:
            if not D.images[name].involves_only(allowed):
                ok = False
                break
            allowed.add(name)
        if ok:
            return perm
    return None


def divergence(D: Derivation) -> Polynomial:
    out = Polynomial.zero(D.context)
    for name in D.context.main_vars:
        out = out + D.images[name].partial_derivative(name)
    return out


def is_irreducible(D: Derivation) -> tuple[bool, Polynomial | None]:
    """(True, None) when no non-unit divides every image, else (False, g).

    ``g`` is the lex-monic gcd of the nonzero images.  The zero derivation
    is rejected.
    """
    images = [img for img in D.images.values() if not img.is_zero()]
    if not images:
        raise DomainError("irreducibility of the zero derivation is undefined")
    acc = images[0]
    for img in images[1:]:
        acc = gcd(acc, img)
        if acc.is_constant():
            break
    if acc.is_constant():
        return True, None
    return False, acc.monic_lex()


def is_fixed_point_free(D: Derivation) -> dict[str, Polynomial] | None:
    """Decide ``1 in <D(x) : x main>`` on the full polynomial ring.

    A Yes returns cofactors ``a_x`` with ``sum(a_x * D(x)) == 1``, exact and
    re-verified before returning.  None is a definitive No.
    """
    names = [n for n in D.context.main_vars if not D.images[n].is_zero()]
    if not names:
        return None  # the zero ideal
    one = Polynomial.one(D.context)
    cof = ideal_member(one, [D.images[n] for n in names])
    if cof is None:
        return None
    witness = {n: c for n, c in zip(names, cof)}
    acc = Polynomial.zero(D.context)
    for n, c in witness.items():
        acc = acc + c * D.images[n]
    if acc != one:
        raise AssertionError("fixed-point-free witness failed re-verification")
    return witness
