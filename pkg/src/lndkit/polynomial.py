"""Sparse multivariate polynomials over the rationals.

Terms map exponent tuples to nonzero ``Fraction`` coefficients and are kept
in descending lexicographic order (most significant variable first, in
context order), so iteration and serialization are deterministic.  All
values are immutable after construction and every operation is exact.

The degree of the zero polynomial is the sentinel ``None``, never an
integer; callers comparing degrees must treat it explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .context import VarContext
from .errors import ContextMismatchError, UnknownVariableError

Monomial = tuple[int, ...]
Scalar = Union[Fraction, int]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b, i.e. every exponent of a is <= that of b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class Polynomial:
    """Immutable sparse polynomial attached to a :class:`VarContext`."""

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: VarContext, terms: Mapping[Monomial, Scalar] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        combined: dict[Monomial, Fraction] = {}
        nvars = context.nvars
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong length for {context}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in monomial {mono}")
            coeff = Fraction(coeff)
            if coeff:
                acc = combined.get(mono)
                if acc is None:
                    combined[mono] = coeff
                else:
                    acc = acc + coeff
                    if acc:
                        combined[mono] = acc
                    else:
                        del combined[mono]
        object.__setattr__(self, "context", context)
        object.__setattr__(
            self, "terms", dict(sorted(combined.items(), key=lambda kv: kv[0], reverse=True))
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, context: VarContext) -> Polynomial:
        return cls(context)

    @classmethod
    def one(cls, context: VarContext) -> Polynomial:
        return cls.constant(context, 1)

    @classmethod
    def constant(cls, context: VarContext, value: Scalar) -> Polynomial:
        return cls(context, {(0,) * context.nvars: Fraction(value)})

    @classmethod
    def variable(cls, context: VarContext, name: str) -> Polynomial:
        i = context.index(name)
        mono = tuple(1 if j == i else 0 for j in range(context.nvars))
        return cls(context, {mono: Fraction(1)})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_degree(m) == 0 for m in self.terms)

    def as_rational(self) -> Fraction | None:
        """The value of a constant polynomial, else None."""
        if self.is_zero():
            return Fraction(0)
        if self.is_constant():
            return next(iter(self.terms.values()))
        return None

    def degree(self) -> int | None:
        """Total degree; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(mono_degree(m) for m in self.terms)

    def degree_in(self, name: str) -> int | None:
        """Degree in one variable; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        i = self.context.index(name)
        return max(m[i] for m in self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.context.nvars, Fraction(0))

    def variables_used(self) -> set[str]:
        names = self.context.variables
        used: set[str] = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(names[i])
        return used

    def involves_only(self, names: Iterable[str]) -> bool:
        return self.variables_used() <= set(names)

    def lex_leading(self) -> tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient) under descending lex; zero poly raises."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = next(iter(self.terms))
        return mono, self.terms[mono]

    def monic_lex(self) -> Polynomial:
        """Scale so the lex-leading coefficient is 1."""
        if not self.terms:
            return self
        _, lead = self.lex_leading()
        if lead == 1:
            return self
        return self * (Fraction(1) / lead)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: Polynomial):
        if self.context != other.context:
            raise ContextMismatchError(
                f"context mismatch: {self.context} vs {other.context}"
            )

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            terms[m] = c if acc is None else acc + c
        return Polynomial(self.context, terms)

    def __radd__(self, other) -> Polynomial:
        return self.__add__(other)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.context, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self.__add__(self._coerce(other).__neg__())

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other).__sub__(self)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.context)
            return Polynomial(self.context, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                acc = out.get(m)
                prod = c1 * c2
                out[m] = prod if acc is None else acc + prod
        return Polynomial(self.context, out)

    def __rmul__(self, other) -> Polynomial:
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> Polynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.context)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.context, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # -- calculus and substitution --------------------------------------

    def partial_derivative(self, name: str) -> Polynomial:
        i = self.context.index(name)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = m[:i] + (e - 1,) + m[i + 1:]
                acc = out.get(dm)
                val = c * e
                out[dm] = val if acc is None else acc + val
        return Polynomial(self.context, out)

    def substitute(
        self,
        bindings: Mapping[str, "Polynomial | Scalar"],
        context: VarContext | None = None,
    ) -> Polynomial:
        """Simultaneous substitution; unbound variables map to themselves.

        ``context`` selects the target context (default: this one); every
        unbound variable must exist there under the same name.
        """
        target = context if context is not None else self.context
        images: list[Polynomial] = []
        for name in self.context.variables:
            if name in bindings:
                img = bindings[name]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(target, img)
                elif img.context != target:
                    raise ContextMismatchError(
                        f"image of {name!r} lives in {img.context}, expected {target}"
                    )
            else:
                img = Polynomial.variable(target, name)  # raises if missing
            images.append(img)
        for name in bindings:
            self.context.index(name)  # reject bindings for foreign variables
        result = Polynomial.zero(target)
        power_cache: dict[tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if not e:
                    continue
                key = (i, e)
                p = power_cache.get(key)
                if p is None:
                    p = images[i] ** e
                    power_cache[key] = p
                term = term * p
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a full rational point."""
        missing = self.variables_used() - set(point)
        if missing:
            raise UnknownVariableError(f"no value for variables {sorted(missing)}")
        idx = {self.context.index(name): Fraction(v) for name, v in point.items()}
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for i, e in enumerate(m):
                if e:
                    val *= idx[i] ** e
            total += val
        return total

    # -- equality, hashing, rendering -----------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.context, tuple(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _render_monomial(self, mono: Monomial) -> str:
        names = self.context.variables
        parts = []
        for i, e in enumerate(mono):
            if e == 1:
                parts.append(names[i])
            elif e > 1:
                parts.append(f"{names[i]}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        """Canonical form: descending lex terms, lowest-term coefficients."""
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for k, (mono, coeff) in enumerate(self.terms.items()):
            mono_s = self._render_monomial(mono)
            mag = abs(coeff)
            if mono_s:
                body = mono_s if mag == 1 else f"{mag}*{mono_s}"
            else:
                body = str(mag)
            if k == 0:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"Polynomial({self})"
