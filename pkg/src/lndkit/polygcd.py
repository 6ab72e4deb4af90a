"""Multivariate polynomial gcd over the rationals.

Strategy: recurse on primitive parts with respect to one variable at a
time, running a subresultant polynomial remainder sequence on the
primitive parts and recursing into coefficient rings for contents.  The
result is normalized so its lexicographic leading coefficient is 1, and
exact divisibility of both inputs is checked before returning.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContextMismatchError, DomainError
from .polynomial import Monomial, Polynomial, mono_div, mono_divides


def exact_divide(p: Polynomial, d: Polynomial) -> Polynomial | None:
    """Quotient p/d when the division is exact, else None."""
    if p.context != d.context:
        raise ContextMismatchError("exact_divide operands share no context")
    if d.is_zero():
        raise DomainError("division by the zero polynomial")
    ctx = p.context
    quotient: dict[Monomial, Fraction] = {}
    rem = p
    d_mono, d_coeff = d.lex_leading()
    while not rem.is_zero():
        r_mono, r_coeff = rem.lex_leading()
        if not mono_divides(d_mono, r_mono):
            return None
        q_mono = mono_div(r_mono, d_mono)
        q_coeff = r_coeff / d_coeff
        quotient[q_mono] = quotient.get(q_mono, Fraction(0)) + q_coeff
        rem = rem - Polynomial(ctx, {q_mono: q_coeff}) * d
    return Polynomial(ctx, quotient)


def divides(d: Polynomial, p: Polynomial) -> bool:
    return exact_divide(p, d) is not None


def _univariate_coeffs(p: Polynomial, i: int) -> dict[int, Polynomial]:
    """View p as univariate in variable i: exponent -> coefficient polynomial."""
    ctx = p.context
    buckets: dict[int, dict[Monomial, Fraction]] = {}
    for m, c in p.terms.items():
        e = m[i]
        rest = m[:i] + (0,) + m[i + 1:]
        buckets.setdefault(e, {})[rest] = c
    return {e: Polynomial(ctx, terms) for e, terms in buckets.items()}


def _from_univariate(coeffs: dict[int, Polynomial], i: int, ctx) -> Polynomial:
    out: dict[Monomial, Fraction] = {}
    for e, poly in coeffs.items():
        for m, c in poly.terms.items():
            out[m[:i] + (e,) + m[i + 1:]] = c
    return Polynomial(ctx, out)


def _deg_in(p: Polynomial, i: int) -> int:
    return max((m[i] for m in p.terms), default=-1)


def _lead_coeff_in(p: Polynomial, i: int) -> Polynomial:
    d = _deg_in(p, i)
    return _univariate_coeffs(p, i)[d]


def _shift(p: Polynomial, i: int, k: int) -> Polynomial:
    """Multiply by the i-th variable to the k-th power."""
    return Polynomial(p.context, {m[:i] + (m[i] + k,) + m[i + 1:]: c for m, c in p.terms.items()})


def _prem(a: Polynomial, b: Polynomial, i: int) -> Polynomial:
    """Pseudo-remainder of a by b in variable i: lc(b)^(da-db+1)*a mod b."""
    da, db = _deg_in(a, i), _deg_in(b, i)
    lc_b = _lead_coeff_in(b, i)
    rem = a
    steps = da - db + 1
    while not rem.is_zero() and _deg_in(rem, i) >= db:
        dr = _deg_in(rem, i)
        lc_r = _lead_coeff_in(rem, i)
        rem = lc_b * rem - _shift(lc_r * b, i, dr - db)
        steps -= 1
    if steps > 0:
        rem = rem * lc_b ** steps
    return rem


def _content(p: Polynomial, i: int) -> Polynomial:
    """gcd of the coefficients of p viewed univariately in variable i."""
    coeffs = list(_univariate_coeffs(p, i).values())
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = _gcd_inner(acc, c)
        if acc.is_constant():
            break
    return acc.monic_lex()


def _gcd_inner(p: Polynomial, q: Polynomial) -> Polynomial:
    ctx = p.context
    if p.is_zero():
        return q.monic_lex()
    if q.is_zero():
        return p.monic_lex()
    if p.is_constant() or q.is_constant():
        return Polynomial.one(ctx)
    i = next(k for k in range(ctx.nvars) if _deg_in(p, k) > 0 or _deg_in(q, k) > 0)
    dp, dq = _deg_in(p, i), _deg_in(q, i)
    if dp == 0:
        return _gcd_inner(p, _content(q, i))
    if dq == 0:
        return _gcd_inner(_content(p, i), q)
    cp, cq = _content(p, i), _content(q, i)
    c = _gcd_inner(cp, cq)
    f1 = exact_divide(p, cp)
    f2 = exact_divide(q, cq)
    assert f1 is not None and f2 is not None
    if _deg_in(f1, i) < _deg_in(f2, i):
        f1, f2 = f2, f1
    g = Polynomial.one(ctx)
    h = Polynomial.one(ctx)
    while True:
        delta = _deg_in(f1, i) - _deg_in(f2, i)
        rem = _prem(f1, f2, i)
        if rem.is_zero():
            pp = exact_divide(f2, _content(f2, i))
            assert pp is not None
            return (c * pp).monic_lex()
        if _deg_in(rem, i) == 0:
            return c.monic_lex()
        f1 = f2
        divisor = g * h ** delta
        f2 = exact_divide(rem, divisor)
        assert f2 is not None, "subresultant division must be exact"
        g = _lead_coeff_in(f1, i)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h_new = exact_divide(g ** delta, h ** (delta - 1))
            assert h_new is not None
            h = h_new


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Lex-monic gcd; raises DomainError when both inputs are zero.

    Postcondition (checked): the result divides both inputs exactly.
    """
    if p.context != q.context:
        raise ContextMismatchError("gcd operands share no context")
    if p.is_zero() and q.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    g = _gcd_inner(p, q)
    assert p.is_zero() or divides(g, p), "gcd postcondition failed"
    assert q.is_zero() or divides(g, q), "gcd postcondition failed"
    return g
