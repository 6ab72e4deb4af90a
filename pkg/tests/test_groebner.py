"""Groebner engine: division, completion, membership, cofactor soundness."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lndkit import (
    DomainError,
    MonomialOrder,
    Polynomial,
    RowSpace,
    VarContext,
    buchberger,
    ideal_member,
    normal_form,
    parse_polynomial,
)
from lndkit.linalg import vec_of

from helpers import rand_poly

CTX = VarContext((), ("X", "Y"))
DRL = MonomialOrder.degrevlex(CTX)
LEX = MonomialOrder.lex(CTX)


def P(text):
    return parse_polynomial(text, CTX)


@given(st.integers(0, 2 ** 30))
@settings(max_examples=60, deadline=None)
def test_order_is_multiplicative_and_bounded_below(seed):
    rng = random.Random(seed)
    mono = lambda: (rng.randint(0, 5), rng.randint(0, 5))
    a, b, c = mono(), mono(), mono()
    for order in (DRL, LEX):
        ka, kb = order.key(a), order.key(b)
        kac = order.key((a[0] + c[0], a[1] + c[1]))
        kbc = order.key((b[0] + c[0], b[1] + c[1]))
        assert (ka > kb) == (kac > kbc)
        assert order.key(a) >= order.key((0, 0))


def test_normal_form_membership_of_multiple():
    rem, quots = normal_form(P("X^2"), [P("X")], DRL)
    assert rem.is_zero()
    assert quots == [P("X")]


def test_normal_form_non_membership():
    rem, quots = normal_form(P("Y"), [P("X")], DRL)
    assert rem == P("Y")
    assert quots == [Polynomial.zero(CTX)]


def test_normal_form_single_division_step():
    rem, quots = normal_form(P("X^2 + X"), [P("X^2")], DRL)
    assert rem == P("X")
    assert quots == [P("1")]


def test_normal_form_identity():
    rng = random.Random(7)
    for _ in range(30):
        p = rand_poly(rng, CTX)
        divisors = [rand_poly(rng, CTX, allow_zero=False) for _ in range(2)]
        rem, quots = normal_form(p, divisors, DRL)
        acc = rem
        for q, d in zip(quots, divisors):
            acc = acc + q * d
        assert acc == p


def test_buchberger_monomial_ideal():
    gb = buchberger([P("X"), P("Y")])
    assert set(gb.generators) == {P("X"), P("Y")}


def test_buchberger_hand_elimination():
    gb = buchberger([P("X + Y"), P("X - Y")])
    assert set(gb.generators) == {P("X"), P("Y")}


def test_buchberger_closure_by_hand():
    # X = (X^2 + X) - X^2 generates everything the inputs do
    gb = buchberger([P("X^2"), P("X^2 + X")])
    assert gb.generators == (P("X"),)


def test_buchberger_requires_generators():
    with pytest.raises(DomainError):
        buchberger([])


def test_cofactor_matrix_recombines():
    gb = buchberger([P("X^2 + Y"), P("X*Y - 1"), P("Y^3 + X")])
    for g, row in zip(gb.generators, gb.cofactors):
        acc = Polynomial.zero(CTX)
        for c, f in zip(row, gb.inputs):
            acc = acc + c * f
        assert acc == g


def test_ideal_member_partition_of_unity():
    cof = ideal_member(P("1"), [P("X"), P("1 - X")])
    assert cof == [P("1"), P("1")]


def test_ideal_member_proper_ideal():
    assert ideal_member(P("1"), [P("Y")]) is None


def test_ideal_member_hand_identity():
    cof = ideal_member(P("X"), [P("X^2"), P("X^2 + X")])
    assert cof == [P("-1"), P("1")]


def test_ideal_member_empty_rejected():
    with pytest.raises(DomainError):
        ideal_member(P("1"), [])


def _brute_force_member(p, gens, deg_bound=6):
    """Independent oracle: solve p = sum(a_i g_i), deg a_i <= bound, exactly."""
    space = RowSpace()
    monos = [
        (i, j)
        for i in range(deg_bound + 1)
        for j in range(deg_bound + 1 - i)
    ]
    for gi, g in enumerate(gens):
        for m in monos:
            space.insert(vec_of(Polynomial(CTX, {m: Fraction(1)}) * g), (gi, m))
    return space.express(vec_of(p))


def test_membership_agrees_with_brute_force_oracle():
    rng = random.Random(20260810)
    checked = 0
    for _ in range(40):
        gens = [rand_poly(rng, CTX, max_degree=3, max_terms=3, allow_zero=False) for _ in range(rng.randint(1, 3))]
        if any(g.is_zero() for g in gens):
            continue
        p = rand_poly(rng, CTX, max_degree=3, max_terms=3)
        oracle = _brute_force_member(p, gens)
        verdict = ideal_member(p, gens)
        if oracle is not None:
            assert verdict is not None, f"oracle found witness but engine said No: {p} in {[str(g) for g in gens]}"
            checked += 1
        if verdict is not None:
            acc = Polynomial.zero(CTX)
            for c, g in zip(verdict, gens):
                acc = acc + c * g
            assert acc == p
    assert checked >= 5


def test_membership_order_independent():
    rng = random.Random(99)
    for _ in range(25):
        gens = [rand_poly(rng, CTX, max_degree=2, max_terms=3, allow_zero=False) for _ in range(2)]
        p = rand_poly(rng, CTX, max_degree=2, max_terms=3)
        a = ideal_member(p, gens, DRL)
        b = ideal_member(p, gens, LEX)
        assert (a is None) == (b is None)


def test_deterministic_bases():
    gens = [P("X^2 + Y^2 - 1"), P("X*Y - 2")]
    g1 = buchberger(gens)
    g2 = buchberger(gens)
    assert g1.generators == g2.generators
    assert g1.cofactors == g2.cofactors


def test_bases_are_reduced():
    from lndkit.groebner import leading_term
    from lndkit.polynomial import mono_divides

    rng = random.Random(17)
    for _ in range(15):
        gens = [rand_poly(rng, CTX, max_degree=3, max_terms=3, allow_zero=False) for _ in range(2)]
        if any(g.is_zero() for g in gens):
            continue
        gb = buchberger(gens)
        leads = [leading_term(g, gb.order) for g in gb.generators]
        for i, (mi, ci) in enumerate(leads):
            assert ci == 1  # monic
            for j, (mj, _) in enumerate(leads):
                if i != j:
                    assert not mono_divides(mj, mi)
            # tail terms are irreducible by every other leading term
            tail = dict(gb.generators[i].terms)
            tail.pop(mi)
            for mono in tail:
                for j, (mj, _) in enumerate(leads):
                    if i != j:
                        assert not mono_divides(mj, mono)
