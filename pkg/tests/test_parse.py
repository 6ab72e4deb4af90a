"""Grammar acceptance and rejection for the polynomial parser."""

import pytest

from lndkit import PolyParseError, VarContext, parse_polynomial

CTX = VarContext(("t",), ("X", "Y"))


def P(text):
    return parse_polynomial(text, CTX)


def test_signed_literals():
    assert str(P("-3")) == "-3"
    assert str(P("-1/2")) == "-1/2"
    assert str(P("+4")) == "4"


def test_rational_literal():
    assert P("2/4") == P("1/2")


def test_parentheses_and_precedence():
    assert P("(X + Y)^2") == P("X^2 + 2*X*Y + Y^2")
    assert P("X + Y*X") == P("X*Y + X")


def test_leading_minus_applies_to_term():
    assert P("-t*X + 1") == P("1 - t*X")


def test_implicit_multiplication_rejected():
    with pytest.raises(PolyParseError):
        P("2X")


def test_unknown_variable_with_position():
    with pytest.raises(PolyParseError) as err:
        P("X + Z")
    assert "Z" in str(err.value)
    assert err.value.col == 5


def test_negative_exponent_rejected():
    with pytest.raises(PolyParseError):
        P("X^-2")


def test_rational_exponent_rejected():
    with pytest.raises(PolyParseError):
        P("X^(1/2)")


def test_division_operator_rejected():
    with pytest.raises(PolyParseError):
        P("X/2")


def test_zero_denominator_rejected():
    with pytest.raises(PolyParseError):
        P("1/0")


def test_dangling_operator():
    with pytest.raises(PolyParseError):
        P("X +")


def test_unbalanced_parens():
    with pytest.raises(PolyParseError):
        P("(X + 1")


def test_whitespace_insensitive():
    assert P(" X\n+ \tY ") == P("X + Y")
