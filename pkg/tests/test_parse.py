from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symorder.parse import MAX_EXPONENT, BinOp, Num, ParseError, Pow, Var, parse_expr, parse_polynomial
from symorder.polynomial import Polynomial


def x(i, n=3):
    return Polynomial.variable(n, i - 1)


def test_precedence():
    assert parse_polynomial("x1 + x2*x3^2", 3) == x(1) + x(2) * x(3) ** 2
    assert parse_polynomial("-x1^2", 3) == -(x(1) ** 2)
    assert parse_polynomial("(x1 - x2)*(x1 + x2)", 3) == x(1) ** 2 - x(2) ** 2
    assert parse_polynomial("2 - 3 - 4", 3) == Polynomial.constant(3, -5)


def test_rational_literals():
    assert parse_polynomial("3/4*x2", 3) == Fraction(3, 4) * x(2)
    assert parse_polynomial(" - 1/2 ", 3) == Polynomial.constant(3, Fraction(-1, 2))


def test_ast_shape():
    node = parse_expr("x1*2^3")
    assert node == BinOp("*", Var(1, 0), Pow(Num(Fraction(2)), 3))


@pytest.mark.parametrize("text, position, needle", [
    ("", 0, "empty"),
    ("   ", 0, "empty"),
    ("x1 +", 4, "end of input"),
    ("x1 ? x2", 3, "unexpected character"),
    ("1/0", 2, "zero denominator"),
    ("(x1", 3, "end of input"),
    ("x1 x2", 3, "unexpected 'x2'"),
    ("x1^x2", 3, "unexpected 'x2'"),
    ("x4", 0, "unknown variable"),
    ("x0", 0, "unknown variable"),
])
def test_errors_carry_positions(text, position, needle):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, 3)
    assert info.value.position == position
    assert needle in str(info.value)


def test_expected_tokens_are_named():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x1 *", 3)
    assert "variable" in info.value.expected and "number" in info.value.expected


def test_exponent_cap():
    parse_polynomial(f"x1^{MAX_EXPONENT}", 1)
    with pytest.raises(ParseError, match="exceeds"):
        parse_polynomial(f"x1^{MAX_EXPONENT + 1}", 1)


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=7)
exponents = st.tuples(*[st.integers(0, 3)] * 3)


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(exponents, coefficients, max_size=6))
def test_round_trip(terms):
    f = Polynomial.zero(3)
    for e, c in terms.items():
        f = f + c * Polynomial.monomial(e)
    assert parse_polynomial(str(f), 3) == f
