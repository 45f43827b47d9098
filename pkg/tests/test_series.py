from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symorder.algebra import abelian, heisenberg, su2
from symorder.series import (SeriesError, TruncatedSeries, bernoulli, bernoulli_identity_check, c_matrix,
                             matrix_powers, phi_identity, phi_symmetric, verify_phi_equation)


def d(i, D, n=3):
    return TruncatedSeries.variable(n, D, i - 1)


def test_truncation_drops_high_degree():
    assert (d(1, 1) * d(1, 1)).is_zero()


def test_derivative_of_square():
    s = d(1, 3) * d(1, 3)
    assert s.partial_derivative(1) == 2 * d(1, 2)
    assert s.partial_derivative(1).cutoff == 2


def test_hand_product():
    one = TruncatedSeries.constant(3, 3)
    assert (one + d(1, 3)) * (one - d(1, 3)) == one - d(1, 3) * d(1, 3)


def test_mismatched_cutoffs_are_rejected():
    with pytest.raises(SeriesError):
        d(1, 2) + d(1, 3)


def test_rendering_is_graded_lex():
    s = TruncatedSeries(3, 3, {(0, 0, 0): 1, (0, 0, 1): Fraction(1, 2), (2, 0, 0): Fraction(-1, 12)})
    assert str(s) == "1 + 1/2*d3 - 1/12*d1^2"


small = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3),
                        st.fractions(min_value=-3, max_value=3, max_denominator=4), max_size=5)


@settings(max_examples=60, deadline=None)
@given(small, small, small)
def test_truncated_mul_is_commutative_and_associative(a, b, c):
    A, B, C = (TruncatedSeries(3, 4, t) for t in (a, b, c))
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert all(bernoulli(k) == 0 for k in (3, 5, 7, 9))
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("l", range(1, 9))
def test_bernoulli_identity(l):
    rep = bernoulli_identity_check(l)
    assert rep.passed
    if l == 1:
        assert rep.details["lhs"] == Fraction(1, 12)


def test_c_matrix_entries():
    L = su2()
    C = c_matrix(L, 2)
    # C^1_2 = C^1_{2k} d^k = C^1_{23} d^3
    assert C.entry(1, 2) == d(3, 2)
    assert c_matrix(abelian(3), 2)[0, 0].is_zero()
    H = heisenberg()
    powers = matrix_powers(c_matrix(H, 4), 3)
    assert all(x.is_zero() for row in powers[2].rows for x in row)


def test_phi_is_identity_on_abelian():
    assert phi_symmetric(abelian(3), 4) == phi_identity(abelian(3), 4)


def test_phi_low_order_terms():
    L = su2()
    phi = phi_symmetric(L, 2)
    C = c_matrix(L, 2)
    C2 = C @ C
    for a in range(3):
        for b in range(3):
            expected = (1 if a == b else 0) + Fraction(1, 2) * C[a, b] + Fraction(1, 12) * C2[a, b]
            assert phi[a, b] == expected


def test_phi_equation(builtin):
    rep = verify_phi_equation(builtin, phi_symmetric(builtin, 6))
    assert rep.passed
    assert rep.details["valid-through"] == 5


def test_identity_phi_fails_off_abelian():
    rep = verify_phi_equation(su2(), phi_identity(su2(), 4))
    assert not rep.passed
    assert verify_phi_equation(abelian(3), phi_identity(abelian(3), 4)).passed
