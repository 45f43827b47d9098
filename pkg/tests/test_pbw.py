import random
from fractions import Fraction

import pytest

from symorder.algebra import abelian, su2
from symorder.leibniz import random_pbw
from symorder.pbw import (PbwElement, PbwError, coexp_xi, deformed_partial, evaluate_series_at_deformed,
                          pbw_mul, pbw_word, star_pbw, theta_xi_check, xi_inverse)
from symorder.polynomial import Polynomial
from symorder.series import TruncatedSeries, phi_symmetric


def X(L, i):
    return PbwElement.generator(L, i)


def x(i, n=3):
    return Polynomial.variable(n, i - 1)


def test_straightening_one_step():
    L = su2()
    assert X(L, 2) * X(L, 1) == X(L, 1) * X(L, 2) - X(L, 3)
    assert str(X(L, 2) * X(L, 1)) == "X1*X2 - X3"


def test_words_and_commutators(builtin):
    L = builtin
    for i in range(1, 4):
        for j in range(1, 4):
            comm = pbw_word(L, [i, j]) - pbw_word(L, [j, i])
            expected = PbwElement.linear(L, [L.c(i, j, k) for k in range(1, 4)])
            assert comm == expected


def test_pbw_associativity(builtin):
    rng = random.Random(5)
    for _ in range(25):
        a, b, c = (random_pbw(rng, builtin, rng.randint(1, 3)) for _ in range(3))
        assert pbw_mul(builtin, pbw_mul(builtin, a, b), c) == pbw_mul(builtin, a, pbw_mul(builtin, b, c))


def test_xi_examples():
    L = su2()
    assert coexp_xi(L, x(1)) == X(L, 1)
    assert coexp_xi(L, x(1) * x(2)) == X(L, 1) * X(L, 2) - Fraction(1, 2) * X(L, 3)


def test_xi_inverse_examples():
    L = su2()
    phi = phi_symmetric(L, 2)
    assert xi_inverse(L, phi, X(L, 1)) == x(1)
    assert xi_inverse(L, phi, X(L, 1) * X(L, 2)) == x(1) * x(2) + Fraction(1, 2) * x(3)


def test_xi_inverse_needs_cutoff():
    L = su2()
    with pytest.raises(PbwError):
        xi_inverse(L, phi_symmetric(L, 1), X(L, 1) * X(L, 2) * X(L, 3))


def test_round_trip(builtin):
    assert theta_xi_check(builtin, 5).passed


def test_star_pbw():
    L = su2()
    phi = phi_symmetric(L, 3)
    assert star_pbw(L, phi, x(1), x(2)) == x(1) * x(2) + Fraction(1, 2) * x(3)
    A = abelian(3)
    f, g = x(1) + x(2) * x(3), x(1) * x(1)
    assert star_pbw(A, phi_symmetric(A, 3), f, g) == f * g


def test_deformed_partials_on_generators(builtin):
    phi = phi_symmetric(builtin, 3)
    for mu in range(1, 4):
        for nu in range(1, 4):
            got = deformed_partial(builtin, phi, mu, X(builtin, nu))
            assert got == PbwElement.one(builtin) * (1 if mu == nu else 0)


def test_deformed_partial_transport():
    L = su2()
    phi = phi_symmetric(L, 4)
    u = X(L, 1) * X(L, 2)
    got = deformed_partial(L, phi, 3, u)
    assert got == Fraction(1, 2) * PbwElement.one(L)
    # d-hat = xi d xi^-1 on every monomial of degree <= 3
    for e in [(1, 1, 0), (2, 0, 1), (0, 1, 2), (1, 1, 1)]:
        u = PbwElement.ordered_monomial(L, e)
        f = xi_inverse(L, phi, u)
        for mu in range(1, 4):
            assert deformed_partial(L, phi, mu, u) == coexp_xi(L, f.diff(mu - 1))


def test_series_evaluation():
    L, A = su2(), abelian(3)
    phi = phi_symmetric(L, 3)
    u = X(L, 1) * X(L, 2)
    assert evaluate_series_at_deformed(L, phi, TruncatedSeries.constant(3, 3), u) == u
    s = TruncatedSeries(3, 3, {(1, 1, 0): 1})
    assert evaluate_series_at_deformed(A, phi_symmetric(A, 3), s, X(A, 1) * X(A, 2)) == PbwElement.one(A)
