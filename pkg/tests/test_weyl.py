import random
from fractions import Fraction

import pytest

from symorder.algebra import su2
from symorder.polynomial import Polynomial, monomials_up_to
from symorder.series import phi_identity, phi_symmetric
from symorder.weyl import (WeylError, WeylOperator, apply, coderivation_check, random_operator,
                           random_x_linear_operator, realize_generator, vacuum, weyl_mul)

n = 2


def X(i):
    return WeylOperator.x(n, i)


def D(i):
    return WeylOperator.d(n, i)


def test_defining_relation():
    assert weyl_mul(D(1), X(1)) == weyl_mul(X(1), D(1)) + WeylOperator.scalar(n)
    assert str(weyl_mul(X(1), D(1))) == "x1*d1"


def test_double_derivative_past_square():
    lhs = weyl_mul(weyl_mul(D(1), D(1)), weyl_mul(X(1), X(1)))
    expected = weyl_mul(weyl_mul(X(1), X(1)), weyl_mul(D(1), D(1))) + 4 * weyl_mul(X(1), D(1)) + \
        WeylOperator.scalar(n, 2)
    assert lhs == expected


def test_apply_and_vacuum():
    x1 = Polynomial.variable(n, 0)
    assert apply(D(1), x1 * x1) == 2 * x1
    assert apply(weyl_mul(X(2), D(1)), x1) == Polynomial.variable(n, 1)
    assert vacuum(weyl_mul(X(1), D(2)) + X(1)) == x1
    assert vacuum(D(1)).is_zero()


def test_cutoff_guards_apply():
    A = WeylOperator.d(n, 1, cutoff=1)
    with pytest.raises(WeylError):
        apply(A, Polynomial.monomial((2, 0)))


def test_realized_generators():
    L = su2()
    phi = phi_symmetric(L, 4)
    for i in range(1, 4):
        assert vacuum(realize_generator(phi, i)) == Polynomial.variable(3, i - 1)
    ident = phi_identity(L, 3)
    assert realize_generator(ident, 2) == WeylOperator.x(3, 2, cutoff=3)


def test_realized_generators_satisfy_the_brackets(builtin):
    phi = phi_symmetric(builtin, 5)
    gens = [realize_generator(phi, i) for i in range(1, 4)]
    for i in range(3):
        for j in range(3):
            comm = gens[i].commutator(gens[j])
            rhs = WeylOperator.zero(3, comm.cutoff)
            for k in range(3):
                c = builtin.c(i + 1, j + 1, k + 1)
                if c:
                    rhs = rhs + c * gens[k].truncate(comm.cutoff)
            assert comm.agrees_with(rhs, comm.cutoff)


def test_mul_is_associative_and_a_homomorphism():
    rng = random.Random(7)
    for _ in range(60):
        A, B, C = (random_operator(rng, 3, 2, 2) for _ in range(3))
        assert weyl_mul(weyl_mul(A, B), C) == weyl_mul(A, weyl_mul(B, C))
        f = Polynomial(3, {m: rng.randint(-2, 2) for m in rng.sample(list(monomials_up_to(3, 3)), 4)})
        assert apply(weyl_mul(A, B), f) == apply(A, apply(B, f))


def test_truncated_operators_agree_on_the_window():
    rng = random.Random(11)
    for _ in range(30):
        A, B, C = (random_operator(rng, 2, 2, 3, cutoff=4) for _ in range(3))
        left, right = weyl_mul(weyl_mul(A, B), C), weyl_mul(A, weyl_mul(B, C))
        w = min(left.cutoff, right.cutoff)
        if w >= 0:
            assert left.agrees_with(right, w)


def test_coderivation():
    rng = random.Random(3)
    for _ in range(100):
        A = random_x_linear_operator(rng, 3, rng.randint(1, 3), rng.randint(0, 5))
        e = rng.choice([m for m in monomials_up_to(3, 5)])
        assert coderivation_check(A, Polynomial.monomial(e, Fraction(rng.randint(1, 3), 2))).passed


def test_second_order_operator_is_not_a_coderivation():
    A = weyl_mul(X(1), weyl_mul(X(1), D(1)))
    assert not coderivation_check(A, Polynomial.monomial((2, 0))).passed
