from fractions import Fraction

import pytest

from symorder.algebra import abelian, heisenberg, kappa, su2
from symorder.polynomial import Polynomial
from symorder.series import phi_symmetric
from symorder.star import (StarError, chi_check, chi_series, exponential_grid, m_operator,
                           main_theorem_star_check, star_associativity_check, star_coproduct,
                           star_exponential, star_routes)
from symorder.weyl import WeylOperator, weyl_mul


def x(i, n=3):
    return Polynomial.variable(n, i - 1)


def test_star_examples():
    L = su2()
    assert star_coproduct(L, None, x(1), x(2)) == x(1) * x(2) + Fraction(1, 2) * x(3)
    rep = star_routes(L, x(1), x(2) * x(3), ("pbw", "coproduct", "adjoint"))
    assert rep.passed
    f, g = x(1) + x(2) * x(3), x(1) * x(1)
    assert star_coproduct(abelian(3), None, f, g) == f * g


def test_heisenberg_associativity_example():
    L = heisenberg()
    phi = phi_symmetric(L, 3)
    assert star_associativity_check(L, phi, x(1), x(2), x(1)).passed


def test_main_theorem_pairs(nonabelian):
    rep = main_theorem_star_check(nonabelian, 4)
    assert rep.passed
    assert rep.details["pairs"] == 141


def test_degree_filtration():
    # the degree-d part of f*g only needs the coproduct through degree d
    L = su2()
    f, g = x(1) * x(2), x(3) * x(1)
    full = star_coproduct(L, None, f, g)
    for d in range(0, 5):
        part = full.homogeneous_part(d)
        assert part.degree() in (d, -1) or part.is_zero()
    assert full.homogeneous_part(4) == f * g


def test_associativity():
    for L in (abelian(3), su2(), kappa(3, (1, 0, 0))):
        s = x(1) + x(2)
        assert star_associativity_check(L, None, s, s, s).passed
    K = kappa(3, (1, 0, 0))
    assert star_associativity_check(K, None, x(1) * x(2), x(3), x(1) * x(3)).passed


def test_star_degree_bound():
    with pytest.raises(StarError):
        star_coproduct(su2(), None, x(1) ** 4, x(2) ** 3)


def test_exponentials_trivial_and_examples():
    assert star_exponential(su2(), [0, 0, 0], [0, 0, 0], 4).passed
    H = star_exponential(heisenberg(), [1, 0, 0], [0, 1, 0], 4)
    assert H.passed
    assert str(H.results["exp[t^2]"]) == "1/2*x1^2 + x1*x2 + 1/2*x2^2 + 1/2*x3"
    assert star_exponential(su2(), [1, 0, 0], [0, 1, 0], 4).passed


def test_exponential_grid(builtin):
    assert exponential_grid(builtin, 4).passed


def test_m_operators_form_the_adjoint_representation(builtin):
    M = [m_operator(builtin, t) for t in range(1, 4)]
    if builtin.is_abelian:
        assert all(m.is_zero() for m in M)
    for a in range(3):
        for b in range(3):
            rhs = WeylOperator.zero(3)
            for k in range(3):
                c = builtin.c(a + 1, b + 1, k + 1)
                if c:
                    rhs = rhs + c * M[k]
            assert M[a].commutator(M[b]) == rhs
        for rho in range(1, 4):
            lhs = M[a].commutator(WeylOperator.d(3, rho))
            rhs = WeylOperator.zero(3)
            for mu in range(1, 4):
                c = builtin.c(a + 1, mu, rho)
                if c:
                    rhs = rhs - c * WeylOperator.d(3, mu)
            assert lhs == rhs


def test_chi_first_order_term():
    L = su2()
    for tau in range(1, 4):
        s = chi_series(L, tau, 1, 2, 3)
        assert s.constant_term() == Fraction(1, 2) * L.c(1, 2, tau)


def test_chi_theorem():
    assert chi_check(su2(), 1, 2, 4, 1).passed
    for L in (su2(), kappa(3, (1, 0, 0)), abelian(3)):
        for mu in range(1, 4):
            for nu in range(1, 4):
                assert chi_check(L, mu, nu, 5, 2).passed
    assert chi_check(su2(), 2, 3, 5, 3).passed
    with pytest.raises(StarError):
        chi_check(su2(), 1, 2, 1)
