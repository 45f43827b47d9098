import random

import pytest

from symorder.leibniz import (classical_shape_check, commutator_operator_check, commuting_partials_check,
                              coproduct_phi_check, lemma_dxn_check, random_pbw, random_vector,
                              twisted_leibniz_check)
from symorder.series import phi_symmetric


@pytest.fixture
def rng():
    return random.Random(1234)


def test_commuting_partials(builtin, rng):
    phi = phi_symmetric(builtin, 4)
    for _ in range(6):
        assert commuting_partials_check(builtin, phi, random_pbw(rng, builtin, rng.randint(1, 4))).passed


def test_dxn_lemma(builtin, rng):
    for _ in range(6):
        p = rng.randint(0, 3)
        f = random_pbw(rng, builtin, rng.randint(0, 2))
        phi = phi_symmetric(builtin, max(p + f.degree(), 1))
        assert lemma_dxn_check(builtin, phi, rng.randint(1, 3), random_vector(rng, 3), p, f).passed


def test_classical_shape(builtin, rng):
    for p in range(1, 5):
        for s in range(0, p + 1):
            phi = phi_symmetric(builtin, p)
            assert classical_shape_check(builtin, phi, random_vector(rng, 3), p, s).passed


def test_twisted_leibniz(builtin, rng):
    phi = phi_symmetric(builtin, 5)
    for _ in range(5):
        u, v = random_pbw(rng, builtin, 2), random_pbw(rng, builtin, 2)
        assert twisted_leibniz_check(builtin, phi, rng.randint(1, 3), u, v).passed


def test_coproduct_of_phi(nonabelian, rng):
    phi = phi_symmetric(nonabelian, 5)
    for _ in range(4):
        f, g = random_pbw(rng, nonabelian, 2), random_pbw(rng, nonabelian, 2)
        mu, nu = rng.randint(1, 3), rng.randint(1, 3)
        assert coproduct_phi_check(nonabelian, phi, mu, nu, f, g).passed


def test_operator_commutators(nonabelian, rng):
    phi = phi_symmetric(nonabelian, 5)
    for alphas in [(1,), (2, 3), (1, 1, 2)]:
        u = random_pbw(rng, nonabelian, 3)
        assert commutator_operator_check(nonabelian, phi, 2, alphas, u).passed


def test_dxn_needs_the_top_term():
    # stopping the sum at k = p - 1 drops a^{alpha_1..alpha_p} [..](f), which is nonzero already at p = 1
    from symorder.algebra import su2
    from symorder.leibniz import contracted_commutators
    from symorder.pbw import PbwElement, deformed_partials, pbw_mul
    L = su2()
    phi = phi_symmetric(L, 2)
    DP = deformed_partials(L, phi)
    a = [1, 0, 0]
    ahat = PbwElement.linear(L, a)
    f = PbwElement.linear(L, [0, 1, 0])
    lhs = DP.partial(1, pbw_mul(L, ahat, f))
    truncated = pbw_mul(L, ahat, DP.partial(1, f))
    assert lhs != truncated
    top = DP.apply_series(contracted_commutators(L, phi, a, 1)[0][0], f)
    assert lhs == truncated + top
