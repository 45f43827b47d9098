from fractions import Fraction

import pytest

from symorder.algebra import abelian, heisenberg, su2
from symorder.feynman import (BigradedCoproduct, coassociativity_check, commutator_tree_expansion_check,
                              coproduct_adjoint, coproduct_table, coproduct_trees, counit_check, ev,
                              expansion1_terms, explicit_display_check, fev, fev_by_definition,
                              nested_commutator, nested_commutator_expansion1, s1p_symmetry_check,
                              selection_rule_check, vacuum_symmetrization_check)
from symorder.series import phi_symmetric
from symorder.suite import feyrule_check
from symorder.trees import BLACK, WHITE_LEAF, OrderedTree, enumerate_ordered, parse_tree


def test_single_node_trees():
    L = su2()
    assert str(fev(L, WHITE_LEAF, 2)) == "d2⊗1"
    assert str(fev(L, BLACK, 2)) == "1⊗d2"
    e = ev(L, OrderedTree(WHITE_LEAF, (1,)))
    assert all(e.component(mu, (a,)).constant_term() == (mu == a) for mu in range(1, 4) for a in range(1, 4))


def test_feyrule_diagram(builtin):
    assert feyrule_check(builtin).passed


def test_fev_matches_its_definition(nonabelian):
    for w, b in [(2, 1), (2, 2), (3, 1)]:
        for t in enumerate_ordered(w, b):
            for mu in range(1, 4):
                assert fev(nonabelian, t, mu) == fev_by_definition(nonabelian, t, mu)


def test_selection_rule(nonabelian):
    assert selection_rule_check(nonabelian, 4, 2).passed
    assert fev(nonabelian, parse_tree("w(w(),b)"), 1).is_zero()


def test_degree_two_coproduct():
    got = coproduct_trees(su2(), 1, 2)
    assert str(got) == "1⊗d1 + d1⊗1 + 1/2*d2⊗d3 - 1/2*d3⊗d2"
    assert got.lines()[2] == "1/2 * d2 ⊗ d3"


def test_abelian_coproduct_is_primitive():
    for route in ("trees", "adjoint"):
        for D in coproduct_table(abelian(3), 5, route):
            assert D.terms == {((0, 0, 0), tuple(int(i == D.mu - 1) for i in range(3))): 1,
                               (tuple(int(i == D.mu - 1) for i in range(3)), (0, 0, 0)): 1}


def test_explicit_display(builtin):
    assert explicit_display_check(builtin, P=4).passed


@pytest.mark.parametrize("P", [1, 2, 3, 4, 5])
def test_routes_agree(nonabelian, P):
    phi = phi_symmetric(nonabelian, max(P - 1, 1))
    for mu in range(1, 4):
        assert coproduct_trees(nonabelian, mu, P) == coproduct_adjoint(nonabelian, phi, mu, P)


def test_counit_and_coassociativity():
    for L in (su2(), heisenberg()):
        table = coproduct_table(L, 4)
        assert counit_check(table).passed
        assert coassociativity_check(table, 4).passed


def test_coassociativity_detects_a_wrong_table():
    table = coproduct_table(su2(), 3)
    broken = [table[0].scale(1), table[1], table[2] + BigradedCoproduct(3, 3, {((1, 0, 0), (0, 1, 0)): 1})]
    assert not coassociativity_check(broken, 3).passed


def test_expansion1_has_factorial_many_terms():
    assert [len(expansion1_terms(k)) for k in range(1, 5)] == [1, 1, 2, 6]


def test_nested_commutators_two_ways(nonabelian):
    phi = phi_symmetric(nonabelian, 5)
    for alphas in [(1,), (2, 1), (1, 2, 3), (3, 1, 1)]:
        for mu in range(1, 4):
            assert nested_commutator(nonabelian, phi, mu, alphas) == \
                nested_commutator_expansion1(nonabelian, phi, mu, alphas)


def test_commutators_as_tree_sums(nonabelian):
    for w in (1, 2, 3):
        assert commutator_tree_expansion_check(nonabelian, w, 4).passed


def test_vacuum_symmetrization(builtin):
    for w in (2, 3, 4):
        assert vacuum_symmetrization_check(builtin, w).passed


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_s1p_symmetry(nonabelian, p):
    rep = s1p_symmetry_check(nonabelian, p)
    assert rep.passed
    if p == 3:
        assert rep.details["literal-sign-holds"]


def test_printed_s1p_sign_fails_for_p_two():
    assert not s1p_symmetry_check(su2(), 2).details["literal-sign-holds"]
