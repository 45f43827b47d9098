from fractions import Fraction

import pytest

from symorder.algebra import abelian, su2
from symorder.feynman import kq_vectors
from symorder.hausdorff import (FreeSeries, HausdorffError, VectorPolynomial, bch_free, bch_oracle,
                                bigraded_H, bigraded_check, compare_coproduct, diagonal_check, dynkin_D,
                                hausdorff_symmetry_check, linear_parts_check, oracle_check)


def br(L, u, v):
    return VectorPolynomial(L.bracket(list(u.components), list(v.components)))


def test_free_series_low_orders():
    H = bch_free(3)
    assert H.terms[(0,)] == 1 and H.terms[(1,)] == 1
    assert H.terms[(0, 1)] == Fraction(1, 2) and H.terms[(1, 0)] == Fraction(-1, 2)
    # 1/12 [X,[X,Y]] contributes +1/12 XXY
    assert H.terms[(0, 0, 1)] == Fraction(1, 12)


def test_free_exp_log_inverse():
    X = FreeSeries.letter(4, 0) + FreeSeries.letter(4, 1).scale(2)
    e = X.exp()
    e.terms.pop((), None)
    assert e.log1p().terms == X.terms


def test_first_two_degrees(builtin):
    k, q = kq_vectors(3)
    assert dynkin_D(builtin, 1) == VectorPolynomial([a + b for a, b in zip(k, q)])
    half = VectorPolynomial(builtin.bracket(k, q)).scale(Fraction(1, 2))
    assert dynkin_D(builtin, 2) == half
    assert bch_oracle(builtin, 2)[1] == half


def test_known_third_and_fourth_order_terms(builtin):
    # H3 = 1/12([X,[X,Y]] + [Y,[Y,X]]), H4 = -1/24 [Y,[X,[X,Y]]]
    k, q = kq_vectors(3)
    X, Y = VectorPolynomial(k), VectorPolynomial(q)
    H3 = (br(builtin, X, br(builtin, X, Y)) + br(builtin, Y, br(builtin, Y, X))).scale(Fraction(1, 12))
    H4 = br(builtin, Y, br(builtin, X, br(builtin, X, Y))).scale(Fraction(-1, 24))
    assert dynkin_D(builtin, 3) == H3
    assert dynkin_D(builtin, 4) == H4


def test_dynkin_matches_oracle(builtin):
    assert oracle_check(builtin, 5).passed


def test_bigraded_routes(builtin):
    assert bigraded_check(builtin, 5).passed
    assert bigraded_H(builtin, 1, 0, "b") == VectorPolynomial(kq_vectors(3)[0])
    with pytest.raises(HausdorffError):
        bigraded_H(builtin, 1, 1, "z")


def test_linear_parts(builtin):
    rep = linear_parts_check(builtin, 5)
    assert rep.passed
    assert rep.details["printed-signs-hold"] == builtin.is_abelian


@pytest.mark.parametrize("P", range(1, 7))
def test_symmetry(builtin, P):
    assert hausdorff_symmetry_check(builtin, P).passed


@pytest.mark.parametrize("P", range(1, 6))
def test_diagonal(builtin, P):
    assert diagonal_check(builtin, P).passed


def test_abelian_series_stops_at_degree_one():
    assert all(dynkin_D(abelian(3), N).is_zero() for N in range(2, 6))


def test_heisenberg_series_stops_at_degree_two():
    from symorder.algebra import heisenberg
    assert all(dynkin_D(heisenberg(), N).is_zero() for N in range(3, 6))


def test_coproduct_is_the_hausdorff_series(nonabelian):
    assert compare_coproduct(nonabelian, 5).passed


def test_pieces_render_in_k_and_q():
    assert str(dynkin_D(su2(), 2)).splitlines()[0] == "D^1 = 1/2*k2*q3 - 1/2*k3*q2"


def test_oracle_at_degree_six():
    L = su2()
    assert bch_oracle(L, 6)[5] == dynkin_D(L, 6)
