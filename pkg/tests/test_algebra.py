from fractions import Fraction

import pytest

from symorder.algebra import (AlgebraError, JacobiError, LieAlgebra, abelian, dump_algebra, heisenberg,
                              kappa, load_algebra, parse_algebra_spec, su2, verify_jacobi)

SU2_DOC = """
name = "su2"
dim = 3

[[bracket]]
i = 1
j = 2
k = 3
c = "1"

[[bracket]]
i = 2
j = 3
k = 1
c = "1"

[[bracket]]
i = 3
j = 1
k = 2
c = "1"
"""


def test_document_without_brackets_is_abelian():
    L = load_algebra('dim = 3\n')
    assert L.is_abelian
    assert all(L.c(i, j, k) == 0 for i in range(1, 4) for j in range(1, 4) for k in range(1, 4))


def test_su2_document_matches_builtin():
    L = load_algebra(SU2_DOC)
    assert verify_jacobi(L).passed
    assert L.tensor == su2().tensor


def test_reversed_pair_is_folded_with_a_sign():
    # (3,1,2) means [x3, x1] = x2, stored as C^2_13 = -1
    L = load_algebra(SU2_DOC)
    assert L.c(1, 3, 2) == -1
    assert L.c(3, 1, 2) == 1


def test_jacobi_violation_is_located():
    bad = LieAlgebra.from_brackets(3, [(1, 2, 3, 1), (2, 3, 2, 1)], check=False)
    rep = verify_jacobi(bad)
    assert not rep.passed
    assert rep.failures and len(rep.failures[0]["quadruple"]) == 4
    with pytest.raises(JacobiError):
        LieAlgebra.from_brackets(3, [(1, 2, 3, 1), (2, 3, 2, 1)])


def test_an_apparent_counterexample_actually_satisfies_jacobi():
    L = LieAlgebra.from_brackets(3, [(1, 2, 3, 1), (1, 3, 3, 1)], check=False)
    assert verify_jacobi(L).passed


@pytest.mark.parametrize("doc, message", [
    ("dim = 3\nfoo = 1\n", "unknown keys"),
    ("name = 'x'\n", "missing 'dim'"),
    ("dim = 9\n", "dimension"),
    ("dim = 2\n[[bracket]]\ni = 1\nj = 1\nk = 2\nc = '1'\n", None),
    ("dim = 2\n[[bracket]]\ni = 1\nj = 2\nk = 2\n", "missing"),
    ("dim = 2\n[[bracket]]\ni = 1\nj = 2\nk = 2\nc = 'x'\n", None),
    ("dim = [", "parse error"),
])
def test_bad_documents(doc, message):
    with pytest.raises(AlgebraError, match=message):
        load_algebra(doc)


def test_builtins():
    assert abelian(2).is_abelian
    H = heisenberg()
    assert H.c(1, 2, 3) == 1 and H.c(2, 1, 3) == -1
    assert sum(1 for _ in H.nonzero) == 2
    K = kappa(3, (1, 0, 0))
    assert K.c(1, 2, 2) == 1 and K.c(1, 3, 3) == 1 and K.c(2, 3, 1) == 0
    for L in (abelian(4), H, su2(), K):
        assert verify_jacobi(L).passed


def test_specs_and_round_trip():
    assert parse_algebra_spec("abelian:4").n == 4
    K = parse_algebra_spec("kappa:3:1,0,1/2")
    # [x2, x3] = a2 x3 - a3 x2
    assert K.c(1, 2, 2) == 1 and K.c(2, 3, 2) == Fraction(-1, 2) and K.c(2, 3, 3) == 0
    assert verify_jacobi(K).passed
    for L in (su2(), heisenberg(), K):
        back = load_algebra(dump_algebra(L))
        assert back.tensor == L.tensor
    with pytest.raises(AlgebraError):
        parse_algebra_spec("so3")
    with pytest.raises(AlgebraError):
        parse_algebra_spec("su2:2")


def test_bracket_is_antisymmetric_and_bilinear(builtin):
    u, v = [1, 2, -1], [Fraction(1, 2), 0, 3]
    assert builtin.bracket(u, v) == [-x for x in builtin.bracket(v, u)]
    assert builtin.bracket(u, u) == [0, 0, 0]
