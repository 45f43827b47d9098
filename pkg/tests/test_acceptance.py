"""One test per acceptance criterion; each prints its PASS/FAIL line."""
import pytest

from symorder.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    rep = run_criterion(k)
    with capsys.disabled():
        print(f"\ncriterion {k}: {rep.line()}")
    assert rep.passed, rep.failures[:5]
