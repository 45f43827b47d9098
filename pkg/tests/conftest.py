import pytest

from symorder.algebra import abelian, heisenberg, kappa, su2


@pytest.fixture(params=["abelian", "heisenberg", "su2", "kappa"])
def builtin(request):
    return {"abelian": lambda: abelian(3), "heisenberg": heisenberg, "su2": su2,
            "kappa": lambda: kappa(3, (1, 0, 0))}[request.param]()


@pytest.fixture(params=["heisenberg", "su2", "kappa"])
def nonabelian(request):
    return {"heisenberg": heisenberg, "su2": su2, "kappa": lambda: kappa(3, (1, 0, 0))}[request.param]()
