"""The acceptance criteria and the smaller verification bundles used by the CLI.

Each criterion returns a combined Report; ``run_criteria`` adds wall-clock
timing and the time limit so callers can print one line per criterion.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

from .algebra import LieAlgebra, default_builtins, heisenberg, kappa, su2, verify_jacobi
from .feynman import (explicit_display_check, ev, s1p_symmetry_check,
                      selection_rule_check)
from .hausdorff import bigraded_check, compare_coproduct, hausdorff_symmetry_check, oracle_check
from .leibniz import (classical_shape_check, commuting_partials_check, lemma_dxn_check, random_pbw,
                      random_vector)
from .pbw import pbw_mul, theta_xi_check
from .polynomial import Polynomial, monomials_of_degree
from .report import Report
from .series import TruncatedSeries, bernoulli_identity_check, c_matrix, phi_symmetric, verify_phi_equation
from .star import chi_all, exponential_grid, main_theorem_star_check
from .trees import (OrderedTree, closed_form_s, contributing_filter, count_ordered, enumerate_ordered,
                    enumerate_trees, parse_tree)
from .weyl import coderivation_check, random_operator, random_x_linear_operator, weyl_mul

SEED = 20240611


def core_algebras() -> List[LieAlgebra]:
    return [su2(), heisenberg(), kappa(3, (1, 0, 0))]


# property bundles -------------------------------------------------------------

def pbw_associativity(L: LieAlgebra, rng: random.Random, trials: int = 20) -> Report:
    failures = []
    for _ in range(trials):
        a, b, c = (random_pbw(rng, L, rng.randint(1, 3)) for _ in range(3))
        left, right = pbw_mul(L, pbw_mul(L, a, b), c), pbw_mul(L, a, pbw_mul(L, b, c))
        if left != right:
            failures.append({"a": str(a), "b": str(b), "c": str(c)})
    return Report("pbw-associativity", not failures, {"algebra": L.name, "trials": trials}, failures)


def weyl_associativity(n: int, rng: random.Random, trials: int = 30) -> Report:
    """Exact on finite operators; on truncated ones, agreement on the common window."""
    failures = []
    for t in range(trials):
        cutoff = None if t % 2 == 0 else 4
        A, B, C = (random_operator(rng, n, 2, 2, 4, cutoff) for _ in range(3))
        left, right = weyl_mul(weyl_mul(A, B), C), weyl_mul(A, weyl_mul(B, C))
        if cutoff is None:
            ok = left == right
        else:
            window = min(left.cutoff, right.cutoff)
            ok = window >= 0 and left.agrees_with(right, window)
        if not ok:
            failures.append({"A": str(A), "B": str(B), "C": str(C)})
    return Report("weyl-associativity", not failures, {"n": n, "trials": trials}, failures)


def coderivation_suite(n: int, rng: random.Random, trials: int = 40) -> Report:
    reports = []
    for _ in range(trials):
        A = random_x_linear_operator(rng, n, rng.randint(1, n), rng.randint(0, 5))
        e = rng.choice(list(monomials_of_degree(n, rng.randint(0, 5))))
        reports.append(coderivation_check(A, Polynomial.monomial(e)))
    return Report.combine("coderivation", reports, n=n)


def commuting_partials_suite(L: LieAlgebra, rng: random.Random, trials: int = 8) -> Report:
    phi = phi_symmetric(L, 4)
    reports = [commuting_partials_check(L, phi, random_pbw(rng, L, rng.randint(1, 4)))
               for _ in range(trials)]
    return Report.combine("commuting-partials", reports, algebra=L.name)


def dxn_suite(L: LieAlgebra, rng: random.Random, trials: int = 6) -> Report:
    reports = []
    for _ in range(trials):
        p = rng.randint(0, 3)
        f = random_pbw(rng, L, rng.randint(0, 2))
        phi = phi_symmetric(L, max(p + f.degree(), 1))
        reports.append(lemma_dxn_check(L, phi, rng.randint(1, L.n), random_vector(rng, L.n), p, f))
    return Report.combine("lemma-dxn", reports, algebra=L.name)


def classical_shape_suite(L: LieAlgebra, rng: random.Random, trials: int = 6) -> Report:
    reports = []
    for _ in range(trials):
        p = rng.randint(1, 4)
        s = rng.randint(0, p)
        phi = phi_symmetric(L, p)
        reports.append(classical_shape_check(L, phi, random_vector(rng, L.n), p, s))
    return Report.combine("classical-shape", reports, algebra=L.name)


def verify_suite(L: LieAlgebra, D: int = 6, seed: int = SEED) -> Report:
    """jacobi, phi equation, theta-xi round trip, coderivation, commuting partials."""
    rng = random.Random(seed)
    phi = phi_symmetric(L, D)
    reports = [verify_jacobi(L), verify_phi_equation(L, phi), theta_xi_check(L, min(D, 5)),
               coderivation_suite(L.n, rng, 20), commuting_partials_suite(L, rng, 4)]
    return Report.combine("verify", reports, algebra=L.name, cutoff=D)


# acceptance criteria --------------------------------------------------------

def criterion_1() -> Report:
    reports = [verify_phi_equation(L, phi_symmetric(L, 6)) for L in core_algebras()]
    return Report.combine("phi-equation", reports, cutoff=6, through=5)


def criterion_2() -> Report:
    return Report.combine("theta-xi", [theta_xi_check(L, 5) for L in default_builtins()], degree=5)


def criterion_3() -> Report:
    rep = explicit_display_check(su2(), P=4)
    rep.details["weights"] = "1/2,1/12,-1/24"
    return rep


def criterion_4() -> Report:
    expected = [1, 1, 3, 15, 105]
    failures = []
    for w, s in enumerate(expected, start=1):
        routes = {"recursion": count_ordered(w, 0), "closed-form": closed_form_s(w),
                  "enumeration": len(enumerate_ordered(w, 0))}
        if any(v != s for v in routes.values()):
            failures.append({"w": w, "expected": s, **routes})
    contributing = sum(1 for t in enumerate_trees(4, 1) if contributing_filter(t))
    if contributing != 8:
        failures.append({"T^c_(4,1)": contributing, "expected": 8})
    return Report("tree-census", not failures,
                  {"s1..s5": ",".join(map(str, expected)), "T^c_(4,1)": contributing,
                   "prose-s5": "15 (differs from 105)"}, failures)


def feyrule_check(L: LieAlgebra) -> Report:
    """Root alpha_1 with a black left child and a white leaf alpha_2: (1/12) sum_k C^k_{alpha_1} C^mu_{k alpha_2}."""
    t = OrderedTree(parse_tree("w(b,w())"), (1, 2))
    value = ev(L, t)
    n = L.n
    Cm = c_matrix(L, 1)
    failures = []
    for mu in range(1, n + 1):
        for a1 in range(1, n + 1):
            for a2 in range(1, n + 1):
                expected = sum((Fraction(1, 12) * L.c(k, a2, mu) * Cm.entry(k, a1)
                                for k in range(1, n + 1)), TruncatedSeries.zero(n, 1))
                got = value.component(mu, (a1, a2))
                if got.terms != expected.terms:
                    failures.append({"mu": mu, "alphas": (a1, a2), "got": str(got), "expected": str(expected)})
    return Report("feyrule-diagram", not failures, {"algebra": L.name, "tree": "w(b,w())"}, failures)


def criterion_5() -> Report:
    return feyrule_check(su2())


def criterion_6() -> Report:
    reports = [s1p_symmetry_check(L, p) for L in (su2(), kappa(3, (1, 0, 0))) for p in range(1, 5)]
    reports += [bernoulli_identity_check(l) for l in range(1, 9)]
    literal = all(r.details.get("literal-sign-holds", True) for r in reports)
    return Report.combine("s1p-symmetry", reports, sign="(-1)^p", literal_sign_holds=literal)


def criterion_7() -> Report:
    reports = []
    for L in default_builtins():
        reports += [oracle_check(L, 5), bigraded_check(L, 5)]
        reports += [hausdorff_symmetry_check(L, P) for P in range(1, 7)]
    return Report.combine("hausdorff", reports)


def criterion_8() -> Report:
    reports = []
    for L in core_algebras():
        reports.append(compare_coproduct(L, 5))
        reports.append(main_theorem_star_check(L, 4))
    return Report.combine("main-theorem", reports, P=5, star_degree=4)


def criterion_9() -> Report:
    return Report.combine("star-exponential", [exponential_grid(L, 4) for L in default_builtins()], P=4)


def criterion_10() -> Report:
    return Report.combine("chi", [chi_all(L, 5, 2) for L in (su2(), kappa(3, (1, 0, 0)))], D=5)


def criterion_11(seed: int = SEED) -> Report:
    rng = random.Random(seed)
    reports = []
    for L in default_builtins():
        reports.append(pbw_associativity(L, rng))
        reports.append(commuting_partials_suite(L, rng))
        reports.append(dxn_suite(L, rng))
        reports.append(classical_shape_suite(L, rng))
        reports.append(selection_rule_check(L, 4, 2))
    reports.append(weyl_associativity(3, rng))
    reports.append(coderivation_suite(3, rng))
    return Report.combine("property-suites", reports, seed=seed)


CRITERIA: Dict[int, tuple] = {
    1: (criterion_1, 5), 2: (criterion_2, 30), 3: (criterion_3, 10), 4: (criterion_4, 5),
    5: (criterion_5, 1), 6: (criterion_6, 20), 7: (criterion_7, 60), 8: (criterion_8, 90),
    9: (criterion_9, 30), 10: (criterion_10, 30), 11: (criterion_11, 60),
}


def run_criterion(k: int) -> Report:
    """Run one criterion; it passes only if the check passes within its time limit."""
    fn, limit = CRITERIA[k]
    t0 = time.perf_counter()
    rep = fn()
    elapsed = time.perf_counter() - t0
    rep.details = {"criterion": k, **rep.details, "seconds": round(elapsed, 2), "limit": limit}
    if elapsed > limit:
        rep.passed = False
        rep.failures.append({"timeout": f"{elapsed:.2f}s > {limit}s"})
    return rep


def run_criteria(which: Sequence[int] | None = None, on_result: Callable[[Report], None] | None = None) -> List[Report]:
    out = []
    for k in which or sorted(CRITERIA):
        rep = run_criterion(k)
        if on_result:
            on_result(rep)
        out.append(rep)
    return out
