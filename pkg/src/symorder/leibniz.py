"""Deformed Leibniz rules in U(g): the a-hat^p lemma, the classical shape of
symmetric-ordering derivatives, the twisted Leibniz rule and the coproduct
of phi^mu_nu. Each check compares two independent exact computations.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import List, Sequence

from .algebra import LieAlgebra
from .pbw import (PbwElement, deformed_partials, operator_commutator_with_x, pbw_mul)
from .polynomial import monomials_of_degree, monomials_up_to, multinomial_factorial
from .report import Report
from .series import SeriesMatrix, TruncatedSeries
from .feynman import nested_commutators


def contracted_commutators(L: LieAlgebra, phi: SeriesMatrix, a: Sequence, top: int) -> List[List[TruncatedSeries]]:
    """S_k^mu = a^{alpha_1}..a^{alpha_k} [..[d^mu, X_alpha_1], .., X_alpha_k] for k = 1..top.

    Entry k-1 of the result is the vector over mu, valid to degree D - k + 1.
    """
    n = L.n
    a = [Fraction(x) for x in a]

    def column(W):
        return [sum((a[al] * phi[r, al].truncate(W) for al in range(n) if a[al]),
                    TruncatedSeries.zero(n, W)) for r in range(n)]

    out = [column(phi.cutoff)]
    for k in range(2, top + 1):
        W = phi.cutoff - k + 1
        col = column(W)
        prev = out[-1]
        nxt = []
        for mu in range(n):
            acc = TruncatedSeries.zero(n, W)
            for r in range(n):
                if prev[mu] and col[r]:
                    acc = acc + prev[mu].diff(r) * col[r]
            nxt.append(acc)
        out.append(nxt)
    return out


def lemma_dxn_check(L: LieAlgebra, phi: SeriesMatrix, mu: int, a: Sequence, p: int,
                    f: PbwElement) -> Report:
    """d^mu(a^p f) = sum_{k=0}^{p} binom(p,k) a^{alpha_1..alpha_k} a-hat^(p-k) [..[d^mu,X_alpha_1],..](f)."""
    DP = deformed_partials(L, phi)
    ahat = PbwElement.linear(L, a)
    lhs = DP.partial(mu, pbw_mul(L, ahat ** p, f))
    rhs = pbw_mul(L, ahat ** p, DP.partial(mu, f))
    S = contracted_commutators(L, phi, a, p) if p else []
    for k in range(1, p + 1):
        term = DP.apply_series(S[k - 1][mu - 1], f)
        rhs = rhs + comb(p, k) * pbw_mul(L, ahat ** (p - k), term)
    ok = lhs == rhs
    rec = {"mu": mu, "a": [str(x) for x in a], "p": p, "f": str(f)}
    return Report("lemma-dxn", ok, rec, [] if ok else [{**rec, "lhs": str(lhs), "rhs": str(rhs)}])


def classical_shape_check(L: LieAlgebra, phi: SeriesMatrix, a: Sequence, p: int, s: int) -> Report:
    """(1/s!) d^{alpha_1}..d^{alpha_s}(a-hat^p) = binom(p,s) a^{alpha_1}..a^{alpha_s} a-hat^(p-s)."""
    DP = deformed_partials(L, phi)
    ahat = PbwElement.linear(L, a)
    u = ahat ** p
    rest = ahat ** (p - s)
    failures = []
    for d in monomials_of_degree(L.n, s):
        lhs = Fraction(1, factorial(s)) * DP.apply_multi(d, u)
        coef = Fraction(comb(p, s))
        for ai, e in zip(a, d):
            coef *= Fraction(ai) ** e
        rhs = coef * rest
        if lhs != rhs:
            failures.append({"d": d, "lhs": str(lhs), "rhs": str(rhs)})
    return Report("classical-shape", not failures, {"a": [str(x) for x in a], "p": p, "s": s}, failures)


def twisted_leibniz_check(L: LieAlgebra, phi: SeriesMatrix, mu: int, u: PbwElement,
                          v: PbwElement) -> Report:
    """d^mu(u v) = sum_w (1/w!) d^{alpha_1..alpha_w}(u) [..[d^mu,X_alpha_1],..,X_alpha_w](v)."""
    DP = deformed_partials(L, phi)
    NC = nested_commutators(L, phi)
    n = L.n
    lhs = DP.partial(mu, pbw_mul(L, u, v))
    rhs = pbw_mul(L, u, DP.partial(mu, v))
    for w in range(1, max(u.degree(), 0) + 1):
        for alphas in product(range(n), repeat=w):
            d = [0] * n
            for x in alphas:
                d[x] += 1
            du = DP.apply_multi(tuple(d), u)
            if not du:
                continue
            cv = DP.apply_series(NC.vector(alphas)[mu - 1], v)
            rhs = rhs + Fraction(1, factorial(w)) * pbw_mul(L, du, cv)
    ok = lhs == rhs
    rec = {"mu": mu, "u": str(u), "v": str(v)}
    return Report("twisted-leibniz", ok, rec, [] if ok else [{**rec, "lhs": str(lhs), "rhs": str(rhs)}])


def coproduct_phi_check(L: LieAlgebra, phi: SeriesMatrix, mu: int, nu: int, f: PbwElement,
                        g: PbwElement) -> Report:
    """phi^mu_nu(d)(f g) = sum_{N>=1} (1/N!) sum_i sum_k d^{i without i_k} phi^{i_k}_nu(d)(f) [..[d^mu,X_i1],..,X_iN](g)."""
    DP = deformed_partials(L, phi)
    NC = nested_commutators(L, phi)
    n = L.n
    lhs = DP.apply_series(phi[mu - 1, nu - 1], pbw_mul(L, f, g))
    rhs = PbwElement.zero(L)
    phif = [DP.apply_series(phi[r, nu - 1], f) for r in range(n)]
    for N in range(1, max(f.degree(), 0) + 2):
        for idx in product(range(n), repeat=N):
            cg = None
            for k in range(N):
                others = [0] * n
                for j, x in enumerate(idx):
                    if j != k:
                        others[x] += 1
                left = DP.apply_multi(tuple(others), phif[idx[k]])
                if not left:
                    continue
                if cg is None:
                    cg = DP.apply_series(NC.vector(idx)[mu - 1], g)
                rhs = rhs + Fraction(1, factorial(N)) * pbw_mul(L, left, cg)
    ok = lhs == rhs
    rec = {"mu": mu, "nu": nu, "f": str(f), "g": str(g)}
    return Report("coproduct-phi", ok, rec, [] if ok else [{**rec, "lhs": str(lhs), "rhs": str(rhs)}])


def commuting_partials_check(L: LieAlgebra, phi: SeriesMatrix, u: PbwElement) -> Report:
    DP = deformed_partials(L, phi)
    failures = []
    for mu in range(1, L.n + 1):
        for nu in range(mu + 1, L.n + 1):
            a = DP.partial(mu, DP.partial(nu, u))
            b = DP.partial(nu, DP.partial(mu, u))
            if a != b:
                failures.append({"mu": mu, "nu": nu, "u": str(u)})
    return Report("commuting-partials", not failures, {"u": str(u)}, failures)


def commutator_operator_check(L: LieAlgebra, phi: SeriesMatrix, mu: int, alphas: Sequence[int],
                              u: PbwElement) -> Report:
    """The nested commutator taken as operators on U(g) equals its phi-series evaluated at d-hat."""
    DP = deformed_partials(L, phi)
    NC = nested_commutators(L, phi)
    op = lambda x: DP.partial(mu, x)
    for al in alphas:
        op = operator_commutator_with_x(op, L, al)
    lhs = op(u)
    rhs = DP.apply_series(NC.series(mu, alphas), u)
    ok = lhs == rhs
    rec = {"mu": mu, "alphas": tuple(alphas), "u": str(u)}
    return Report("commutator-operator", ok, rec, [] if ok else [{**rec, "lhs": str(lhs), "rhs": str(rhs)}])


# random inputs ------------------------------------------------------------

def random_pbw(rng: random.Random, L: LieAlgebra, max_degree: int, terms: int = 3) -> PbwElement:
    monos = list(monomials_up_to(L.n, max_degree))
    top = [m for m in monos if sum(m) == max_degree]
    out = {rng.choice(top): rng.choice([1, 2, -1, Fraction(1, 2)])}
    for _ in range(terms - 1):
        out[rng.choice(monos)] = rng.randint(-3, 3)
    return PbwElement(L, out)


def random_vector(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> List[int]:
    while True:
        a = [rng.randint(lo, hi) for _ in range(n)]
        if any(a):
            return a
