"""Star products on S(g) by the coproduct formula and by truncated
exponentials, plus the M_tau operators and the chi correction.

Coproduct formula: with Delta_0(d^l) = d^l (x) 1 + 1 (x) d^l,

    f * g = sum_i (x^i / i!) m( prod_l ((Delta - Delta_0)(d^l))^{i_l} (f (x) g) ),

where a term c d^L (x) d^R acts as c (d^L f)(d^R g). Every factor has left and
right degree >= 1, so only |i| <= min(deg f, deg g) contributes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .algebra import LieAlgebra
from .feynman import coproduct_adjoint, coproduct_trees, kq_names
from .hausdorff import dynkin_D
from .pbw import star_pbw
from .polynomial import Polynomial, monomials_of_degree, monomials_up_to, multinomial_factorial, unit
from .report import Report
from .series import SeriesMatrix, TruncatedSeries, bernoulli, c_matrix, matrix_powers, phi_symmetric
from .weyl import WeylOperator, apply, apply_generator

MAX_STAR_DEGREE = 6


class StarError(ValueError):
    pass


@dataclass
class StarReport:
    """Route results for one star computation and their pairwise verdicts."""

    name: str
    inputs: Dict[str, str]
    results: Dict[str, Polynomial] = field(default_factory=dict)
    verdicts: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def text(self) -> str:
        rows = [(k, v) for k, v in self.inputs.items()]
        rows += [(k, str(v)) for k, v in self.results.items()]
        rows += [(k, "equal" if v else "DIFFERENT") for k, v in self.verdicts.items()]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)} : {v}" for k, v in rows)

    def to_report(self) -> Report:
        failures = []
        if not self.passed:
            failures.append({"inputs": self.inputs,
                             "results": {k: str(v) for k, v in self.results.items()},
                             "verdicts": dict(self.verdicts)})
        return Report(self.name, self.passed, {**self.inputs, **self.verdicts}, failures)


# coproduct route -------------------------------------------------------------

def _difference_table(L: LieAlgebra, P: int, route: str, phi: SeriesMatrix | None) -> List[Polynomial]:
    """(Delta - Delta_0)(d^l) as polynomials in k, q, l = 1..n, cut at total degree P."""
    n = L.n
    out = []
    for l in range(1, n + 1):
        if route == "trees":
            cp = coproduct_trees(L, l, P)
        elif route == "adjoint":
            if phi is None:
                phi = phi_symmetric(L, max(P - 1, 1))
            cp = coproduct_adjoint(L, phi, l, P)
        else:
            raise StarError(f"unknown coproduct route {route!r}")
        p = cp.to_kq()
        out.append(p.part(lambda m: sum(m) != 1))
    return out


def star_coproduct(L: LieAlgebra, phi: SeriesMatrix | None, f: Polynomial, g: Polynomial,
                   route: str = "trees") -> Polynomial:
    """f * g from the coproduct table. ``phi`` is used only by the adjoint route."""
    n = L.n
    if f.n != n or g.n != n:
        raise StarError("polynomials must live in the algebra's dimension")
    if not f or not g:
        return Polynomial.zero(n, f.names)
    df, dg = f.degree(), g.degree()
    P = df + dg
    if P > MAX_STAR_DEGREE:
        raise StarError(f"deg f + deg g = {P} exceeds {MAX_STAR_DEGREE}")
    if route == "adjoint" and phi is not None and phi.cutoff < P - 1:
        raise StarError(f"phi cutoff {phi.cutoff} too small for total degree {P}")
    out = f * g
    top = min(df, dg)
    if top == 0 or L.is_abelian:
        return out
    diffs = _difference_table(L, P, route, phi)
    fd: Dict[Tuple[int, ...], Polynomial] = {}
    gd: Dict[Tuple[int, ...], Polynomial] = {}
    names = kq_names(n)
    one = Polynomial.constant(2 * n, 1, names)
    for size in range(1, top + 1):
        for i in monomials_of_degree(n, size):
            prod = one
            for l, e in enumerate(i):
                for _ in range(e):
                    prod = prod.mul_truncated(diffs[l], P)
            if not prod:
                continue
            acc = Polynomial.zero(n, f.names)
            for m, c in prod.terms.items():
                Lm, Rm = m[:n], m[n:]
                if sum(Lm) > df or sum(Rm) > dg:
                    continue
                if Lm not in fd:
                    fd[Lm] = f.diff_multi(Lm)
                if Rm not in gd:
                    gd[Rm] = g.diff_multi(Rm)
                if fd[Lm] and gd[Rm]:
                    acc = acc + c * (fd[Lm] * gd[Rm])
            if acc:
                xi = Polynomial.monomial(i, Fraction(1, multinomial_factorial(i)), f.names)
                out = out + xi * acc
    return out


def star_routes(L: LieAlgebra, f: Polynomial, g: Polynomial, routes: Sequence[str] = ("pbw", "coproduct")) -> StarReport:
    P = f.degree() + g.degree()
    phi = phi_symmetric(L, max(P - 1, 1))
    rep = StarReport("star", {"algebra": L.name, "f": str(f), "g": str(g)})
    for r in routes:
        if r == "pbw":
            rep.results["pbw"] = star_pbw(L, phi, f, g)
        elif r == "coproduct":
            rep.results["coproduct"] = star_coproduct(L, phi, f, g)
        elif r == "adjoint":
            rep.results["adjoint"] = star_coproduct(L, phi, f, g, route="adjoint")
        else:
            raise StarError(f"unknown route {r!r}")
    names = list(rep.results)
    for a, b in zip(names, names[1:]):
        rep.verdicts[f"{a}={b}"] = rep.results[a] == rep.results[b]
    return rep


# exponential route ------------------------------------------------------------

def _linear(n: int, v: Sequence) -> Polynomial:
    return Polynomial(n, {unit(n, a): Fraction(c) for a, c in enumerate(v)})


def _exp_pieces(n: int, v: Sequence, P: int) -> List[Polynomial]:
    """(v.x)^m / m! for m = 0..P."""
    lin = _linear(n, v)
    out = [Polynomial.constant(n, 1)]
    for m in range(1, P + 1):
        out.append(Fraction(1, m) * (out[-1] * lin))
    return out


def star_exponential(L: LieAlgebra, k: Sequence, q: Sequence, P: int,
                     route: str = "trees") -> StarReport:
    """exp(k.x) * exp(q.x) = exp(D(k, q).x), compared order by order in a scaling t of (k, q).

    Order m: sum_{i+j=m} (k.x)^i/i! * (q.x)^j/j! against [t^m] exp(sum_N t^N D_N(k, q).x).
    """
    n = L.n
    if not 0 <= P <= 5:
        raise StarError("P must be in 0..5")
    k = [Fraction(c) for c in k]
    q = [Fraction(c) for c in q]
    if len(k) != n or len(q) != n:
        raise StarError("k and q need one entry per generator")
    phi = phi_symmetric(L, max(P - 1, 1))
    ek, eq = _exp_pieces(n, k, P), _exp_pieces(n, q, P)
    # Z_N = D_N(k, q).x
    Z = [Polynomial.zero(n)]
    for N in range(1, P + 1):
        D = dynkin_D(L, N)
        Z.append(_linear(n, [D[mu].evaluate(k + q) for mu in range(1, n + 1)]))
    # powers of Z(t) by t-degree: Zp[j][m] = [t^m] Z(t)^j
    Zp = [[Polynomial.constant(n, 1)] + [Polynomial.zero(n)] * P]
    for j in range(1, P + 1):
        prev = Zp[-1]
        cur = [Polynomial.zero(n) for _ in range(P + 1)]
        for m in range(P + 1):
            for N in range(1, m + 1):
                if prev[m - N] and Z[N]:
                    cur[m] = cur[m] + prev[m - N] * Z[N]
        Zp.append(cur)
    inputs = {"algebra": L.name, "k": ",".join(map(str, k)), "q": ",".join(map(str, q)), "P": str(P)}
    rep = StarReport("star-exponential", inputs)
    for m in range(P + 1):
        lhs = Polynomial.zero(n)
        for i in range(m + 1):
            lhs = lhs + star_coproduct(L, phi, ek[i], eq[m - i], route=route)
        rhs = Polynomial.zero(n)
        for j in range(m + 1):
            if Zp[j][m]:
                rhs = rhs + Fraction(1, factorial(j)) * Zp[j][m]
        rep.results[f"star[t^{m}]"] = lhs
        rep.results[f"exp[t^{m}]"] = rhs
        rep.verdicts[f"order {m}"] = lhs == rhs
    return rep


def exponential_grid(L: LieAlgebra, P: int = 4, values=None) -> Report:
    """star_exponential over a 3x3 grid of rational (k, q)."""
    n = L.n
    ks = values or [
        [Fraction(1)] + [Fraction(0)] * (n - 1),
        [Fraction(1, 2), Fraction(-1)] + [Fraction(1, 3)] * (n - 2),
        [Fraction(2, 3) if a % 2 else Fraction(-1, 2) for a in range(n)],
    ]
    qs = [
        [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2),
        [Fraction(-1, 3)] * (n - 1) + [Fraction(1)],
        [Fraction(1, 2) * (a + 1) for a in range(n)],
    ]
    reports = [star_exponential(L, k, q, P).to_report() for k in ks for q in qs]
    return Report.combine("star-exponential-grid", reports, algebra=L.name, P=P)


# associativity ---------------------------------------------------------------

def star_associativity_check(L: LieAlgebra, phi: SeriesMatrix | None, f: Polynomial, g: Polynomial,
                             h: Polynomial) -> Report:
    """(f*g)*h = f*(g*h) on the PBW route and on the coproduct route."""
    P = f.degree() + g.degree() + h.degree()
    if phi is None or phi.cutoff < P - 1:
        phi = phi_symmetric(L, max(P - 1, 1))
    failures = []
    verdicts = {}
    for route in ("pbw", "coproduct"):
        if route == "pbw":
            star = lambda a, b: star_pbw(L, phi, a, b)
        else:
            star = lambda a, b: star_coproduct(L, phi, a, b)
        left, right = star(star(f, g), h), star(f, star(g, h))
        verdicts[route] = left == right
        if left != right:
            failures.append({"route": route, "(f*g)*h": str(left), "f*(g*h)": str(right)})
    return Report("star-associativity", not failures,
                  {"algebra": L.name, "f": str(f), "g": str(g), "h": str(h), **verdicts}, failures)


def main_theorem_star_check(L: LieAlgebra, total: int = 4) -> Report:
    """star_coproduct = star_pbw on all monomial pairs with deg f + deg g <= total."""
    n = L.n
    phi = phi_symmetric(L, max(total - 1, 1))
    failures = []
    pairs = 0
    monos = [m for m in monomials_up_to(n, total) if sum(m) >= 1]
    for a in monos:
        for b in monos:
            if sum(a) + sum(b) > total:
                continue
            f, g = Polynomial.monomial(a), Polynomial.monomial(b)
            pairs += 1
            x, y = star_pbw(L, phi, f, g), star_coproduct(L, phi, f, g)
            if x != y:
                failures.append({"f": str(f), "g": str(g), "pbw": str(x), "coproduct": str(y)})
    return Report("star-main-theorem", not failures, {"algebra": L.name, "pairs": pairs}, failures)


# M operators and chi ---------------------------------------------------------

def m_operator(L: LieAlgebra, tau: int) -> WeylOperator:
    """M_tau = C^lambda_{tau mu} x_lambda d^mu."""
    n = L.n
    terms = {}
    for lam in range(n):
        for mu in range(n):
            c = L.c(tau, mu + 1, lam + 1)
            if c:
                terms[(unit(n, lam), unit(n, mu))] = c
    return WeylOperator(n, terms)


def chi_series(L: LieAlgebra, tau: int, mu: int, nu: int, D: int) -> TruncatedSeries:
    """chi^tau_{mu nu} = sum_{N>=1} (-1)^N B_N/N! [C^tau_{mu a} (C^{N-1})^a_nu - d_a((C^{N-1})^tau_nu) C^a_mu].

    Valid through d-degree D - 1.
    """
    n = L.n
    W = D - 1
    pw = matrix_powers(c_matrix(L, D), D)
    Cm = c_matrix(L, W)
    acc = TruncatedSeries.zero(n, W)
    for N in range(1, D + 1):
        w = (-1) ** N * bernoulli(N) / factorial(N)
        if not w:
            continue
        M = pw[N - 1]
        term = TruncatedSeries.zero(n, W)
        for a in range(n):
            c = L.c(mu, a + 1, tau)
            if c:
                term = term + c * M[a, nu - 1].truncate(W)
            d = M[tau - 1, nu - 1].diff(a)
            if d and Cm[a, mu - 1]:
                term = term - d * Cm[a, mu - 1]
        acc = acc + w * term
    return acc


def chi_check(L: LieAlgebra, mu: int, nu: int, D: int, max_degree: int = 2) -> Report:
    """M_mu(x_nu * f) - x_nu * M_mu f = M_mu(x_nu) f + M_tau chi^tau_{mu nu}(d) f on monomials f."""
    n = L.n
    if D < 2:
        raise StarError("chi_check needs D >= 2")
    if max_degree > D - 1:
        raise StarError(f"test degree {max_degree} exceeds window {D - 1}")
    phi = phi_symmetric(L, D)
    M = [m_operator(L, t) for t in range(1, n + 1)]
    chis = [chi_series(L, t, mu, nu, D) for t in range(1, n + 1)]
    xnu = Polynomial.variable(n, nu - 1)
    mx = apply(M[mu - 1], xnu)
    failures = []
    count = 0
    for f in (Polynomial.monomial(m) for m in monomials_up_to(n, max_degree)):
        count += 1
        lhs = apply(M[mu - 1], apply_generator(phi, nu, f)) - apply_generator(phi, nu, apply(M[mu - 1], f))
        rhs = mx * f
        for t in range(n):
            if chis[t]:
                rhs = rhs + apply(M[t], apply(WeylOperator.from_series(chis[t]), f))
        if lhs != rhs:
            failures.append({"f": str(f), "lhs": str(lhs), "rhs": str(rhs)})
    return Report("chi", not failures, {"algebra": L.name, "mu": mu, "nu": nu, "D": D, "monomials": count},
                  failures)


def chi_all(L: LieAlgebra, D: int = 5, max_degree: int = 2) -> Report:
    reports = [chi_check(L, mu, nu, D, max_degree) for mu in range(1, L.n + 1) for nu in range(1, L.n + 1)]
    return Report.combine("chi-all", reports, algebra=L.name, D=D)
