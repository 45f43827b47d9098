"""Feynman-rule evaluation of ordered trees and the deformed coproduct of d^mu,
assembled once from trees and once from nested commutators.

Coproduct elements are stored as polynomials in 2n commuting variables
k1..kn (left tensor factor) and q1..qn (right tensor factor).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .algebra import LieAlgebra
from .polynomial import Monomial, Polynomial, format_monomial, grlex_key, monomials_of_degree, unit
from .report import Report
from .series import SeriesMatrix, TruncatedSeries, bernoulli, d_names, phi_coefficient
from .trees import (OrderedTree, PlanarTree, contributing_filter, enumerate_ordered,
                    enumerate_trees)


class FeynmanError(ValueError):
    pass


def kq_names(n: int) -> Tuple[str, ...]:
    return tuple(f"k{i + 1}" for i in range(n)) + tuple(f"q{i + 1}" for i in range(n))


def kq_vectors(n: int):
    names = kq_names(n)
    k = [Polynomial.variable(2 * n, i, names) for i in range(n)]
    q = [Polynomial.variable(2 * n, n + i, names) for i in range(n)]
    return k, q


class BigradedCoproduct:
    """sum c * d^L (x) d^R for one upper index mu, cut at |L| + |R| <= P."""

    __slots__ = ("mu", "n", "cutoff", "terms")

    def __init__(self, mu: int, n: int, terms: Mapping, cutoff: int | None = None):
        self.mu, self.n, self.cutoff = mu, n, cutoff
        clean = {}
        for (Lm, Rm), c in terms.items():
            Lm, Rm = tuple(Lm), tuple(Rm)
            if cutoff is not None and sum(Lm) + sum(Rm) > cutoff:
                continue
            if c:
                clean[(Lm, Rm)] = clean.get((Lm, Rm), 0) + Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def from_kq(cls, mu: int, p: Polynomial, cutoff: int | None = None) -> "BigradedCoproduct":
        n = p.n // 2
        return cls(mu, n, {(m[:n], m[n:]): c for m, c in p.terms.items()}, cutoff)

    def to_kq(self) -> Polynomial:
        return Polynomial(2 * self.n, {L + R: c for (L, R), c in self.terms.items()},
                          kq_names(self.n))

    def piece(self, w: int, b: int) -> "BigradedCoproduct":
        return BigradedCoproduct(self.mu, self.n, {k: v for k, v in self.terms.items()
                                                   if sum(k[0]) == w and sum(k[1]) == b}, self.cutoff)

    def degree_part(self, P: int) -> "BigradedCoproduct":
        return BigradedCoproduct(self.mu, self.n, {k: v for k, v in self.terms.items()
                                                   if sum(k[0]) + sum(k[1]) == P}, self.cutoff)

    def truncate(self, P: int) -> "BigradedCoproduct":
        return BigradedCoproduct(self.mu, self.n, self.terms, P)

    def flip(self) -> "BigradedCoproduct":
        return BigradedCoproduct(self.mu, self.n, {(R, L): c for (L, R), c in self.terms.items()},
                                 self.cutoff)

    def bidegrees(self) -> List[Tuple[int, int]]:
        return sorted({(sum(L), sum(R)) for L, R in self.terms})

    def __add__(self, other: "BigradedCoproduct") -> "BigradedCoproduct":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        cut = min((c for c in (self.cutoff, other.cutoff) if c is not None), default=None)
        return BigradedCoproduct(self.mu, self.n, out, cut)

    def scale(self, c) -> "BigradedCoproduct":
        return BigradedCoproduct(self.mu, self.n, {k: c * v for k, v in self.terms.items()}, self.cutoff)

    def __eq__(self, other):
        if not isinstance(other, BigradedCoproduct):
            return NotImplemented
        return self.mu == other.mu and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.mu, self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def ordered_terms(self):
        def key(item):
            L, R = item[0]
            return (sum(L) + sum(R), -sum(R), grlex_key(L), grlex_key(R))
        return sorted(self.terms.items(), key=key)

    def lines(self) -> List[str]:
        names = d_names(self.n)
        out = []
        for (L, R), c in self.ordered_terms():
            left = format_monomial(L, names) or "1"
            right = format_monomial(R, names) or "1"
            out.append(f"{c} * {left} ⊗ {right}")
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = d_names(self.n)
        parts = []
        for idx, ((L, R), c) in enumerate(self.ordered_terms()):
            body = f"{format_monomial(L, names) or '1'}⊗{format_monomial(R, names) or '1'}"
            mag = abs(c)
            text = body if mag == 1 else f"{mag}*{body}"
            if idx == 0:
                parts.append(f"-{text}" if c < 0 else text)
            else:
                parts.append(f" {'-' if c < 0 else '+'} {text}")
        return "".join(parts)

    def __repr__(self):
        return f"BigradedCoproduct(mu={self.mu}: {self})"


# Feynman rules -------------------------------------------------------------

def _node_weight(s: int) -> Fraction:
    return phi_coefficient(s)


def evaluate_vector(L: LieAlgebra, tree: PlanarTree, labels: Sequence[int], white_vec, black_vec):
    """Value of the tree with its root line left open, as a vector over the upper index.

    ``white_vec(label)`` gives the vector for a white node's own index and
    ``black_vec`` the vector attached to black leaves. A white node with
    children v1..vs contributes (-1)^s B_s/s! [[[a, v1], v2], ..., vs].
    """
    it = iter(labels)

    def walk(t: PlanarTree):
        if not t.white:
            return list(black_vec)
        u = list(white_vec(next(it)))
        s = len(t.children)
        for c in t.children:
            u = L.bracket(u, walk(c))
        if s:
            wgt = _node_weight(s)
            u = [wgt * x if x else x for x in u]
        return u

    return walk(tree)


class TensorSeries:
    """Components ev(t)^mu_{alpha_1..alpha_w} (1-based indices) as series in d."""

    def __init__(self, n: int, w: int, cutoff: int, components: Mapping):
        self.n, self.w, self.cutoff = n, w, cutoff
        self.components: Dict[Tuple[int, Tuple[int, ...]], TruncatedSeries] = {
            k: v for k, v in components.items() if v}

    def component(self, mu: int, alphas: Sequence[int]) -> TruncatedSeries:
        return self.components.get((mu, tuple(alphas)), TruncatedSeries.zero(self.n, self.cutoff))

    def __eq__(self, other):
        return (isinstance(other, TensorSeries) and self.n == other.n and self.w == other.w
                and self.components == other.components)

    def __str__(self):
        if not self.components:
            return "0"
        lines = []
        for (mu, al), s in sorted(self.components.items()):
            lines.append(f"[{mu};{','.join(map(str, al))}] {s}")
        return "\n".join(lines)


def ev(L: LieAlgebra, t: OrderedTree) -> TensorSeries:
    """Feynman-rule value of an ordered tree (numeration label j carries alpha_j)."""
    n, w, b = L.n, t.w, t.b
    dvec = [Polynomial.variable(n, i, d_names(n)) for i in range(n)]
    zero = Polynomial.zero(n)
    comps = {}
    for alphas in product(range(n), repeat=w):
        def white_vec(label, alphas=alphas):
            a = alphas[label - 1]
            return [Polynomial.constant(n, 1) if i == a else zero for i in range(n)]

        vec = evaluate_vector(L, t.tree, t.labels, white_vec, dvec)
        for mu in range(n):
            if vec[mu]:
                comps[(mu + 1, tuple(a + 1 for a in alphas))] = TruncatedSeries(n, b, vec[mu].terms)
    return TensorSeries(n, w, b, comps)


@lru_cache(maxsize=4096)
def _fev_vector(L: LieAlgebra, tree: PlanarTree) -> Tuple[Polynomial, ...]:
    """Full evaluation of one numeration, summed over all numerations (planar tree)."""
    n = L.n
    k, q = kq_vectors(n)
    w = tree.w
    labels = tuple(range(1, w + 1))
    vec = evaluate_vector(L, tree, labels, lambda _: k, q)
    wgt = Fraction(tree.numeration_count(), factorial(w))
    return tuple(wgt * x if x else Polynomial.zero(2 * n, kq_names(n)) for x in vec)


def fev(L: LieAlgebra, t, mu: int) -> BigradedCoproduct:
    """(1/w!) d^{alpha_1}...d^{alpha_w} (x) ev(t)^mu_{alpha}; planar trees sum their numerations.

    Every white index is contracted with the same commuting left variables,
    so one numeration already determines the value.
    """
    if isinstance(t, OrderedTree):
        tree = t.tree
        scale = Fraction(1, tree.numeration_count())
    else:
        tree, scale = t, Fraction(1)
    p = _fev_vector(L, tree)[mu - 1]
    return BigradedCoproduct.from_kq(mu, scale * p if scale != 1 else p)


def fev_by_definition(L: LieAlgebra, t: OrderedTree, mu: int) -> BigradedCoproduct:
    """fev straight from the alpha-sum of ev components (slow oracle)."""
    n = L.n
    T = ev(L, t)
    out: Dict = {}
    wf = factorial(t.w)
    for (m, alphas), s in T.components.items():
        if m != mu:
            continue
        left = [0] * n
        for a in alphas:
            left[a - 1] += 1
        left = tuple(left)
        for R, c in s.terms.items():
            out[(left, R)] = out.get((left, R), 0) + c / wf
    return BigradedCoproduct(mu, n, out)


# nested commutators --------------------------------------------------------

class NestedCommutators:
    """[...[d^mu, X_a1], ..., X_ak] as series vectors over mu, memoized by prefix."""

    def __init__(self, L: LieAlgebra, phi: SeriesMatrix):
        self.L, self.phi = L, phi
        self.memo: Dict[Tuple[int, ...], Tuple[TruncatedSeries, ...]] = {}

    def vector(self, alphas: Tuple[int, ...]) -> Tuple[TruncatedSeries, ...]:
        """0-based alphas; entry mu of the result is the series for upper index mu."""
        hit = self.memo.get(alphas)
        if hit is not None:
            return hit
        n, phi = self.L.n, self.phi
        k = len(alphas)
        if k == 0:
            raise FeynmanError("need at least one alpha")
        if phi.cutoff < k - 1:
            raise FeynmanError(f"cutoff {phi.cutoff} too small for {k} nested commutators")
        if k == 1:
            out = tuple(phi[mu, alphas[0]] for mu in range(n))
        else:
            prev = self.vector(alphas[:-1])
            W = phi.cutoff - k + 1
            last = alphas[-1]
            col = [phi[r, last].truncate(W) for r in range(n)]
            res = []
            for mu in range(n):
                acc = TruncatedSeries.zero(n, W)
                for r in range(n):
                    if col[r] and prev[mu]:
                        acc = acc + prev[mu].diff(r) * col[r]
                res.append(acc)
            out = tuple(res)
        self.memo[alphas] = out
        return out

    def series(self, mu: int, alphas: Sequence[int]) -> TruncatedSeries:
        """1-based mu and alphas."""
        return self.vector(tuple(a - 1 for a in alphas))[mu - 1]


@lru_cache(maxsize=64)
def nested_commutators(L: LieAlgebra, phi: SeriesMatrix) -> NestedCommutators:
    return NestedCommutators(L, phi)


def nested_commutator(L: LieAlgebra, phi: SeriesMatrix, mu: int, alphas: Sequence[int]) -> TruncatedSeries:
    """(...((phi^mu_{a1,r1} phi^{r1}_{a2})_{,r2} phi^{r2}_{a3})...)_{,r_{k-1}} phi^{r_{k-1}}_{ak}.

    Valid to degree D - k + 1.
    """
    return nested_commutators(L, phi).series(mu, alphas)


def expansion1_terms(k: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """Terms where each derivative hits a single phi factor.

    Derivative rho_s may act on factor p with 1 <= p <= s (factor p is
    phi^{rho_{p-1}}_{alpha_p}). A term lists, per factor, the derivative
    indices it receives; there are (k-1)! terms.
    """
    out = []
    for choice in product(*[range(1, s + 1) for s in range(1, k)]):
        per = [[] for _ in range(k)]
        for s, p in enumerate(choice, start=1):
            per[p - 1].append(s)
        out.append(tuple(tuple(x) for x in per))
    return out


def nested_commutator_expansion1(L: LieAlgebra, phi: SeriesMatrix, mu: int,
                                 alphas: Sequence[int]) -> TruncatedSeries:
    """Same value as ``nested_commutator`` summed term by term from expansion 1."""
    n = L.n
    k = len(alphas)
    W = phi.cutoff - k + 1
    total = TruncatedSeries.zero(n, W)

    def deriv(s: TruncatedSeries, rs: Sequence[int]) -> TruncatedSeries:
        for r in rs:
            s = s.diff(r)
        return s.truncate(W)

    for term in expansion1_terms(k):
        for rhos in product(range(n), repeat=k - 1):
            rho = (mu - 1,) + rhos
            acc = TruncatedSeries.constant(n, W, 1)
            for p in range(k):
                f = deriv(phi[rho[p], alphas[p] - 1], [rhos[s - 1] for s in term[p]])
                acc = acc * f
                if not acc:
                    break
            total = total + acc
    return total


# coproducts ----------------------------------------------------------------

def coproduct_trees(L: LieAlgebra, mu: int, P: int) -> BigradedCoproduct:
    """Sum of fev over contributing planar trees with w + b <= P."""
    if P < 1:
        raise FeynmanError("degree must be >= 1")
    out: Dict = {}
    n = L.n
    for total in range(1, P + 1):
        for w in range(total + 1):
            for t in enumerate_trees(w, total - w):
                if not contributing_filter(t):
                    continue
                p = _fev_vector(L, t)[mu - 1]
                for m, c in p.terms.items():
                    key = (m[:n], m[n:])
                    out[key] = out.get(key, 0) + c
    return BigradedCoproduct(mu, n, out, P)


def coproduct_adjoint(L: LieAlgebra, phi: SeriesMatrix, mu: int, P: int) -> BigradedCoproduct:
    """exp(d^a (x) ad(-X_a))(1 (x) d^mu) = 1 (x) d^mu + sum_w (1/w!) d^{a1..aw} (x) [..[d^mu, X_a1],..,X_aw].

    With Phi^r = k^a phi^r_a(q), the contracted commutators obey N_1 = Phi^mu and
    N_{j+1} = dN_j/dq_r Phi^r. Needs phi known to degree P - 1.
    """
    n = L.n
    if phi.cutoff < P - 1:
        raise FeynmanError(f"phi cutoff {phi.cutoff} too small for degree {P}")
    k, q = kq_vectors(n)
    names = kq_names(n)

    def lift(s: TruncatedSeries) -> Polynomial:
        return Polynomial(2 * n, {(0,) * n + m: c for m, c in s.terms.items()}, names)

    Phi = []
    for r in range(n):
        acc = Polynomial.zero(2 * n, names)
        for a in range(n):
            acc = acc + k[a].mul_truncated(lift(phi[r, a]), P)
        Phi.append(acc)
    total = q[mu - 1]
    N = Phi[mu - 1]
    for w in range(1, P + 1):
        total = total + Fraction(1, factorial(w)) * N
        nxt = Polynomial.zero(2 * n, names)
        for r in range(n):
            dN = N.diff(n + r)
            if dN:
                nxt = nxt + dN.mul_truncated(Phi[r], P)
        N = nxt
        if not N:
            break
    return BigradedCoproduct.from_kq(mu, total.truncate(P), P)


def coproduct_table(L: LieAlgebra, P: int, route: str = "trees", phi: SeriesMatrix | None = None):
    from .series import phi_symmetric
    if route == "trees":
        return [coproduct_trees(L, mu, P) for mu in range(1, L.n + 1)]
    phi = phi or phi_symmetric(L, max(P - 1, 0))
    return [coproduct_adjoint(L, phi, mu, P) for mu in range(1, L.n + 1)]


# explicit low-order display -------------------------------------------------

def explicit_display(L: LieAlgebra, mu: int) -> BigradedCoproduct:
    """The closed third-order formula

    1(x)d^mu + d^mu(x)1 + 1/2 C^mu_ab d^a(x)d^b
    + 1/12 C^s_ab C^mu_sg (d^a (x) d^b d^g + d^b d^g (x) d^a)
    - 1/24 C^s_ab C^t_sg C^mu_td d^a d^g (x) d^b d^d
    with everything summed over concrete structure constants.
    """
    n = L.n
    out: Dict = {}
    T = L.tensor

    def add(Lm, Rm, c):
        out[(Lm, Rm)] = out.get((Lm, Rm), 0) + c

    z = (0,) * n
    m0 = mu - 1
    add(z, unit(n, m0), 1)
    add(unit(n, m0), z, 1)
    for a in range(n):
        for b in range(n):
            c = T[a][b][m0]
            if c:
                add(unit(n, a), unit(n, b), Fraction(c, 2))
    for a, b, s, c1 in L.nonzero:
        for g in range(n):
            c2 = T[s][g][m0]
            if not c2:
                continue
            bg = tuple(x + y for x, y in zip(unit(n, b), unit(n, g)))
            add(unit(n, a), bg, Fraction(1, 12) * c1 * c2)
            add(bg, unit(n, a), Fraction(1, 12) * c1 * c2)
    for a, b, s, c1 in L.nonzero:
        for g in range(n):
            for t in range(n):
                c2 = T[s][g][t]
                if not c2:
                    continue
                for d in range(n):
                    c3 = T[t][d][m0]
                    if not c3:
                        continue
                    ag = tuple(x + y for x, y in zip(unit(n, a), unit(n, g)))
                    bd = tuple(x + y for x, y in zip(unit(n, b), unit(n, d)))
                    add(ag, bd, Fraction(-1, 24) * c1 * c2 * c3)
    return BigradedCoproduct(mu, n, out, 4)


def explicit_display_check(L: LieAlgebra, phi: SeriesMatrix | None = None, P: int = 4) -> Report:
    """Both coproduct routes against the closed third-order display, at each mu."""
    from .series import phi_symmetric
    phi = phi or phi_symmetric(L, P)
    failures = []
    for mu in range(1, L.n + 1):
        ref = explicit_display(L, mu).truncate(P)
        for name, got in (("trees", coproduct_trees(L, mu, P)),
                          ("adjoint", coproduct_adjoint(L, phi, mu, P))):
            if got != ref:
                failures.append({"mu": mu, "route": name, "got": str(got), "expected": str(ref)})
    return Report("explicit-coproduct", not failures, {"algebra": L.name, "degree": P}, failures)


# theorems about trees ------------------------------------------------------

def s1p_tree(p: int) -> PlanarTree:
    from .trees import BLACK
    return PlanarTree(True, (BLACK,) * p)


def s1p_sides(L: LieAlgebra, p: int, mu: int):
    lhs = fev(L, s1p_tree(p), mu).flip()
    rhs = BigradedCoproduct(mu, L.n, {})
    for t in enumerate_trees(p, 1):
        rhs = rhs + fev(L, t, mu)
    return lhs, rhs


def s1p_symmetry_check(L: LieAlgebra, p: int) -> Report:
    """tau(fev(s_{1,p})) = (-1)^p * sum over T^ord_{p,1} of fev.

    The printed statement carries (-1)^(p+1); ``literal-sign-holds`` records
    whether that reading also happens to hold (it does only when both sides vanish).
    """
    if not 1 <= p <= 5:
        raise FeynmanError("p must be in 1..5")
    failures = []
    literal = True
    for mu in range(1, L.n + 1):
        lhs, rhs = s1p_sides(L, p, mu)
        if lhs != rhs.scale((-1) ** p):
            failures.append({"mu": mu, "lhs": str(lhs), "rhs": str(rhs)})
        if lhs != rhs.scale((-1) ** (p + 1)):
            literal = False
    return Report("s1p-symmetry", not failures,
                  {"algebra": L.name, "p": p, "sign": "(-1)^p", "literal-sign-holds": literal},
                  failures)


def vacuum_symmetrization_check(L: LieAlgebra, w: int, phi: SeriesMatrix | None = None) -> Report:
    """sum over permutations of [..[d^mu, X_a_s1], .., X_a_sw](1) = 0 for w >= 2."""
    from .series import phi_symmetric
    if not 2 <= w <= 4:
        raise FeynmanError("w must be in 2..4")
    phi = phi or phi_symmetric(L, w - 1)
    NC = nested_commutators(L, phi)
    n = L.n
    failures = []
    seen = set()
    for alphas in product(range(n), repeat=w):
        key = tuple(sorted(alphas))
        if key in seen:
            continue
        seen.add(key)
        totals = [Fraction(0)] * n
        for perm in permutations(alphas):
            vec = NC.vector(perm)
            for mu in range(n):
                totals[mu] += vec[mu].constant_term()
        for mu in range(n):
            if totals[mu]:
                failures.append({"mu": mu + 1, "alphas": tuple(a + 1 for a in key), "value": totals[mu]})
    return Report("vacuum-symmetrization", not failures, {"algebra": L.name, "w": w}, failures)


def selection_rule_check(L: LieAlgebra, max_w: int = 4, max_b: int = 2) -> Report:
    """fev vanishes on every excluded tree (hence on their sum) for w <= max_w, b <= max_b."""
    failures = []
    checked = 0
    for w in range(1, max_w + 1):
        for b in range(0, max_b + 1):
            if w + b > 9:
                continue
            excluded = [t for t in enumerate_trees(w, b) if not contributing_filter(t)]
            for mu in range(1, L.n + 1):
                total = BigradedCoproduct(mu, L.n, {})
                for t in excluded:
                    val = fev(L, t, mu)
                    checked += 1
                    if val:
                        failures.append({"tree": t.canonical(), "mu": mu, "value": str(val)})
                    total = total + val
                if total:
                    failures.append({"bidegree": (w, b), "mu": mu, "sum": str(total)})
    return Report("selection-rule", not failures, {"algebra": L.name, "evaluations": checked}, failures)


def commutator_tree_expansion_check(L: LieAlgebra, w: int, D: int) -> Report:
    """[..[d^mu, X_a1], .., X_aw] equals the sum of ev over T^ord_{w,b}, b <= D - w + 1."""
    from .series import phi_symmetric
    phi = phi_symmetric(L, D)
    W = D - w + 1
    n = L.n
    sums: Dict = {}
    for b in range(W + 1):
        if w + b < 1:
            continue
        for t in enumerate_ordered(w, b):
            for key, s in ev(L, t).components.items():
                prev = sums.get(key, TruncatedSeries.zero(n, W))
                sums[key] = prev + TruncatedSeries(n, W, s.terms)
    failures = []
    for alphas in product(range(1, n + 1), repeat=w):
        for mu in range(1, n + 1):
            lhs = nested_commutator(L, phi, mu, alphas)
            rhs = sums.get((mu, alphas), TruncatedSeries.zero(n, W))
            if lhs != rhs:
                failures.append({"mu": mu, "alphas": alphas, "lhs": str(lhs), "rhs": str(rhs)})
    return Report("commutator-trees", not failures, {"algebra": L.name, "w": w, "cutoff": D}, failures)


def counit_check(table: Sequence[BigradedCoproduct]) -> Report:
    """Killing the left (right) factor leaves exactly 1(x)d^mu (d^mu(x)1)."""
    failures = []
    for D in table:
        n, mu = D.n, D.mu
        z = (0,) * n
        right_only = {k: v for k, v in D.terms.items() if k[0] == z}
        left_only = {k: v for k, v in D.terms.items() if k[1] == z}
        if right_only != {(z, unit(n, mu - 1)): 1}:
            failures.append({"mu": mu, "leg": "left", "got": str(right_only)})
        if left_only != {(unit(n, mu - 1), z): 1}:
            failures.append({"mu": mu, "leg": "right", "got": str(left_only)})
    return Report("counit", not failures, {"components": len(table)}, failures)


def coassociativity_check(table: Sequence[BigradedCoproduct], degree: int = 4) -> Report:
    """(Delta (x) id) Delta d^mu = (id (x) Delta) Delta d^mu through the given total degree."""
    n = table[0].n
    names = tuple(f"k{i + 1}" for i in range(n)) + tuple(f"q{i + 1}" for i in range(n)) + \
        tuple(f"r{i + 1}" for i in range(n))
    N = 3 * n
    var = [Polynomial.variable(N, i, names) for i in range(N)]
    kk, qq, rr = var[:n], var[n:2 * n], var[2 * n:]
    polys = [D.to_kq() for D in table]

    def delta(mu, left, right):
        return polys[mu].substitute(list(left) + list(right), degree)

    failures = []
    for mu in range(n):
        dkq = [delta(r, kk, qq) for r in range(n)]
        dqr = [delta(r, qq, rr) for r in range(n)]
        lhs = delta(mu, dkq, rr).truncate(degree)
        rhs = delta(mu, kk, dqr).truncate(degree)
        if lhs != rhs:
            failures.append({"mu": mu + 1, "difference": str(lhs - rhs)})
    return Report("coassociativity", not failures, {"degree": degree}, failures)
