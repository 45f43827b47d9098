"""Hausdorff series in a concrete Lie algebra, in coordinates.

With X = k.x, Y = q.x (no imaginary unit) the series H(X, Y) = D(k, q).x is a
vector of polynomials in k1..kn, q1..qn. It is computed by the Dynkin
recursion, by two bigraded recursions and by a free-algebra oracle
(log(e^X e^Y) projected with the Dynkin idempotent).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .algebra import LieAlgebra
from .feynman import coproduct_adjoint, coproduct_trees, kq_names, kq_vectors
from .polynomial import Polynomial
from .report import Report
from .series import bernoulli, phi_symmetric


class HausdorffError(ValueError):
    pass


class VectorPolynomial:
    """Components mu = 1..n, each a polynomial in k1..kn, q1..qn."""

    __slots__ = ("n", "components")

    def __init__(self, components: Sequence):
        comps = list(components)
        self.n = len(comps)
        zero = Polynomial.zero(2 * self.n, kq_names(self.n))
        self.components: Tuple[Polynomial, ...] = tuple(
            c if isinstance(c, Polynomial) and c else zero for c in comps)

    @classmethod
    def zero(cls, n: int) -> "VectorPolynomial":
        return cls([0] * n)

    def __getitem__(self, mu: int) -> Polynomial:
        """1-based component."""
        return self.components[mu - 1]

    def __add__(self, other: "VectorPolynomial") -> "VectorPolynomial":
        return VectorPolynomial([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorPolynomial") -> "VectorPolynomial":
        return VectorPolynomial([a - b for a, b in zip(self.components, other.components)])

    def scale(self, c) -> "VectorPolynomial":
        return VectorPolynomial([c * a for a in self.components])

    def piece(self, w: int, b: int) -> "VectorPolynomial":
        """Part of k-degree w and q-degree b."""
        n = self.n
        return VectorPolynomial([a.part(lambda m: sum(m[:n]) == w and sum(m[n:]) == b)
                                 for a in self.components])

    def substitute(self, k_values, q_values) -> "VectorPolynomial":
        vals = list(k_values) + list(q_values)
        return VectorPolynomial([a.substitute(vals) if a else a for a in self.components])

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return isinstance(other, VectorPolynomial) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "\n".join(f"D^{mu + 1} = {c}" for mu, c in enumerate(self.components))


def _bracket(L: LieAlgebra, u, v):
    return L.bracket(list(u), list(v))


# Dynkin recursion ------------------------------------------------------------

def _tuples(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _tuples(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=64)
def _dynkin_table(L: LieAlgebra, top: int) -> Tuple[VectorPolynomial, ...]:
    """(N+1) D_{N+1} = 1/2 [k - q, D_N] + sum_{r>=1} B_2r/(2r)! sum_s [D_s1, [.., [D_s2r, k + q]]]."""
    n = L.n
    k, q = kq_vectors(n)
    kmq = [a - b for a, b in zip(k, q)]
    kpq = [a + b for a, b in zip(k, q)]
    table = [None, VectorPolynomial(kpq)]
    for N in range(1, top):
        acc = [Fraction(1, 2) * x if x else x for x in _bracket(L, kmq, table[N].components)]
        r = 1
        while 2 * r <= N:
            coef = bernoulli(2 * r) / factorial(2 * r)
            if coef:
                for s in _tuples(N, 2 * r):
                    v = kpq
                    for si in reversed(s):
                        v = _bracket(L, table[si].components, v)
                    acc = [a + coef * b for a, b in zip(acc, v)]
            r += 1
        table.append(VectorPolynomial([Fraction(1, N + 1) * a if a else a for a in acc]))
    return tuple(table)


def dynkin_D(L: LieAlgebra, N: int) -> VectorPolynomial:
    """The homogeneous degree-N part of D(k, q)."""
    if N < 1:
        raise HausdorffError("N must be >= 1")
    return _dynkin_table(L, N)[N]


# bigraded recursions -------------------------------------------------------

def _bidegree_parts(w: int, b: int, parts: int):
    if parts == 0:
        if (w, b) == (0, 0):
            yield ()
        return
    for w1 in range(w + 1):
        for b1 in range(b + 1):
            if w1 + b1 == 0:
                continue
            for rest in _bidegree_parts(w - w1, b - b1, parts - 1):
                yield ((w1, b1),) + rest


@lru_cache(maxsize=64)
def _bigraded_table(L: LieAlgebra, top: int, route: str) -> Dict[Tuple[int, int], VectorPolynomial]:
    """H_{w,b} for w + b <= top.

    w-route:  w H_{w,b} = 1/2 [X, H_{w-1,b}] + sum_{r>=1} B_2r/(2r)! sum [H_{p1},[..,[H_{p2r}, X]]],
              parts p_i summing to (w-1, b); boundary H_{0,1} = Y, H_{0,b} = 0 otherwise.
    b-route:  b H_{w,b} = -1/2 [Y, H_{w,b-1}] + sum_{r>=1} B_2r/(2r)! sum [H_{p1},[..,[H_{p2r}, Y]]],
              parts p_i summing to (w, b-1); boundary H_{1,0} = X, H_{w,0} = 0 otherwise.
    """
    n = L.n
    k, q = kq_vectors(n)
    X, Y = list(k), list(q)
    H: Dict[Tuple[int, int], VectorPolynomial] = {}
    zero = VectorPolynomial.zero(n)

    def get(w, b):
        return H.get((w, b), zero)

    for P in range(1, top + 1):
        for w in range(P + 1):
            b = P - w
            if route == "w":
                if w == 0:
                    H[(w, b)] = VectorPolynomial(Y) if b == 1 else zero
                    continue
                if (w, b) == (1, 0):
                    H[(w, b)] = VectorPolynomial(X)
                    continue
                lead, gen, sign, div, rest = X, X, Fraction(1, 2), w, (w - 1, b)
            elif route == "b":
                if b == 0:
                    H[(w, b)] = VectorPolynomial(X) if w == 1 else zero
                    continue
                if (w, b) == (0, 1):
                    H[(w, b)] = VectorPolynomial(Y)
                    continue
                lead, gen, sign, div, rest = Y, Y, Fraction(-1, 2), b, (w, b - 1)
            else:
                raise HausdorffError(f"unknown route {route!r}")
            acc = [sign * x if x else x for x in _bracket(L, lead, get(*rest).components)]
            r = 1
            while 2 * r <= sum(rest):
                coef = bernoulli(2 * r) / factorial(2 * r)
                for parts in _bidegree_parts(rest[0], rest[1], 2 * r):
                    v = gen
                    for p in reversed(parts):
                        hp = get(*p)
                        if hp.is_zero():
                            v = None
                            break
                        v = _bracket(L, hp.components, v)
                    if v is not None:
                        acc = [a + coef * x for a, x in zip(acc, v)]
                r += 1
            H[(w, b)] = VectorPolynomial([Fraction(1, div) * a if a else a for a in acc])
    return H


def bigraded_H(L: LieAlgebra, w: int, b: int, route: str = "w") -> VectorPolynomial:
    if w < 0 or b < 0 or w + b < 1:
        raise HausdorffError("need w, b >= 0 and w + b >= 1")
    return _bigraded_table(L, w + b, route)[(w, b)]


# linear parts ---------------------------------------------------------------

def linear_in_x(L: LieAlgebra, N: int) -> VectorPolynomial:
    """B_N/N! ad_Y^N X, the H_{1,N} piece (B_1 = -1/2)."""
    k, q = kq_vectors(L.n)
    v = list(k)
    for _ in range(N):
        v = _bracket(L, q, v)
    return VectorPolynomial(v).scale(bernoulli(N) / factorial(N))


def linear_in_y(L: LieAlgebra, N: int) -> VectorPolynomial:
    """(-1)^N B_N/N! ad_X^N Y, the H_{N,1} piece."""
    k, q = kq_vectors(L.n)
    v = list(q)
    for _ in range(N):
        v = _bracket(L, k, v)
    return VectorPolynomial(v).scale((-1) ** N * bernoulli(N) / factorial(N))


def linear_parts_check(L: LieAlgebra, Nmax: int) -> Report:
    """H_{1,N} and H_{N,1} from both bigraded routes against the Bernoulli closed forms.

    Also records whether the printed forms (which put (-1)^N on the X-linear
    part instead) would agree; they do only under the B_1 = +1/2 convention.
    """
    if not 0 <= Nmax <= 6:
        raise HausdorffError("Nmax must be in 0..6")
    failures = []
    printed_ok = True
    k, q = kq_vectors(L.n)
    for N in range(0, Nmax + 1):
        fx, fy = linear_in_x(L, N), linear_in_y(L, N)
        for route in ("w", "b"):
            hx = bigraded_H(L, 1, N, route)
            hy = bigraded_H(L, N, 1, route) if N >= 1 else VectorPolynomial(q)
            if hx != fx:
                failures.append({"piece": (1, N), "route": route, "got": str(hx), "expected": str(fx)})
            if hy != fy:
                failures.append({"piece": (N, 1), "route": route, "got": str(hy), "expected": str(fy)})
        if N >= 1:
            if fx.scale((-1) ** N) != bigraded_H(L, 1, N) or fy.scale((-1) ** N) != bigraded_H(L, N, 1):
                printed_ok = False
    return Report("linear-parts", not failures,
                  {"algebra": L.name, "Nmax": Nmax, "printed-signs-hold": printed_ok}, failures)


# free-algebra oracle ----------------------------------------------------------

Word = Tuple[int, ...]


class FreeSeries:
    """Truncated series in the free associative algebra on letters 0 (X) and 1 (Y)."""

    __slots__ = ("cutoff", "terms")

    def __init__(self, cutoff: int, terms: Dict[Word, Fraction] | None = None):
        self.cutoff = cutoff
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c and len(w) <= cutoff}

    @classmethod
    def letter(cls, cutoff: int, a: int) -> "FreeSeries":
        return cls(cutoff, {(a,): 1})

    @classmethod
    def one(cls, cutoff: int) -> "FreeSeries":
        return cls(cutoff, {(): 1})

    def __add__(self, other: "FreeSeries") -> "FreeSeries":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FreeSeries(self.cutoff, out)

    def scale(self, c) -> "FreeSeries":
        return FreeSeries(self.cutoff, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "FreeSeries") -> "FreeSeries":
        out: Dict[Word, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if len(a) + len(b) <= self.cutoff:
                    out[a + b] = out.get(a + b, 0) + ca * cb
        return FreeSeries(self.cutoff, out)

    def exp(self) -> "FreeSeries":
        out = FreeSeries.one(self.cutoff)
        power = FreeSeries.one(self.cutoff)
        for m in range(1, self.cutoff + 1):
            power = power * self
            out = out + power.scale(Fraction(1, factorial(m)))
        return out

    def log1p(self) -> "FreeSeries":
        """log(1 + self) for self without constant term."""
        out = FreeSeries(self.cutoff)
        power = FreeSeries.one(self.cutoff)
        for m in range(1, self.cutoff + 1):
            power = power * self
            out = out + power.scale(Fraction((-1) ** (m + 1), m))
        return out


def bch_free(P: int) -> FreeSeries:
    """log(e^X e^Y) in the free algebra, words of length <= P."""
    X, Y = FreeSeries.letter(P, 0), FreeSeries.letter(P, 1)
    prod = X.exp() * Y.exp()
    prod.terms.pop((), None)
    return prod.log1p()


def bch_oracle(L: LieAlgebra, P: int) -> List[VectorPolynomial]:
    """D_1..D_P by projecting log(e^X e^Y) with w -> [..[w1, w2], .., wL]/L and evaluating in g."""
    if not 1 <= P <= 6:
        raise HausdorffError("P must be in 1..6")
    n = L.n
    k, q = kq_vectors(n)
    letters = (list(k), list(q))
    memo: Dict[Word, list] = {}

    def nested(word: Word):
        if word in memo:
            return memo[word]
        if len(word) == 1:
            v = letters[word[0]]
        else:
            v = _bracket(L, nested(word[:-1]), letters[word[-1]])
        memo[word] = v
        return v

    series = bch_free(P)
    out = [VectorPolynomial.zero(n) for _ in range(P)]
    acc = [[0] * n for _ in range(P)]
    for word, c in series.terms.items():
        ln = len(word)
        v = nested(word)
        scale = c / ln
        acc[ln - 1] = [a + scale * x if x else a for a, x in zip(acc[ln - 1], v)]
    return [VectorPolynomial(a) for a in acc]


# checks ----------------------------------------------------------------------

def hausdorff_symmetry_check(L: LieAlgebra, P: int) -> Report:
    """D_P(k, q) = -D_P(-q, -k)."""
    if not 1 <= P <= 6:
        raise HausdorffError("P must be in 1..6")
    n = L.n
    k, q = kq_vectors(n)
    D = dynkin_D(L, P)
    swapped = D.substitute([-x for x in q], [-x for x in k])
    ok = D == swapped.scale(-1)
    return Report("hausdorff-symmetry", ok, {"algebra": L.name, "P": P},
                  [] if ok else [{"D": str(D), "swapped": str(swapped)}])


def diagonal_check(L: LieAlgebra, P: int) -> Report:
    """D_P(k, k) = 0 for P >= 2, since H(X, X) = 2X."""
    k, _ = kq_vectors(L.n)
    D = dynkin_D(L, P)
    diag = D.substitute(k, k)
    ok = diag.is_zero() if P >= 2 else diag == VectorPolynomial([2 * x for x in k])
    return Report("hausdorff-diagonal", ok, {"algebra": L.name, "P": P},
                  [] if ok else [{"value": str(diag)}])


def oracle_check(L: LieAlgebra, P: int) -> Report:
    oracle = bch_oracle(L, P)
    failures = []
    for N in range(1, P + 1):
        if dynkin_D(L, N) != oracle[N - 1]:
            failures.append({"N": N, "dynkin": str(dynkin_D(L, N)), "oracle": str(oracle[N - 1])})
    return Report("dynkin-vs-oracle", not failures, {"algebra": L.name, "P": P}, failures)


def bigraded_check(L: LieAlgebra, P: int) -> Report:
    """w-route = b-route = bidegree split of D for all w + b <= P."""
    failures = []
    for N in range(1, P + 1):
        D = dynkin_D(L, N)
        total = VectorPolynomial.zero(L.n)
        for w in range(N + 1):
            b = N - w
            hw, hb, split = bigraded_H(L, w, b, "w"), bigraded_H(L, w, b, "b"), D.piece(w, b)
            total = total + hw
            if not (hw == hb == split):
                failures.append({"w": w, "b": b, "w-route": str(hw), "b-route": str(hb), "split": str(split)})
        if total != D:
            failures.append({"N": N, "sum": str(total), "dynkin": str(D)})
    return Report("bigraded-recursions", not failures, {"algebra": L.name, "P": P}, failures)


def compare_coproduct(L: LieAlgebra, P: int, phi=None) -> Report:
    """Delta d^mu with d(x)1 -> k, 1(x)d -> q equals D^mu(k, q) degree by degree and bidegree by bidegree."""
    if not 1 <= P <= 5:
        raise HausdorffError("P must be in 1..5")
    n = L.n
    phi = phi or phi_symmetric(L, P)
    failures = []
    for mu in range(1, n + 1):
        routes = {"trees": coproduct_trees(L, mu, P).to_kq(),
                  "adjoint": coproduct_adjoint(L, phi, mu, P).to_kq()}
        for N in range(1, P + 1):
            D = dynkin_D(L, N)[mu]
            for name, poly in routes.items():
                part = poly.homogeneous_part(N)
                if part != D:
                    failures.append({"mu": mu, "N": N, "route": name, "coproduct": str(part), "D": str(D)})
                    continue
                for w in range(N + 1):
                    b = N - w
                    piece = part.part(lambda m: sum(m[:n]) == w)
                    if piece != bigraded_H(L, w, b, "w")[mu]:
                        failures.append({"mu": mu, "w": w, "b": b, "route": name})
    return Report("coproduct-vs-hausdorff", not failures, {"algebra": L.name, "P": P}, failures)
