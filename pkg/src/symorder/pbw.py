"""The enveloping algebra in PBW normal form, the symmetrization map and its
inverse through a Weyl realization, and deformed partial derivatives.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .algebra import LieAlgebra
from .polynomial import (Monomial, Polynomial, add_terms, as_fraction, format_terms, grlex_key,
                         monomials_up_to, scale_terms, unit)
from .report import Report
from .series import SeriesMatrix, TruncatedSeries
from .weyl import apply_generator

Terms = Dict[Monomial, Fraction]


class PbwError(ValueError):
    pass


class PbwElement:
    """Element of U(g): ``terms[e]`` is the coefficient of X1^e1 ... Xn^en."""

    __slots__ = ("L", "terms", "_hash")

    def __init__(self, L: LieAlgebra, terms: Mapping | None = None):
        self.L = L
        clean: Terms = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != L.n:
                raise PbwError(f"exponent vector {m} has wrong length for n={L.n}")
            c = as_fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, L, terms) -> "PbwElement":
        u = cls.__new__(cls)
        u.L, u.terms, u._hash = L, terms, None
        return u

    @classmethod
    def one(cls, L: LieAlgebra) -> "PbwElement":
        return cls._raw(L, {(0,) * L.n: Fraction(1)})

    @classmethod
    def zero(cls, L: LieAlgebra) -> "PbwElement":
        return cls._raw(L, {})

    @classmethod
    def generator(cls, L: LieAlgebra, i: int) -> "PbwElement":
        """X_i, 1-based."""
        return cls._raw(L, {unit(L.n, i - 1): Fraction(1)})

    @classmethod
    def linear(cls, L: LieAlgebra, a: Sequence) -> "PbwElement":
        """a^alpha X_alpha."""
        return cls(L, {unit(L.n, i): c for i, c in enumerate(a)})

    @classmethod
    def ordered_monomial(cls, L: LieAlgebra, e: Sequence[int], c=1) -> "PbwElement":
        return cls(L, {tuple(e): c})

    def _check(self, other: "PbwElement"):
        if other.L != self.L:
            raise PbwError("elements of different enveloping algebras")

    def _coerce(self, other) -> "PbwElement":
        if isinstance(other, PbwElement):
            self._check(other)
            return other
        return PbwElement(self.L, {(0,) * self.L.n: as_fraction(other)})

    def __add__(self, other):
        other = self._coerce(other)
        return PbwElement._raw(self.L, add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return PbwElement._raw(self.L, add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return PbwElement._raw(self.L, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PbwElement):
            return pbw_mul(self.L, self, other)
        return PbwElement._raw(self.L, scale_terms(self.terms, other))

    def __rmul__(self, other):
        return PbwElement._raw(self.L, scale_terms(self.terms, other))

    def __pow__(self, k: int):
        out = PbwElement.one(self.L)
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        """Filtration degree; -1 for zero."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PbwElement):
            return self.L == other.L and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == PbwElement(self.L, {(0,) * self.L.n: other}).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.L, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_terms(self.terms, [f"X{i + 1}" for i in range(self.L.n)], descending=True)

    def __repr__(self):
        return f"PbwElement({self})"


# straightening -------------------------------------------------------------

class _Straightener:
    """Left multiplication by single generators, memoized per algebra."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.n = L.n
        self.memo: Dict[Tuple[int, Monomial], Terms] = {}

    def left(self, i: int, e: Monomial) -> Terms:
        """X_i * X^e in normal form (0-based i)."""
        key = (i, e)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        j = next((s for s, v in enumerate(e) if v), None)
        if j is None or i <= j:
            out = {e[:i] + (e[i] + 1,) + e[i + 1:]: Fraction(1)}
        else:
            # X_i X_j R = X_j (X_i R) + C^k_ij X_k R
            rest = e[:j] + (e[j] - 1,) + e[j + 1:]
            out = {}
            for m, c in self.left(i, rest).items():
                out = add_terms(out, self.left(j, m), c)
            for k in range(self.n):
                c = self.L.c(i + 1, j + 1, k + 1)
                if c:
                    out = add_terms(out, self.left(k, rest), c)
        self.memo[key] = out
        return out

    def word(self, letters: Sequence[int]) -> Terms:
        """Normal form of X_{l1} X_{l2} ... (0-based letters)."""
        cur: Terms = {(0,) * self.n: Fraction(1)}
        for i in reversed(letters):
            nxt: Terms = {}
            for m, c in cur.items():
                nxt = add_terms(nxt, self.left(i, m), c)
            cur = nxt
        return cur

    def times(self, a: Terms, b: Terms) -> Terms:
        out: Terms = {}
        for ma, ca in a.items():
            cur = dict(b)
            for i in range(self.n - 1, -1, -1):
                for _ in range(ma[i]):
                    nxt: Terms = {}
                    for m, c in cur.items():
                        nxt = add_terms(nxt, self.left(i, m), c)
                    cur = nxt
            out = add_terms(out, cur, ca)
        return out


@lru_cache(maxsize=64)
def _straightener(L: LieAlgebra) -> _Straightener:
    return _Straightener(L)


def pbw_mul(L: LieAlgebra, a: PbwElement, b: PbwElement) -> PbwElement:
    if a.L != L or b.L != L:
        raise PbwError("elements of different enveloping algebras")
    return PbwElement._raw(L, _straightener(L).times(a.terms, b.terms))


def pbw_word(L: LieAlgebra, letters: Sequence[int]) -> PbwElement:
    """Normal form of X_{l1} ... X_{lk} for 1-based letters."""
    return PbwElement._raw(L, _straightener(L).word([i - 1 for i in letters]))


# symmetrization -------------------------------------------------------------

def _letters(e: Monomial):
    out = []
    for i, k in enumerate(e):
        out.extend([i] * k)
    return out


@lru_cache(maxsize=4096)
def _xi_monomial(L: LieAlgebra, e: Monomial) -> Tuple[Tuple[Monomial, Fraction], ...]:
    st = _straightener(L)
    perms = set(permutations(_letters(e)))
    acc: Terms = {}
    for p in perms:
        acc = add_terms(acc, st.word(p))
    w = Fraction(1, len(perms))
    return tuple((m, c * w) for m, c in acc.items())


def coexp_xi(L: LieAlgebra, f: Polynomial) -> PbwElement:
    """Symmetrization: x_a1...x_ak -> (1/k!) sum over orderings of X_a1...X_ak."""
    if f.n != L.n:
        raise PbwError("polynomial and algebra have different dimensions")
    out: Terms = {}
    for e, c in f.terms.items():
        out = add_terms(out, dict(_xi_monomial(L, e)), c)
    return PbwElement._raw(L, out)


class Realization:
    """The action of U(g) on polynomials given by a realization matrix phi.

    Monomial images are memoized; the instance is tied to one (L, phi).
    """

    def __init__(self, L: LieAlgebra, phi: SeriesMatrix):
        if phi.n != L.n:
            raise PbwError("phi matrix size does not match the algebra")
        self.L, self.phi = L, phi
        self.memo: Dict[Monomial, Polynomial] = {}

    def monomial(self, e: Monomial) -> Polynomial:
        """X^e applied to 1."""
        hit = self.memo.get(e)
        if hit is not None:
            return hit
        k = sum(e)
        if k == 0:
            out = Polynomial.constant(self.L.n, 1)
        else:
            i = next(s for s, v in enumerate(e) if v)
            rest = e[:i] + (e[i] - 1,) + e[i + 1:]
            out = apply_generator(self.phi, i + 1, self.monomial(rest))
        self.memo[e] = out
        return out

    def act(self, u: PbwElement, f: Polynomial) -> Polynomial:
        """u acting on an arbitrary polynomial via the realized generators."""
        out = Polynomial.zero(self.L.n)
        for e, c in u.terms.items():
            g = f
            for i in reversed(_letters(e)):
                g = apply_generator(self.phi, i + 1, g)
            out = out + c * g
        return out


@lru_cache(maxsize=64)
def realization(L: LieAlgebra, phi: SeriesMatrix) -> Realization:
    return Realization(L, phi)


def xi_inverse(L: LieAlgebra, phi: SeriesMatrix, u: PbwElement) -> Polynomial:
    """u^phi(1): realize u by Weyl operators and evaluate on the vacuum."""
    need = max(u.degree() - 1, 0)
    if phi.cutoff < need:
        raise PbwError(f"cutoff {phi.cutoff} too small for degree {u.degree()} (need >= {need})")
    R = realization(L, phi)
    out: Terms = {}
    for e, c in u.terms.items():
        out = add_terms(out, R.monomial(e).terms, c)
    return Polynomial(L.n, out)


# deformed partial derivatives -----------------------------------------------

class DeformedPartials:
    """d^mu on U(g) defined by d^mu(X_nu f) = phi^mu_nu(d)(f) + X_nu d^mu(f)."""

    def __init__(self, L: LieAlgebra, phi: SeriesMatrix):
        if phi.n != L.n:
            raise PbwError("phi matrix size does not match the algebra")
        self.L, self.phi = L, phi
        self.st = _straightener(L)
        self.memo: Dict[Tuple[int, Monomial], Terms] = {}
        self.multi_memo: Dict[Tuple[Monomial, Monomial], Terms] = {}

    def _need(self, degree: int):
        if self.phi.cutoff < degree - 1:
            raise PbwError(f"phi cutoff {self.phi.cutoff} too small for degree {degree}")

    def partial_monomial(self, mu: int, e: Monomial) -> Terms:
        """d^(mu+1) applied to X^e, 0-based mu."""
        key = (mu, e)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not any(e):
            out: Terms = {}
        else:
            nu = next(s for s, v in enumerate(e) if v)
            rest = e[:nu] + (e[nu] - 1,) + e[nu + 1:]
            out = self.series_on_monomial(self.phi[mu, nu], rest)
            for m, c in self.partial_monomial(mu, rest).items():
                out = add_terms(out, self.st.left(nu, m), c)
        self.memo[key] = out
        return out

    def multi_on_monomial(self, d: Monomial, e: Monomial) -> Terms:
        """The commuting product d^d applied to X^e."""
        key = (d, e)
        hit = self.multi_memo.get(key)
        if hit is not None:
            return hit
        if sum(d) > sum(e):
            out: Terms = {}
        elif not any(d):
            out = {e: Fraction(1)}
        else:
            mu = next(s for s, v in enumerate(d) if v)
            rest = d[:mu] + (d[mu] - 1,) + d[mu + 1:]
            out = {}
            for m, c in self.partial_monomial(mu, e).items():
                out = add_terms(out, self.multi_on_monomial(rest, m), c)
        self.multi_memo[key] = out
        return out

    def series_on_monomial(self, s: TruncatedSeries, e: Monomial) -> Terms:
        top = sum(e)
        out: Terms = {}
        for d, c in s.terms.items():
            if sum(d) <= top:
                out = add_terms(out, self.multi_on_monomial(d, e), c)
        return out

    def partial(self, mu: int, u: PbwElement) -> PbwElement:
        """1-based mu."""
        self._need(u.degree())
        out: Terms = {}
        for e, c in u.terms.items():
            out = add_terms(out, self.partial_monomial(mu - 1, e), c)
        return PbwElement._raw(self.L, out)

    def apply_series(self, s: TruncatedSeries, u: PbwElement) -> PbwElement:
        top = u.degree()
        if top >= 1:
            self._need(top)
        if s.cutoff < top:
            raise PbwError(f"series known to degree {s.cutoff} cannot act on degree {top}")
        out: Terms = {}
        for e, c in u.terms.items():
            out = add_terms(out, self.series_on_monomial(s, e), c)
        return PbwElement._raw(self.L, out)

    def apply_multi(self, d: Monomial, u: PbwElement) -> PbwElement:
        self._need(u.degree())
        out: Terms = {}
        for e, c in u.terms.items():
            out = add_terms(out, self.multi_on_monomial(tuple(d), e), c)
        return PbwElement._raw(self.L, out)


@lru_cache(maxsize=64)
def deformed_partials(L: LieAlgebra, phi: SeriesMatrix) -> DeformedPartials:
    return DeformedPartials(L, phi)


def deformed_partial(L: LieAlgebra, phi: SeriesMatrix, mu: int, u: PbwElement) -> PbwElement:
    return deformed_partials(L, phi).partial(mu, u)


def evaluate_series_at_deformed(L: LieAlgebra, phi: SeriesMatrix, s: TruncatedSeries,
                                u: PbwElement) -> PbwElement:
    """s(d-hat)(u): substitute the commuting deformed partials into s."""
    return deformed_partials(L, phi).apply_series(s, u)


def star_pbw(L: LieAlgebra, phi: SeriesMatrix, f: Polynomial, g: Polynomial) -> Polynomial:
    """f * g = xi^-1(xi(f) xi(g))."""
    need = f.degree() + g.degree() - 1
    if phi.cutoff < need:
        raise PbwError(f"cutoff {phi.cutoff} too small for degree {f.degree() + g.degree()}")
    return xi_inverse(L, phi, pbw_mul(L, coexp_xi(L, f), coexp_xi(L, g)))


def operator_commutator_with_x(op, L: LieAlgebra, alpha: int):
    """[op, X_alpha] as an operator on U(g), where X_alpha acts by left multiplication."""
    x = PbwElement.generator(L, alpha)

    def out(u: PbwElement) -> PbwElement:
        return op(pbw_mul(L, x, u)) - pbw_mul(L, x, op(u))
    return out


def theta_xi_check(L: LieAlgebra, max_degree: int = 5, phi: SeriesMatrix | None = None) -> Report:
    """xi^-1(xi(x^e)) = x^e for every monomial of degree <= max_degree."""
    from .series import phi_symmetric
    phi = phi or phi_symmetric(L, max(max_degree - 1, 1))
    failures = []
    count = 0
    for e in monomials_up_to(L.n, max_degree):
        f = Polynomial.monomial(e)
        back = xi_inverse(L, phi, coexp_xi(L, f))
        count += 1
        if back != f:
            failures.append({"monomial": str(f), "round-trip": str(back)})
    return Report("theta-xi", not failures, {"algebra": L.name, "monomials": count}, failures)
