"""Normal-ordered elements of the (semicompleted) Weyl algebra.

An operator is stored flat as ``{(x_exponents, d_exponents): c}`` with every x
to the left of every d. ``cutoff`` bounds the d-degree to which the operator is
known; ``None`` means it is an honest finite differential operator.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Tuple

from .polynomial import Monomial, Polynomial, as_fraction, format_coefficient_term, format_monomial, unit
from .report import Report
from .series import SeriesMatrix, TruncatedSeries, d_names


class WeylError(ValueError):
    pass


def _min_cutoff(*cs):
    known = [c for c in cs if c is not None]
    return min(known) if known else None


def _falling(e: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= e - j
    return out


def _subvectors(a: Monomial, b: Monomial):
    """All c with 0 <= c <= min(a, b) componentwise."""
    bounds = [min(x, y) for x, y in zip(a, b)]
    out = [()]
    for hi in bounds:
        out = [c + (k,) for c in out for k in range(hi + 1)]
    return out


class WeylOperator:
    __slots__ = ("n", "cutoff", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None, cutoff: int | None = None):
        self.n = n
        self.cutoff = cutoff
        clean: Dict = {}
        for (xm, dm), c in (terms or {}).items():
            xm, dm = tuple(xm), tuple(dm)
            if len(xm) != n or len(dm) != n:
                raise WeylError("exponent vectors must have length n")
            if cutoff is not None and sum(dm) > cutoff:
                continue
            c = as_fraction(c)
            if c:
                clean[(xm, dm)] = clean.get((xm, dm), 0) + c
        self.terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, n, terms, cutoff):
        w = cls.__new__(cls)
        w.n, w.terms, w.cutoff, w._hash = n, terms, cutoff, None
        return w

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n: int, cutoff: int | None = None) -> "WeylOperator":
        return cls._raw(n, {}, cutoff)

    @classmethod
    def scalar(cls, n: int, c=1, cutoff: int | None = None) -> "WeylOperator":
        z = (0,) * n
        return cls(n, {(z, z): c}, cutoff)

    @classmethod
    def x(cls, n: int, i: int, cutoff: int | None = None) -> "WeylOperator":
        """Multiplication by x_i (1-based)."""
        return cls(n, {(unit(n, i - 1), (0,) * n): 1}, cutoff)

    @classmethod
    def d(cls, n: int, i: int, cutoff: int | None = None) -> "WeylOperator":
        """The derivative d^i (1-based)."""
        return cls(n, {((0,) * n, unit(n, i - 1)): 1}, cutoff)

    @classmethod
    def from_polynomial(cls, f: Polynomial, cutoff: int | None = None) -> "WeylOperator":
        z = (0,) * f.n
        return cls(f.n, {(m, z): c for m, c in f.terms.items()}, cutoff)

    @classmethod
    def from_series(cls, s: TruncatedSeries, xmono: Monomial | None = None) -> "WeylOperator":
        xm = tuple(xmono) if xmono is not None else (0,) * s.n
        return cls(s.n, {(xm, m): c for m, c in s.terms.items()}, s.cutoff)

    # structure ---------------------------------------------------------
    def x_degree(self) -> int:
        return max((sum(xm) for xm, _ in self.terms), default=0)

    def d_degree(self) -> int:
        return max((sum(dm) for _, dm in self.terms), default=0)

    def series_part(self, xmono: Monomial) -> TruncatedSeries:
        """Coefficient series of the x-monomial (requires a finite cutoff or uses d-degree)."""
        D = self.cutoff if self.cutoff is not None else self.d_degree()
        return TruncatedSeries(self.n, D, {dm: c for (xm, dm), c in self.terms.items()
                                           if xm == tuple(xmono)})

    def truncate(self, cutoff: int) -> "WeylOperator":
        if self.cutoff is not None and cutoff > self.cutoff:
            raise WeylError(f"cannot raise cutoff {self.cutoff} to {cutoff}")
        return WeylOperator._raw(self.n, {k: v for k, v in self.terms.items() if sum(k[1]) <= cutoff},
                                 cutoff)

    # arithmetic --------------------------------------------------------
    def _check(self, other: "WeylOperator"):
        if other.n != self.n:
            raise WeylError(f"ambient mismatch: {self.n} vs {other.n}")

    def _combine(self, other: "WeylOperator", sign) -> "WeylOperator":
        self._check(other)
        cut = _min_cutoff(self.cutoff, other.cutoff)
        out = {k: v for k, v in self.terms.items() if cut is None or sum(k[1]) <= cut}
        for k, v in other.terms.items():
            if cut is not None and sum(k[1]) > cut:
                continue
            s = out.get(k, 0) + sign * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return WeylOperator._raw(self.n, out, cut)

    def __add__(self, other):
        if not isinstance(other, WeylOperator):
            other = WeylOperator.scalar(self.n, other, self.cutoff)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, WeylOperator):
            other = WeylOperator.scalar(self.n, other, self.cutoff)
        return self._combine(other, -1)

    def __neg__(self):
        return WeylOperator._raw(self.n, {k: -v for k, v in self.terms.items()}, self.cutoff)

    def __mul__(self, other):
        if isinstance(other, WeylOperator):
            return weyl_mul(self, other)
        c = as_fraction(other)
        if not c:
            return WeylOperator.zero(self.n, self.cutoff)
        return WeylOperator._raw(self.n, {k: c * v for k, v in self.terms.items()}, self.cutoff)

    def __rmul__(self, other):
        return self * other

    def commutator(self, other: "WeylOperator") -> "WeylOperator":
        return weyl_mul(self, other) - weyl_mul(other, self)

    # comparison / rendering -------------------------------------------
    def agrees_with(self, other: "WeylOperator", degree: int) -> bool:
        a = {k: v for k, v in self.terms.items() if sum(k[1]) <= degree}
        b = {k: v for k, v in other.terms.items() if sum(k[1]) <= degree}
        return a == b

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.n == other.n and self.cutoff == other.cutoff and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.cutoff, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        xn = tuple(f"x{i + 1}" for i in range(self.n))
        dn = d_names(self.n)

        def key(k):
            xm, dm = k
            return (-(sum(xm) + sum(dm)), -sum(xm), tuple(-e for e in xm), tuple(-e for e in dm))

        parts = []
        for idx, k in enumerate(sorted(self.terms, key=key)):
            body = "*".join(p for p in (format_monomial(k[0], xn), format_monomial(k[1], dn)) if p)
            parts.append(format_coefficient_term(self.terms[k], body, idx == 0))
        return "".join(parts)

    def __repr__(self):
        return f"WeylOperator(D={self.cutoff}: {self})"


def weyl_mul(A: WeylOperator, B: WeylOperator) -> WeylOperator:
    """Normal-ordered product, using F(d) x^b = sum_c binom(b, c) x^(b-c) F^(c)(d).

    The d-part of A loses up to x_degree(B) degrees of validity.
    """
    A._check(B)
    n = A.n
    if A.cutoff is None:
        cut = B.cutoff
    else:
        left = A.cutoff - B.x_degree()
        if left < 0:
            raise WeylError(f"cutoff {A.cutoff} too small to pass x-degree {B.x_degree()}")
        cut = left if B.cutoff is None else min(left, B.cutoff)
    out: Dict = {}
    for (xa, da), ca in A.terms.items():
        for (xb, db), cb in B.terms.items():
            for c in _subvectors(da, xb):
                dm = tuple(p - r + q for p, r, q in zip(da, c, db))
                if cut is not None and sum(dm) > cut:
                    continue
                coef = ca * cb
                for bi, ci, di in zip(xb, c, da):
                    if ci:
                        coef *= comb(bi, ci) * _falling(di, ci)
                xm = tuple(p + q - r for p, q, r in zip(xa, xb, c))
                key = (xm, dm)
                out[key] = out.get(key, 0) + coef
    return WeylOperator._raw(n, {k: v for k, v in out.items() if v}, cut)


def apply(A: WeylOperator, f: Polynomial) -> Polynomial:
    """The Fock action on polynomials: d^i acts as d/dx_i, x_i by multiplication."""
    if A.n != f.n:
        raise WeylError(f"ambient mismatch: {A.n} vs {f.n}")
    if A.cutoff is not None and f.degree() > A.cutoff:
        raise WeylError(f"operator known to d-degree {A.cutoff} cannot act on degree {f.degree()}")
    out: Dict = {}
    for (xm, dm), c in A.terms.items():
        g = f.diff_multi(dm)
        for m, v in g.terms.items():
            mm = tuple(p + q for p, q in zip(m, xm))
            out[mm] = out.get(mm, 0) + c * v
    return Polynomial(f.n, out, f.names)


def vacuum(A: WeylOperator) -> Polynomial:
    """A applied to 1."""
    z = (0,) * A.n
    return Polynomial(A.n, {xm: c for (xm, dm), c in A.terms.items() if dm == z})


def realize_generator(phi: SeriesMatrix, i: int) -> WeylOperator:
    """x_beta phi^beta_i (1-based i)."""
    n = phi.n
    terms = {}
    for beta in range(n):
        for dm, c in phi[beta, i - 1].terms.items():
            terms[(unit(n, beta), dm)] = c
    return WeylOperator(n, terms, phi.cutoff)


def apply_generator(phi: SeriesMatrix, i: int, f: Polynomial) -> Polynomial:
    """Act with x_beta phi^beta_i on f without building the operator."""
    n = phi.n
    if f.degree() > phi.cutoff:
        raise WeylError(f"phi known to degree {phi.cutoff} cannot act on degree {f.degree()}")
    out: Dict = {}
    top = f.degree()
    for beta in range(n):
        for dm, c in phi[beta, i - 1].terms.items():
            if sum(dm) > top:
                continue
            for m, v in f.diff_multi(dm).terms.items():
                mm = m[:beta] + (m[beta] + 1,) + m[beta + 1:]
                out[mm] = out.get(mm, 0) + c * v
    return Polynomial(n, out, f.names)


# the undeformed coproduct on polynomials ---------------------------------

Tensor = Dict[Tuple[Monomial, Monomial], Fraction]


def poly_coproduct(f: Polynomial) -> Tensor:
    """x^e -> sum_k binom(e, k) x^k (x) x^(e-k), extended linearly."""
    out: Tensor = {}
    for e, c in f.terms.items():
        for k in _subvectors(e, e):
            coef = c
            for ei, ki in zip(e, k):
                coef *= comb(ei, ki)
            rest = tuple(a - b for a, b in zip(e, k))
            out[(k, rest)] = out.get((k, rest), 0) + coef
    return {k: v for k, v in out.items() if v}


def _act_on_leg(A: WeylOperator, t: Tensor, leg: int, n: int) -> Tensor:
    out: Tensor = {}
    for pair, c in t.items():
        g = apply(A, Polynomial.monomial(pair[leg], c))
        for m, v in g.terms.items():
            key = (m, pair[1]) if leg == 0 else (pair[0], m)
            out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


def coderivation_check(A: WeylOperator, f: Polynomial) -> Report:
    """Delta(A f) == (A (x) id + id (x) A) Delta(f)."""
    lhs = poly_coproduct(apply(A, f))
    t = poly_coproduct(f)
    rhs = dict(_act_on_leg(A, t, 0, f.n))
    for k, v in _act_on_leg(A, t, 1, f.n).items():
        s = rhs.get(k, 0) + v
        if s:
            rhs[k] = s
        else:
            rhs.pop(k, None)
    ok = lhs == rhs
    return Report("coderivation", ok, {"f": str(f)}, [] if ok else [{"operator": str(A), "f": str(f)}])


def random_x_linear_operator(rng: random.Random, n: int, sigma: int, order: int,
                             density: float = 0.4) -> WeylOperator:
    """x_sigma * chi(d) with chi a random sparse polynomial of the given order."""
    from .polynomial import monomials_up_to
    terms = {}
    for dm in monomials_up_to(n, order):
        if rng.random() < density:
            terms[(unit(n, sigma - 1), dm)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return WeylOperator(n, terms)


def random_operator(rng: random.Random, n: int, xdeg: int, ddeg: int, count: int = 4,
                    cutoff: int | None = None) -> WeylOperator:
    from .polynomial import monomials_up_to
    xs = list(monomials_up_to(n, xdeg))
    ds = list(monomials_up_to(n, ddeg))
    terms = {}
    for _ in range(count):
        terms[(rng.choice(xs), rng.choice(ds))] = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
    return WeylOperator(n, terms, cutoff)
