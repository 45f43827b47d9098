"""Truncated formal power series in d1..dn, series matrices and the
symmetric-ordering realization matrix.

A ``TruncatedSeries`` carries a cutoff D meaning "every coefficient of total
degree <= D is correct". Operations that consume a derivative lower it, so
cutoffs always describe a validity window rather than mere storage.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, List, Mapping, Sequence

from .algebra import LieAlgebra
from .polynomial import (Polynomial, add_terms, as_fraction, diff_terms, format_terms,
                         mul_terms, scale_terms, truncate_terms, unit)
from .report import Report


class SeriesError(ValueError):
    pass


def d_names(n: int):
    return tuple(f"d{i + 1}" for i in range(n))


class TruncatedSeries:
    __slots__ = ("n", "cutoff", "terms", "_hash")

    def __init__(self, n: int, cutoff: int, terms: Mapping | None = None):
        if cutoff < 0:
            raise SeriesError("cutoff must be >= 0")
        self.n = n
        self.cutoff = cutoff
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise SeriesError(f"multidegree {m} has wrong length for n={n}")
            if sum(m) <= cutoff:
                c = as_fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, n, cutoff, terms) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s.n, s.cutoff, s.terms, s._hash = n, cutoff, terms, None
        return s

    @classmethod
    def zero(cls, n: int, cutoff: int) -> "TruncatedSeries":
        return cls._raw(n, cutoff, {})

    @classmethod
    def constant(cls, n: int, cutoff: int, c=1) -> "TruncatedSeries":
        return cls(n, cutoff, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, cutoff: int, i: int) -> "TruncatedSeries":
        """The 0-based generator d_{i+1}."""
        return cls(n, cutoff, {unit(n, i): 1})

    @classmethod
    def from_polynomial(cls, p: Polynomial, cutoff: int) -> "TruncatedSeries":
        return cls(p.n, cutoff, p.terms)

    def to_polynomial(self, names=None) -> Polynomial:
        return Polynomial(self.n, self.terms, names or d_names(self.n))

    # arithmetic -------------------------------------------------------
    def _check(self, other: "TruncatedSeries"):
        if other.n != self.n:
            raise SeriesError(f"ambient mismatch: {self.n} vs {other.n}")
        if other.cutoff != self.cutoff:
            raise SeriesError(f"cutoff mismatch: {self.cutoff} vs {other.cutoff}")

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries.constant(self.n, self.cutoff, as_fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        return self._raw(self.n, self.cutoff, add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._raw(self.n, self.cutoff, add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._raw(self.n, self.cutoff, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return self._raw(self.n, self.cutoff, mul_terms(self.terms, other.terms, self.cutoff))
        return self._raw(self.n, self.cutoff, scale_terms(self.terms, other))

    def __rmul__(self, other):
        return self._raw(self.n, self.cutoff, scale_terms(self.terms, other))

    def __pow__(self, k: int):
        out = TruncatedSeries.constant(self.n, self.cutoff, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> "TruncatedSeries":
        """d/d(d_{i+1}), 0-based slot; the result is valid one degree less."""
        if self.cutoff == 0:
            raise SeriesError("cannot differentiate a series with cutoff 0")
        return self._raw(self.n, self.cutoff - 1, diff_terms(self.terms, i))

    def partial_derivative(self, rho: int) -> "TruncatedSeries":
        """d/d(d_rho) with 1-based rho."""
        if not 1 <= rho <= self.n:
            raise SeriesError(f"index {rho} out of range 1..{self.n}")
        return self.diff(rho - 1)

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        if cutoff > self.cutoff:
            raise SeriesError(f"cannot raise cutoff {self.cutoff} to {cutoff}")
        return self._raw(self.n, cutoff, truncate_terms(self.terms, cutoff))

    def homogeneous_part(self, d: int) -> "TruncatedSeries":
        return self._raw(self.n, self.cutoff, {m: c for m, c in self.terms.items() if sum(m) == d})

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def agrees_with(self, other: "TruncatedSeries", degree: int) -> bool:
        return truncate_terms(self.terms, degree) == truncate_terms(other.terms, degree)

    # comparison / rendering -------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.n == other.n and self.cutoff == other.cutoff and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == TruncatedSeries.constant(self.n, self.cutoff, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.cutoff, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_terms(self.terms, d_names(self.n))

    def __repr__(self):
        return f"TruncatedSeries(D={self.cutoff}: {self})"


class SeriesMatrix:
    """n x n matrix of series; ``rows[a][b]`` holds the entry with superscript a+1
    and subscript b+1 (row index is the superscript)."""

    __slots__ = ("n", "cutoff", "rows")

    def __init__(self, rows: Sequence[Sequence[TruncatedSeries]]):
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise SeriesError("series matrix must be square")
        cutoffs = {s.cutoff for r in self.rows for s in r}
        ambients = {s.n for r in self.rows for s in r}
        if len(cutoffs) > 1:
            raise SeriesError("series matrix entries must share one cutoff")
        if len(ambients) > 1:
            raise SeriesError("series matrix entries must share one ambient dimension")
        self.cutoff = cutoffs.pop() if cutoffs else 0

    @classmethod
    def identity(cls, n: int, cutoff: int) -> "SeriesMatrix":
        return cls([[TruncatedSeries.constant(n, cutoff, 1 if a == b else 0) for b in range(n)]
                    for a in range(n)])

    @classmethod
    def zero(cls, n: int, cutoff: int) -> "SeriesMatrix":
        return cls([[TruncatedSeries.zero(n, cutoff)] * n for _ in range(n)])

    def entry(self, upper: int, lower: int) -> TruncatedSeries:
        """1-based access: the (upper, lower) entry."""
        return self.rows[upper - 1][lower - 1]

    def __getitem__(self, ab):
        a, b = ab
        return self.rows[a][b]

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        return SeriesMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        return SeriesMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "SeriesMatrix":
        return SeriesMatrix([[c * x for x in r] for r in self.rows])

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        n = self.n
        out = []
        for a in range(n):
            row = []
            for b in range(n):
                acc = TruncatedSeries.zero(self.rows[0][0].n, self.cutoff)
                for g in range(n):
                    x, y = self.rows[a][g], other.rows[g][b]
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out)

    def truncate(self, cutoff: int) -> "SeriesMatrix":
        return SeriesMatrix([[x.truncate(cutoff) for x in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, SeriesMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        lines = []
        for a, r in enumerate(self.rows):
            for b, s in enumerate(r):
                if s:
                    lines.append(f"[{a + 1},{b + 1}] {s}")
        return "\n".join(lines) if lines else "0"


# Bernoulli numbers --------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(N: int) -> Fraction:
    """Bernoulli number with B_1 = -1/2."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if N == 0:
        return Fraction(1)
    # sum_{k<=N} binom(N+1, k) B_k = 0
    total = sum(comb(N + 1, k) * bernoulli(k) for k in range(N))
    return Fraction(-total, N + 1)


def phi_coefficient(N: int) -> Fraction:
    """(-1)^N B_N / N!, the weight of C^N in the symmetric-ordering matrix."""
    return (-1) ** N * bernoulli(N) / factorial(N)


def bernoulli_identity_check(l: int) -> Report:
    if l < 1:
        raise ValueError("l must be >= 1")
    lhs = sum((bernoulli(2 * s) / factorial(2 * s) * bernoulli(2 * l - 2 * s) / factorial(2 * l - 2 * s)
               for s in range(1, l + 1)), Fraction(0))
    rhs = -bernoulli(2 * l) / factorial(2 * l - 1) + (Fraction(1, 4) if l == 1 else 0)
    ok = lhs == rhs
    rec = {"l": l, "lhs": lhs, "rhs": rhs}
    return Report("bernoulli-identity", ok, rec, [] if ok else [rec])


# the C matrix and phi ----------------------------------------------------

def c_matrix(L: LieAlgebra, D: int) -> SeriesMatrix:
    """C^i_j = C^i_{jk} d^k as a matrix of linear series."""
    n = L.n
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            terms = {unit(n, k): L.c(j + 1, k + 1, i + 1) for k in range(n)}
            rows[i][j] = TruncatedSeries(n, D, terms)
    return SeriesMatrix(rows)


def matrix_powers(M: SeriesMatrix, top: int) -> List[SeriesMatrix]:
    out = [SeriesMatrix.identity(M.rows[0][0].n, M.cutoff)]
    for _ in range(top):
        out.append(out[-1] @ M)
    return out


def phi_symmetric(L: LieAlgebra, D: int) -> SeriesMatrix:
    """phi = sum_N (-1)^N B_N/N! C^N, N = 0..D."""
    C = c_matrix(L, D)
    acc = SeriesMatrix.identity(L.n, D)
    power = SeriesMatrix.identity(L.n, D)
    for N in range(1, D + 1):
        power = power @ C
        w = phi_coefficient(N)
        if w:
            acc = acc + power.scale(w)
    return acc


def phi_identity(L: LieAlgebra, D: int) -> SeriesMatrix:
    return SeriesMatrix.identity(L.n, D)


def phi_equation_residual(L: LieAlgebra, phi: SeriesMatrix, i: int, j: int, k: int) -> TruncatedSeries:
    """phi^l_j d_l(phi^k_i) - phi^l_i d_l(phi^k_j) - C^s_ij phi^k_s, 0-based, window D-1."""
    D = phi.cutoff
    n = L.n
    W = D - 1
    acc = TruncatedSeries.zero(n, W)
    for l in range(n):
        acc = acc + phi[l, j].truncate(W) * phi[k, i].diff(l)
        acc = acc - phi[l, i].truncate(W) * phi[k, j].diff(l)
    for s in range(n):
        c = L.c(i + 1, j + 1, s + 1)
        if c:
            acc = acc - c * phi[k, s].truncate(W)
    return acc


def verify_phi_equation(L: LieAlgebra, phi: SeriesMatrix) -> Report:
    if phi.cutoff < 1:
        raise SeriesError("phi equation needs cutoff >= 1")
    if phi.n != L.n:
        raise SeriesError("phi matrix size does not match the algebra")
    failures = []
    n = L.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                r = phi_equation_residual(L, phi, i, j, k)
                if r:
                    failures.append({"triple": (i + 1, j + 1, k + 1), "residual": str(r)})
    return Report("phi-equation", not failures,
                  {"algebra": L.name, "cutoff": phi.cutoff, "valid-through": phi.cutoff - 1},
                  failures)

