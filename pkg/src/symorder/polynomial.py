"""Sparse exact polynomials over the rationals.

Monomials are exponent tuples; coefficients are ``Fraction``. The helpers
at the top operate on raw ``{exponents: coefficient}`` dicts and are shared
by the truncated series, Weyl operators and PBW elements.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, Fraction]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


def add_terms(a: Mapping, b: Mapping, scale=1) -> Terms:
    out = dict(a)
    for mono, c in b.items():
        v = out.get(mono, 0) + scale * c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def scale_terms(a: Mapping, c) -> Terms:
    c = as_fraction(c)
    if not c:
        return {}
    return {m: c * v for m, v in a.items()}


def mul_terms(a: Mapping, b: Mapping, cutoff: int | None = None) -> Terms:
    out: Terms = {}
    if cutoff is None:
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
    else:
        bb = sorted(((sum(m), m, c) for m, c in b.items()), key=lambda t: t[0])
        for ma, ca in a.items():
            da = sum(ma)
            for db, mb, cb in bb:
                if da + db > cutoff:
                    break
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def diff_terms(a: Mapping, slot: int) -> Terms:
    out: Terms = {}
    for m, c in a.items():
        e = m[slot]
        if e:
            mm = m[:slot] + (e - 1,) + m[slot + 1:]
            out[mm] = c * e
    return out


def truncate_terms(a: Mapping, degree: int) -> Terms:
    return {m: c for m, c in a.items() if sum(m) <= degree}


def grlex_key(mono: Monomial):
    # ascending total degree, then d1 > d2 > ... within a degree
    return (sum(mono), tuple(-e for e in mono))


def format_monomial(mono: Monomial, names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(mono, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_coefficient_term(c: Fraction, body: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if not body:
        text = str(mag)
    elif mag == 1:
        text = body
    else:
        text = f"{mag}*{body}"
    if first:
        return f"-{text}" if sign == "-" else text
    return f" {sign} {text}"


def format_terms(terms: Mapping, names: Sequence[str], descending: bool = False,
                 formatter: Callable[[Monomial], str] | None = None,
                 key=grlex_key) -> str:
    if not terms:
        return "0"
    fmt = formatter or (lambda m: format_monomial(m, names))
    order = sorted(terms, key=key)
    if descending:
        # descending total degree, same lex order inside a degree
        order = sorted(terms, key=lambda m: (-key(m)[0],) + tuple(key(m)[1:]))
    out = []
    for i, m in enumerate(order):
        out.append(format_coefficient_term(terms[m], fmt(m), i == 0))
    return "".join(out)


def unit(n: int, i: int) -> Monomial:
    """Exponent vector of the i-th variable (0-based)."""
    return tuple(1 if j == i else 0 for j in range(n))


def monomials_of_degree(n: int, d: int) -> Iterable[Monomial]:
    """All exponent vectors of length ``n`` and total degree ``d`` (grlex order)."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomials_up_to(n: int, d: int) -> Iterable[Monomial]:
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


def multinomial_factorial(mono: Monomial) -> int:
    out = 1
    for e in mono:
        out *= factorial(e)
    return out


class Polynomial:
    """Finite commutative polynomial in ``n`` variables with exact coefficients.

    ``names`` is a rendering hint only; arithmetic ignores it.
    """

    __slots__ = ("n", "terms", "names", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None, names: Sequence[str] | None = None):
        self.n = n
        self.terms: Terms = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"monomial {m} does not have {n} exponents")
            c = as_fraction(c)
            if c:
                self.terms[m] = self.terms.get(m, 0) + c
        self.terms = {m: c for m, c in self.terms.items() if c}
        self.names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(n))
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, n: int, names=None) -> "Polynomial":
        return cls(n, {}, names)

    @classmethod
    def constant(cls, n: int, c, names=None) -> "Polynomial":
        return cls(n, {(0,) * n: c}, names)

    @classmethod
    def variable(cls, n: int, i: int, names=None) -> "Polynomial":
        """The 0-based ``i``-th variable."""
        return cls(n, {unit(n, i): 1}, names)

    @classmethod
    def monomial(cls, exponents: Sequence[int], c=1, names=None) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): c}, names)

    def _new(self, terms: Mapping) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.n = self.n
        p.terms = {m: c for m, c in terms.items() if c}
        p.names = self.names
        p._hash = None
        return p

    def _check(self, other: "Polynomial"):
        if other.n != self.n:
            raise ValueError(f"ambient mismatch: {self.n} vs {other.n} variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.n, as_fraction(other), self.names)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return self._new(add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._new(add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return self._new(mul_terms(self.terms, other.terms))
        return self._new(scale_terms(self.terms, other))

    def __rmul__(self, other):
        return self._new(scale_terms(self.terms, other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = Polynomial.constant(self.n, 1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_truncated(self, other: "Polynomial", degree: int) -> "Polynomial":
        self._check(other)
        return self._new(mul_terms(self.terms, other.terms, degree))

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative in the 0-based variable ``i``."""
        return self._new(diff_terms(self.terms, i))

    def diff_multi(self, exponents: Monomial) -> "Polynomial":
        """Apply the constant-coefficient operator with the given multi-order."""
        out = {}
        for m, c in self.terms.items():
            coef = c
            mm = []
            for e, k in zip(m, exponents):
                if k > e:
                    coef = 0
                    break
                for j in range(k):
                    coef *= e - j
                mm.append(e - k)
            if coef:
                mm = tuple(mm)
                out[mm] = out.get(mm, 0) + coef
        return self._new(out)

    def truncate(self, degree: int) -> "Polynomial":
        return self._new(truncate_terms(self.terms, degree))

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return self._new({m: c for m, c in self.terms.items() if sum(m) == degree})

    def part(self, predicate) -> "Polynomial":
        return self._new({m: c for m, c in self.terms.items() if predicate(m)})

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def substitute(self, values: Sequence["Polynomial"], degree: int | None = None) -> "Polynomial":
        """Compose with ``values`` (one polynomial per variable)."""
        if len(values) != self.n:
            raise ValueError("need one value per variable")
        target = values[0].n if values else 0
        names = values[0].names if values else ()
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                if e == 0:
                    powers[key] = {(0,) * target: Fraction(1)}
                else:
                    powers[key] = mul_terms(power(i, e - 1), values[i].terms, degree)
            return powers[key]

        out: Terms = {}
        for m, c in self.terms.items():
            acc = {(0,) * target: c}
            for i, e in enumerate(m):
                if e:
                    acc = mul_terms(acc, power(i, e), degree)
            out = add_terms(out, acc)
        return Polynomial(target, out, names)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= as_fraction(x) ** e
            total += v
        return total

    def with_names(self, names: Sequence[str]) -> "Polynomial":
        p = self._new(self.terms)
        p.names = tuple(names)
        return p

    # comparison / rendering -------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_terms(self.terms, self.names, descending=True)

    def __repr__(self):
        return f"Polynomial({self})"
