"""Finite-dimensional Lie algebras given by exact structure constants.

Indices are 1-based in every public function: ``L.c(i, j, k)`` is the
coefficient of x_k in [x_i, x_j]. Only entries with i < j are stored;
antisymmetry is structural.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

try:  # pragma: no cover - depends on interpreter version
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .report import Report

MAX_DIM = 8

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class AlgebraError(ValueError):
    """Malformed algebra data (parse errors, bad indices, duplicates)."""


class JacobiError(AlgebraError):
    """Structure constants violate the Jacobi identity."""

    def __init__(self, quadruple, residual):
        self.quadruple = quadruple
        self.residual = residual
        super().__init__(f"Jacobi identity fails at (i,j,k,m)={quadruple}: residual {residual}")


def parse_rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise AlgebraError(f"coefficient must be a rational string, got {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise AlgebraError(f"malformed rational {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise AlgebraError(f"zero denominator in {text!r}")
    return Fraction(num, den)


@dataclass(frozen=True)
class LieAlgebra:
    n: int
    entries: Tuple[Tuple[Tuple[int, int, int], Fraction], ...] = ()
    name: str = "lie"

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIM:
            raise AlgebraError(f"dimension must be in 1..{MAX_DIM}, got {self.n}")
        seen = set()
        clean = []
        for (i, j, k), c in self.entries:
            for idx in (i, j, k):
                if not 1 <= idx <= self.n:
                    raise AlgebraError(f"index {idx} out of range 1..{self.n}")
            if not i < j:
                raise AlgebraError(f"stored entries need i < j, got ({i},{j},{k})")
            if (i, j, k) in seen:
                raise AlgebraError(f"duplicate bracket entry ({i},{j},{k})")
            seen.add((i, j, k))
            c = Fraction(c)
            if c:
                clean.append(((i, j, k), c))
        object.__setattr__(self, "entries", tuple(sorted(clean)))

    @classmethod
    def from_brackets(cls, n: int, brackets: Iterable[Tuple[int, int, int, object]],
                      name: str = "lie", check: bool = True) -> "LieAlgebra":
        """Build from (i, j, k, c) records meaning C^k_{ij} = c.

        Records with i > j are folded onto (j, i, k, -c); i == j is rejected.
        """
        table: Dict[Tuple[int, int, int], Fraction] = {}
        for i, j, k, c in brackets:
            c = parse_rational(c) if isinstance(c, str) else Fraction(c)
            for idx in (i, j, k):
                if not isinstance(idx, int) or not 1 <= idx <= n:
                    raise AlgebraError(f"index {idx!r} out of range 1..{n}")
            if i == j:
                raise AlgebraError(f"bracket ({i},{j},{k}) has i == j")
            key, val = ((i, j, k), c) if i < j else ((j, i, k), -c)
            if key in table:
                raise AlgebraError(f"duplicate bracket entry {key}")
            table[key] = val
        alg = cls(n, tuple(table.items()), name)
        if check:
            rep = verify_jacobi(alg)
            if not rep.passed:
                q = rep.failures[0]
                raise JacobiError(q["quadruple"], q["residual"])
        return alg

    @cached_property
    def _lookup(self) -> Dict[Tuple[int, int, int], Fraction]:
        return dict(self.entries)

    def c(self, i: int, j: int, k: int) -> Fraction:
        """C^k_{ij}, 1-based."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self._lookup.get((i, j, k), Fraction(0))
        return -self._lookup.get((j, i, k), Fraction(0))

    @cached_property
    def tensor(self) -> Tuple[Tuple[Tuple[Fraction, ...], ...], ...]:
        """Dense 0-based table ``tensor[i][j][k] = C^{k+1}_{i+1, j+1}``."""
        n = self.n
        return tuple(tuple(tuple(self.c(i + 1, j + 1, k + 1) for k in range(n))
                           for j in range(n)) for i in range(n))

    @cached_property
    def nonzero(self) -> Tuple[Tuple[int, int, int, Fraction], ...]:
        """All nonzero (i, j, k, C^k_ij) with 0-based indices, both orders of i, j."""
        out = []
        for (i, j, k), c in self.entries:
            out.append((i - 1, j - 1, k - 1, c))
            out.append((j - 1, i - 1, k - 1, -c))
        return tuple(sorted(out))

    @property
    def is_abelian(self) -> bool:
        return not self.entries

    def bracket(self, u: Sequence, v: Sequence) -> list:
        """[u, v] for coordinate vectors (entries may be any ring elements)."""
        out = [0] * self.n
        for i, j, k, c in self.nonzero:
            if _nz(u[i]) and _nz(v[j]):
                out[k] = out[k] + c * (u[i] * v[j])
        return out

    def __str__(self):
        return self.name


def _nz(x) -> bool:
    return bool(x)


def jacobi_residual(L: LieAlgebra, i: int, j: int, k: int, m: int) -> Fraction:
    c = L.c
    total = Fraction(0)
    for s in range(1, L.n + 1):
        total += c(i, j, s) * c(s, k, m) + c(j, k, s) * c(s, i, m) + c(k, i, s) * c(s, j, m)
    return total


def verify_jacobi(L: LieAlgebra) -> Report:
    failures = []
    rng = range(1, L.n + 1)
    for i in rng:
        for j in rng:
            for k in rng:
                for m in rng:
                    r = jacobi_residual(L, i, j, k, m)
                    if r:
                        failures.append({"quadruple": (i, j, k, m), "residual": r})
    return Report("jacobi", not failures, {"algebra": L.name, "violations": len(failures)}, failures)


# builtin families -----------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(n, [], name=f"abelian({n})")


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, [(1, 2, 3, 1)], name="heisenberg")


def su2() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)], name="su2")


def kappa(n: int, a: Sequence | None = None) -> LieAlgebra:
    """[x_i, x_j] = a_i x_j - a_j x_i (imaginary unit absorbed)."""
    if a is None:
        a = [1] + [0] * (n - 1)
    a = [Fraction(x) for x in a]
    if len(a) != n:
        raise AlgebraError(f"kappa needs an a-vector of length {n}")
    rows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            coeffs: Dict[int, Fraction] = {}
            coeffs[j] = coeffs.get(j, 0) + a[i - 1]
            coeffs[i] = coeffs.get(i, 0) - a[j - 1]
            rows.extend((i, j, k, c) for k, c in coeffs.items() if c)
    label = ",".join(str(x) for x in a)
    return LieAlgebra.from_brackets(n, rows, name=f"kappa({n};{label})")


BUILTIN_FAMILIES = ("abelian", "heisenberg", "su2", "kappa")


def builtin_algebra(family: str, *params) -> LieAlgebra:
    """Named algebra: ``abelian(n)``, ``heisenberg``, ``su2``, ``kappa(n, a)``."""
    if family == "abelian":
        (n,) = params or (3,)
        return abelian(int(n))
    if family == "heisenberg":
        return heisenberg()
    if family == "su2":
        return su2()
    if family == "kappa":
        n = int(params[0]) if params else 3
        a = params[1] if len(params) > 1 else None
        return kappa(n, a)
    raise AlgebraError(f"unknown algebra family {family!r}; known: {', '.join(BUILTIN_FAMILIES)}")


def parse_algebra_spec(spec: str) -> LieAlgebra:
    """``su2``, ``heisenberg``, ``abelian:4``, ``kappa:3:1,0,0`` or ``kappa:3``."""
    parts = spec.split(":")
    family, rest = parts[0], parts[1:]
    if family == "abelian":
        return abelian(int(rest[0]) if rest else 3)
    if family == "kappa":
        n = int(rest[0]) if rest else 3
        a = [parse_rational(x) for x in rest[1].split(",")] if len(rest) > 1 else None
        return kappa(n, a)
    if rest:
        raise AlgebraError(f"{family} takes no parameters")
    return builtin_algebra(family)


def default_builtins() -> List[LieAlgebra]:
    """The four algebras every suite sweeps over."""
    return [abelian(3), heisenberg(), su2(), kappa(3, (1, 0, 0))]


# file format ---------------------------------------------------------------

_ALLOWED_TOP = {"name", "dim", "bracket"}
_ALLOWED_BRACKET = {"i", "j", "k", "c"}


def load_algebra(text: str) -> LieAlgebra:
    """Parse an algebra document (TOML: ``name``, ``dim``, ``[[bracket]]`` tables)."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise AlgebraError(f"parse error: {exc}") from exc
    unknown = set(doc) - _ALLOWED_TOP
    if unknown:
        raise AlgebraError(f"unknown keys: {', '.join(sorted(unknown))}")
    if "dim" not in doc:
        raise AlgebraError("missing 'dim'")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise AlgebraError("'dim' must be an integer")
    if not 1 <= dim <= MAX_DIM:
        raise AlgebraError(f"dimension must be in 1..{MAX_DIM}, got {dim}")
    name = doc.get("name", "lie")
    if not isinstance(name, str):
        raise AlgebraError("'name' must be a string")
    records = doc.get("bracket", [])
    if not isinstance(records, list):
        raise AlgebraError("'bracket' must be an array of tables")
    rows = []
    for rec in records:
        if not isinstance(rec, dict):
            raise AlgebraError("each bracket must be a table")
        bad = set(rec) - _ALLOWED_BRACKET
        missing = _ALLOWED_BRACKET - set(rec)
        if bad:
            raise AlgebraError(f"unknown bracket keys: {', '.join(sorted(bad))}")
        if missing:
            raise AlgebraError(f"bracket missing keys: {', '.join(sorted(missing))}")
        rows.append((rec["i"], rec["j"], rec["k"], parse_rational(rec["c"])))
    return LieAlgebra.from_brackets(dim, rows, name=name)


def dump_algebra(L: LieAlgebra) -> str:
    lines = [f'name = "{L.name}"', f"dim = {L.n}"]
    for (i, j, k), c in L.entries:
        lines += ["", "[[bracket]]", f"i = {i}", f"j = {j}", f"k = {k}", f'c = "{c}"']
    return "\n".join(lines) + "\n"


serialize = dump_algebra


def read_algebra_file(path) -> LieAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return load_algebra(fh.read())
