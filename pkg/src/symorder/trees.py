"""Planar rooted trees with white and black nodes (black nodes are leaves),
descending numerations of the white nodes, enumeration and counting.

Canonical text: a black leaf is ``b``; a white node is ``w(...)`` with its
children in planar order, so a white leaf reads ``w()``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, List, Sequence, Tuple

MAX_NODES = 9


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class PlanarTree:
    white: bool
    children: Tuple["PlanarTree", ...] = ()

    def __post_init__(self):
        if not self.white and self.children:
            raise TreeError("black nodes must be leaves")

    @property
    def w(self) -> int:
        return self.counts[0]

    @property
    def b(self) -> int:
        return self.counts[1]

    @property
    def counts(self) -> Tuple[int, int]:
        if not self.white:
            return (0, 1)
        w, b = 1, 0
        for c in self.children:
            cw, cb = c.counts
            w += cw
            b += cb
        return (w, b)

    def is_white_leaf(self) -> bool:
        return self.white and not self.children

    def canonical(self) -> str:
        if not self.white:
            return "b"
        return "w(" + ",".join(c.canonical() for c in self.children) + ")"

    __str__ = canonical

    def white_nodes(self) -> List["PlanarTree"]:
        """White nodes in preorder (the order numerations refer to)."""
        out = []
        if self.white:
            out.append(self)
            for c in self.children:
                out.extend(c.white_nodes())
        return out

    def numerations(self) -> List[Tuple[int, ...]]:
        """Every descending numeration, as labels of the white nodes in preorder."""
        return _numerations(self, tuple(range(1, self.w + 1)))

    def numeration_count(self) -> int:
        """w! / prod(white subtree sizes), the hook-length count."""
        if self.w == 0:
            return 1
        den = 1
        for v in self.white_nodes():
            den *= v.w
        return factorial(self.w) // den

    def ascii(self, labels: Sequence[int] | None = None) -> str:
        it = iter(labels) if labels is not None else None
        lines: List[str] = []

        def name(t):
            if not t.white:
                return "*"
            return f"o{next(it)}" if it is not None else "o"

        def walk(t, prefix, last, root):
            if root:
                lines.append(name(t))
                child_prefix = ""
            else:
                lines.append(prefix + ("\\-- " if last else "+-- ") + name(t))
                child_prefix = prefix + ("    " if last else "|   ")
            for i, c in enumerate(t.children):
                walk(c, child_prefix, i == len(t.children) - 1, False)

        walk(self, "", True, True)
        return "\n".join(lines)


BLACK = PlanarTree(False)
WHITE_LEAF = PlanarTree(True)


def parse_tree(text: str) -> PlanarTree:
    """Inverse of ``canonical``."""
    pos = 0

    def node():
        nonlocal pos
        if text.startswith("b", pos):
            pos += 1
            return BLACK
        if not text.startswith("w(", pos):
            raise TreeError(f"expected 'b' or 'w(' at position {pos}")
        pos += 2
        kids = []
        if text.startswith(")", pos):
            pos += 1
            return PlanarTree(True, ())
        while True:
            kids.append(node())
            if text.startswith(",", pos):
                pos += 1
            elif text.startswith(")", pos):
                pos += 1
                return PlanarTree(True, tuple(kids))
            else:
                raise TreeError(f"expected ',' or ')' at position {pos}")

    t = node()
    if pos != len(text):
        raise TreeError(f"trailing input at position {pos}")
    return t


def _numerations(t: PlanarTree, labels: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    if not t.white:
        return [()]
    root, rest = labels[0], labels[1:]
    sizes = [c.w for c in t.children]
    out = []
    for split in _splits(rest, sizes):
        partial = [(root,)]
        for c, sub in zip(t.children, split):
            opts = _numerations(c, sub)
            partial = [p + o for p in partial for o in opts]
        out.extend(partial)
    return out


def _splits(labels: Tuple[int, ...], sizes: Sequence[int]):
    """Ordered distributions of ``labels`` into consecutive blocks of the given sizes."""
    if not sizes:
        yield ()
        return
    k = sizes[0]
    for chosen in combinations(labels, k):
        remaining = tuple(x for x in labels if x not in chosen)
        for rest in _splits(remaining, sizes[1:]):
            yield (chosen,) + rest


@dataclass(frozen=True)
class OrderedTree:
    tree: PlanarTree
    labels: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.labels) != list(range(1, self.tree.w + 1)):
            raise TreeError("labels must be a permutation of 1..w")
        if self.labels not in set(self.tree.numerations()):
            raise TreeError("numeration is not descending")

    @property
    def w(self) -> int:
        return self.tree.w

    @property
    def b(self) -> int:
        return self.tree.b

    def __str__(self):
        return f"{self.tree.canonical()}[{','.join(map(str, self.labels))}]"


def _check_size(w: int, b: int):
    if w < 0 or b < 0 or w + b < 1:
        raise TreeError("need w, b >= 0 and w + b >= 1")
    if w + b > MAX_NODES:
        raise TreeError(f"w + b must be <= {MAX_NODES}")


@lru_cache(maxsize=None)
def _forests(w: int, b: int) -> Tuple[Tuple[PlanarTree, ...], ...]:
    """Ordered sequences of child branches with w white and b black nodes in total."""
    if w == 0 and b == 0:
        return ((),)
    out = []
    # first branch takes (w1, b1), the rest of the forest the remainder
    for w1 in range(w + 1):
        for b1 in range(b + 1):
            if w1 + b1 == 0:
                continue
            firsts = _trees(w1, b1)
            if not firsts:
                continue
            for rest in _forests(w - w1, b - b1):
                for t in firsts:
                    out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _trees(w: int, b: int) -> Tuple[PlanarTree, ...]:
    if w == 0:
        return (BLACK,) if b == 1 else ()
    return tuple(PlanarTree(True, kids) for kids in _forests(w - 1, b))


def enumerate_trees(w: int, b: int) -> List[PlanarTree]:
    _check_size(w, b)
    return list(_trees(w, b))


def enumerate_ordered(w: int, b: int) -> List[OrderedTree]:
    _check_size(w, b)
    out = []
    for t in _trees(w, b):
        for lab in t.numerations():
            out.append(OrderedTree.__new__(OrderedTree))
            object.__setattr__(out[-1], "tree", t)
            object.__setattr__(out[-1], "labels", lab)
    return out


@lru_cache(maxsize=None)
def _compositions(w: int, b: int, parts: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """Ordered splittings of (w, b) into ``parts`` nonzero bidegrees."""
    if parts == 0:
        return ((),) if (w, b) == (0, 0) else ()
    out = []
    for w1 in range(w + 1):
        for b1 in range(b + 1):
            if w1 + b1 == 0:
                continue
            for rest in _compositions(w - w1, b - b1, parts - 1):
                out.append(((w1, b1),) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def count_ordered(w: int, b: int) -> int:
    """|T^ord_{w,b}| from the branch recursion

    s_{w+1,b} = sum_k sum_{(w_i,b_i)} w!/(w_1!...w_k!) s_{w_1,b_1}...s_{w_k,b_k},

    with k over all branch counts (0 included) and s_{0,1} = 1, s_{0,b} = 0 otherwise.
    """
    if w < 0 or b < 0:
        return 0
    if w == 0:
        return 1 if b == 1 else 0
    W = w - 1
    total = 0
    for k in range(W + b + 1):
        for comp in _compositions(W, b, k):
            term = factorial(W)
            for wi, bi in comp:
                term //= factorial(wi)
            for wi, bi in comp:
                term *= count_ordered(wi, bi)
                if not term:
                    break
            total += term
    return total


def double_factorial(m: int) -> int:
    """m!! with (-1)!! = 0!! = 1."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def closed_form_s(w: int) -> int:
    """(2w-3)!!, the count of purely white ordered trees."""
    return double_factorial(2 * w - 3)


def contributing_filter(t: PlanarTree) -> bool:
    """False iff some white node has a white leaf as its leftmost child."""
    if not t.white:
        return True
    if t.children and t.children[0].is_white_leaf():
        return False
    return all(contributing_filter(c) for c in t.children)


def count_table(max_total: int) -> List[Tuple[int, int, int, int, int]]:
    """Rows (w, b, planar trees, ordered trees, contributing planar trees)."""
    rows = []
    for P in range(1, max_total + 1):
        for w in range(P, -1, -1):
            b = P - w
            trees = enumerate_trees(w, b)
            rows.append((w, b, len(trees), count_ordered(w, b),
                         sum(1 for t in trees if contributing_filter(t))))
    return rows


def format_count_table(rows) -> str:
    head = ("w", "b", "planar", "ordered", "contributing")
    cells = [head] + [tuple(str(x) for x in r) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(head))]
    return "\n".join("  ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in cells)
