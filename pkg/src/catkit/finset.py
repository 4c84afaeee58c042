"""Finite sets as canonical index ranges, functions between them, and the
(co)limit constructions used everywhere else: products, disjoint unions,
quotients by generated equivalence relations, and function enumeration.

Elements of a FinSetObj of size n are the integers 0..n-1; labels are
display metadata only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BoundsError, CompositionError, check_candidates


@dataclass(frozen=True)
class FinSetObj:
    size: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be nonnegative")
        if self.labels is not None:
            if len(self.labels) != self.size or len(set(self.labels)) != self.size:
                raise ValueError("labels must be distinct and count exactly size")

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)


@dataclass(frozen=True)
class FinFn:
    dom: FinSetObj
    cod: FinSetObj
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.dom.size:
            raise ValueError(f"table length {len(self.table)} != |dom| {self.dom.size}")
        for x in self.table:
            if not 0 <= x < self.cod.size:
                raise BoundsError(f"table entry {x} outside codomain of size {self.cod.size}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective()

    def inverse(self) -> "FinFn":
        if not self.is_bijective():
            raise ValueError("function is not a bijection")
        inv = [0] * self.cod.size
        for i, j in enumerate(self.table):
            inv[j] = i
        return FinFn(self.cod, self.dom, tuple(inv))


def fn(dom: int | FinSetObj, cod: int | FinSetObj, table: Sequence[int]) -> FinFn:
    """Convenience constructor accepting bare sizes."""
    d = dom if isinstance(dom, FinSetObj) else FinSetObj(dom)
    c = cod if isinstance(cod, FinSetObj) else FinSetObj(cod)
    return FinFn(d, c, tuple(table))


def identity_fn(a: FinSetObj) -> FinFn:
    return FinFn(a, a, tuple(range(a.size)))


def compose_fn(g: FinFn, f: FinFn) -> FinFn:
    """g after f."""
    if f.cod != g.dom:
        raise CompositionError(f"cannot compose: cod(f)={f.cod.size} vs dom(g)={g.dom.size}")
    gt = g.table
    return FinFn(f.dom, g.cod, tuple(gt[x] for x in f.table))


def product(a: FinSetObj, b: FinSetObj) -> tuple[FinSetObj, FinFn, FinFn]:
    """Cartesian product with row-major pairing (i, j) -> i*|b| + j."""
    p = FinSetObj(a.size * b.size)
    nb = b.size
    p1 = FinFn(p, a, tuple(k // nb for k in range(p.size)) if nb else ())
    p2 = FinFn(p, b, tuple(k % nb for k in range(p.size)) if nb else ())
    return p, p1, p2


def pair_index(i: int, j: int, nb: int) -> int:
    return i * nb + j


def disjoint_union(sizes: Sequence[int]) -> tuple[FinSetObj, list[int]]:
    """Sum of finite sets; returns the total and the offset of each summand."""
    offsets = list(itertools.accumulate([0, *sizes[:-1]])) if sizes else []
    return FinSetObj(sum(sizes)), offsets


class Partition:
    """Union-find forest over 0..n-1; blocks are represented by their least
    member index."""

    def __init__(self, carrier: FinSetObj | int):
        self.carrier = carrier if isinstance(carrier, FinSetObj) else FinSetObj(carrier)
        self.parent = list(range(self.carrier.size))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # least index wins so roots are canonical representatives
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(self.carrier.size):
            out.setdefault(self.find(x), []).append(x)
        return [out[r] for r in sorted(out)]

    def quotient_map(self) -> FinFn:
        roots = sorted({self.find(x) for x in range(self.carrier.size)})
        index = {r: k for k, r in enumerate(roots)}
        return FinFn(self.carrier, FinSetObj(len(roots)),
                     tuple(index[self.find(x)] for x in range(self.carrier.size)))


def coequalize(pairs: Iterable[tuple[int, int]], carrier: FinSetObj | int) -> tuple[Partition, FinFn]:
    """Quotient of `carrier` by the equivalence relation generated by `pairs`.

    Codomain indices are dense and ordered by the least member of each block.
    """
    part = Partition(carrier)
    n = part.carrier.size
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise BoundsError(f"pair ({i}, {j}) out of range for carrier of size {n}")
        part.union(i, j)
    return part, part.quotient_map()


def enumerate_fns(dom: FinSetObj | int, cod: FinSetObj | int) -> list[FinFn]:
    """All functions dom -> cod in lexicographic table order."""
    d = dom if isinstance(dom, FinSetObj) else FinSetObj(dom)
    c = cod if isinstance(cod, FinSetObj) else FinSetObj(cod)
    check_candidates(c.size ** d.size, "function enumeration")
    return [FinFn(d, c, t) for t in itertools.product(range(c.size), repeat=d.size)]


# Row-major encoding of tuples in X^n, used for power sets X^n of lex points
# and for hom-sets (Tn)^m.

def encode_tuple(xs: Sequence[int], base: int) -> int:
    k = 0
    for x in xs:
        k = k * base + x
    return k


def decode_tuple(k: int, base: int, length: int) -> tuple[int, ...]:
    out = [0] * length
    for pos in range(length - 1, -1, -1):
        k, out[pos] = divmod(k, base)
    return tuple(out)


def all_tuples(base: int, length: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(base), repeat=length))
