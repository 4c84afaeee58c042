"""Finite categories, functors, natural transformations and lex bases.

Two kinds of lex base serve as extents:

* finite lattices (exact regime): every finite finitely-complete category
  is a preorder, so nothing is lost by restricting to lattices;
* ``TruncArityBase(N)``: the opposite of finite sets {0..N}, standing in
  for A_f^op with A = Set. Only the limit cones that stay inside the
  arity bound are recorded and checked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .errors import PreconditionError, check_candidates
from .finset import decode_tuple, encode_tuple
from .search import Problem


# ---------------------------------------------------------------------------
# Categories


@dataclass(eq=False)
class FinCategory:
    """Objects 0..n_obj-1, morphisms 0..len(dom)-1.

    ``comp[(g, f)]`` is g after f, defined exactly when cod(f) == dom(g).
    """

    n_obj: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    ident: tuple[int, ...]
    comp: dict[tuple[int, int], int]
    obj_labels: tuple[str, ...] | None = None
    mor_labels: tuple[str, ...] | None = None

    @classmethod
    def build(cls, n_obj: int, arrows: Sequence[tuple[int, int]], ident: Sequence[int],
              compose: Callable[[int, int], int], obj_labels=None, mor_labels=None) -> "FinCategory":
        dom = tuple(a for a, _ in arrows)
        cod = tuple(b for _, b in arrows)
        by_dom: dict[int, list[int]] = {}
        for m, d in enumerate(dom):
            by_dom.setdefault(d, []).append(m)
        comp = {}
        for f in range(len(arrows)):
            for g in by_dom.get(cod[f], ()):
                comp[(g, f)] = compose(g, f)
        return cls(n_obj, dom, cod, tuple(ident), comp,
                   tuple(obj_labels) if obj_labels else None,
                   tuple(mor_labels) if mor_labels else None)

    @property
    def n_mor(self) -> int:
        return len(self.dom)

    @cached_property
    def homs(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {
            (i, j): [] for i in range(self.n_obj) for j in range(self.n_obj)}
        for m in range(self.n_mor):
            out[(self.dom[m], self.cod[m])].append(m)
        return out

    @cached_property
    def hom_pos(self) -> tuple[int, ...]:
        """Position of each morphism within its hom-set."""
        pos = [0] * self.n_mor
        for ms in self.homs.values():
            for k, m in enumerate(ms):
                pos[m] = k
        return tuple(pos)

    def hom(self, i: int, j: int) -> list[int]:
        return self.homs[(i, j)]

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def obj_label(self, i: int) -> str:
        return self.obj_labels[i] if self.obj_labels else str(i)

    def mor_label(self, m: int) -> str:
        if self.mor_labels:
            return self.mor_labels[m]
        return f"{m}:{self.obj_label(self.dom[m])}->{self.obj_label(self.cod[m])}"

    def inverse_of(self, m: int) -> int | None:
        a, b = self.dom[m], self.cod[m]
        for n in self.hom(b, a):
            if self.comp[(n, m)] == self.ident[a] and self.comp[(m, n)] == self.ident[b]:
                return n
        return None

    def is_iso(self, m: int) -> bool:
        return self.inverse_of(m) is not None

    def isomorphic(self, a: int, b: int) -> int | None:
        for m in self.hom(a, b):
            if self.is_iso(m):
                return m
        return None


def check_category(c: FinCategory) -> list[str]:
    """Every violated axiom instance; empty iff `c` is a category."""
    report = []
    for a in range(c.n_obj):
        e = c.ident[a]
        if c.dom[e] != a or c.cod[e] != a:
            report.append(f"identity of object {a} is not an endomorphism of {a}")
    for (g, f), h in c.comp.items():
        if c.cod[f] != c.dom[g]:
            report.append(f"composite defined on non-composable pair ({g}, {f})")
        elif c.dom[h] != c.dom[f] or c.cod[h] != c.cod[g]:
            report.append(f"composite {g}o{f} = {h} has wrong boundary")
    for f in range(c.n_mor):
        for g in _out_of(c, c.cod[f]):
            if (g, f) not in c.comp:
                report.append(f"composite of composable pair ({g}, {f}) undefined")
                break
    if report:
        return report
    for f in range(c.n_mor):
        a, b = c.dom[f], c.cod[f]
        if c.comp[(f, c.ident[a])] != f:
            report.append(f"right unit fails at (object {a}, morphism {f})")
        if c.comp[(c.ident[b], f)] != f:
            report.append(f"left unit fails at (object {b}, morphism {f})")
    for f in range(c.n_mor):
        for g in _out_of(c, c.cod[f]):
            gf = c.comp[(g, f)]
            for h in _out_of(c, c.cod[g]):
                if c.comp[(h, gf)] != c.comp[(c.comp[(h, g)], f)]:
                    report.append(f"associativity fails at ({h}, {g}, {f})")
    return report


def _out_of(c: FinCategory, a: int) -> list[int]:
    return [m for b in range(c.n_obj) for m in c.hom(a, b)]


def opposite(c: FinCategory) -> FinCategory:
    return FinCategory(c.n_obj, c.cod, c.dom, c.ident,
                       {(f, g): h for (g, f), h in c.comp.items()}, c.obj_labels, c.mor_labels)


# ---------------------------------------------------------------------------
# Functors and natural transformations


@dataclass(eq=False)
class FunctorData:
    src: FinCategory
    dst: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __eq__(self, other):
        return (isinstance(other, FunctorData) and self.src is other.src and self.dst is other.dst
                and self.obj_map == other.obj_map and self.mor_map == other.mor_map)

    def __hash__(self):
        return hash((id(self.src), id(self.dst), self.obj_map, self.mor_map))

    def key(self) -> tuple:
        return (self.obj_map, self.mor_map)


def identity_functor(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, tuple(range(c.n_obj)), tuple(range(c.n_mor)))


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    if f.dst is not g.src:
        raise PreconditionError("functors are not composable")
    return FunctorData(f.src, g.dst, tuple(g.obj_map[x] for x in f.obj_map),
                       tuple(g.mor_map[m] for m in f.mor_map))


def check_functor(F: FunctorData) -> list[str]:
    C, D = F.src, F.dst
    report = []
    for m in range(C.n_mor):
        fm = F.mor_map[m]
        if D.dom[fm] != F.obj_map[C.dom[m]] or D.cod[fm] != F.obj_map[C.cod[m]]:
            report.append(f"morphism {C.mor_label(m)} sent to {D.mor_label(fm)} with wrong boundary")
    for a in range(C.n_obj):
        if F.mor_map[C.ident[a]] != D.ident[F.obj_map[a]]:
            report.append(f"identity of {C.obj_label(a)} not preserved")
    if report:
        return report
    for (g, f), h in C.comp.items():
        if D.comp[(F.mor_map[g], F.mor_map[f])] != F.mor_map[h]:
            report.append(f"composition not preserved at ({g}, {f})")
    return report


@dataclass(eq=False)
class NatTransData:
    src: FunctorData
    dst: FunctorData
    components: tuple[int, ...]


def check_nat_trans(t: NatTransData) -> list[str]:
    F, G = t.src, t.dst
    C, D = F.src, F.dst
    report = []
    for a in range(C.n_obj):
        c = t.components[a]
        if D.dom[c] != F.obj_map[a] or D.cod[c] != G.obj_map[a]:
            report.append(f"component at {C.obj_label(a)} has wrong boundary")
    if report:
        return report
    for m in range(C.n_mor):
        a, b = C.dom[m], C.cod[m]
        if D.comp[(G.mor_map[m], t.components[a])] != D.comp[(t.components[b], F.mor_map[m])]:
            report.append(f"naturality square fails at {C.mor_label(m)}")
    return report


def nat_trans_problem(F: FunctorData, G: FunctorData, iso: bool = False) -> Problem:
    C, D = F.src, F.dst
    prob = Problem()
    for a in range(C.n_obj):
        cands = D.hom(F.obj_map[a], G.obj_map[a])
        if iso:
            cands = [m for m in cands if D.is_iso(m)]
        prob.var(a, cands)
    for m in range(C.n_mor):
        a, b = C.dom[m], C.cod[m]
        gm, fm = G.mor_map[m], F.mor_map[m]
        prob.require((a, b), lambda x, y, gm=gm, fm=fm: D.comp[(gm, x)] == D.comp[(y, fm)])
    return prob


def enumerate_nat_trans(F: FunctorData, G: FunctorData) -> list[NatTransData]:
    prob = nat_trans_problem(F, G)
    return [NatTransData(F, G, tuple(s[a] for a in range(F.src.n_obj))) for s in prob.solutions()]


def find_natural_iso(F: FunctorData, G: FunctorData) -> NatTransData | None:
    """Search for an invertible natural transformation F => G."""
    if F.src is not G.src or F.dst is not G.dst:
        raise PreconditionError("functors are not parallel")
    s = nat_trans_problem(F, G, iso=True).first()
    if s is None:
        return None
    return NatTransData(F, G, tuple(s[a] for a in range(F.src.n_obj)))


def enumerate_functors(C: FinCategory, D: FinCategory, limit: int | None = None) -> list[FunctorData]:
    """All functors C -> D, in lexicographic order of (object map, morphism map)."""
    prob = Problem()
    for a in range(C.n_obj):
        prob.var(("o", a), range(D.n_obj))
    for m in range(C.n_mor):
        a, b = C.dom[m], C.cod[m]
        prob.var(("m", m), lambda asg, a=a, b=b: D.hom(asg[("o", a)], asg[("o", b)]),
                 valid=lambda v, asg, a=a, b=b: (D.dom[v] == asg.get(("o", a), D.dom[v])
                                                and D.cod[v] == asg.get(("o", b), D.cod[v])))
    for a in range(C.n_obj):
        prob.propagate((("o", a),), ("m", C.ident[a]), lambda x: D.ident[x])
    for m in range(C.n_mor):
        a, b = C.dom[m], C.cod[m]
        prob.require((("o", a), ("o", b), ("m", m)),
                     lambda x, y, v: D.dom[v] == x and D.cod[v] == y)
    for (g, f), h in C.comp.items():
        prob.propagate((("m", g), ("m", f)), ("m", h), lambda u, v: D.comp.get((u, v), -1))
    out = []
    for s in prob.solutions(limit=limit):
        out.append(FunctorData(C, D, tuple(s[("o", a)] for a in range(C.n_obj)),
                               tuple(s[("m", m)] for m in range(C.n_mor))))
    return out


def functor_report(F: FunctorData) -> dict:
    """Fully-faithful / essentially-surjective / bijective-on-objects flags."""
    C, D = F.src, F.dst
    ff = True
    for a in range(C.n_obj):
        for b in range(C.n_obj):
            imgs = [F.mor_map[m] for m in C.hom(a, b)]
            target = D.hom(F.obj_map[a], F.obj_map[b])
            if sorted(imgs) != sorted(target) or len(set(imgs)) != len(imgs):
                ff = False
    image = set(F.obj_map)
    es = all(any(D.isomorphic(x, y) is not None for x in image) for y in range(D.n_obj))
    return {
        "fully_faithful": ff,
        "essentially_surjective": es,
        "bijective_on_objects": sorted(F.obj_map) == list(range(D.n_obj)),
        "injective_on_objects": len(set(F.obj_map)) == len(F.obj_map),
    }


def is_isomorphism(F: FunctorData) -> bool:
    r = functor_report(F)
    return not check_functor(F) and r["fully_faithful"] and r["bijective_on_objects"]


def is_equivalence(F: FunctorData) -> bool:
    r = functor_report(F)
    return not check_functor(F) and r["fully_faithful"] and r["essentially_surjective"]


# ---------------------------------------------------------------------------
# Posets and lattices


@dataclass(eq=False)
class FinPoset:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.names)
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise ValueError("leq must be a square matrix over the elements")

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def check(self) -> list[str]:
        n, le = self.size, self.leq
        report = []
        for i in range(n):
            if not le[i][i]:
                report.append(f"not reflexive at {self.names[i]}")
        for i, j in itertools.product(range(n), repeat=2):
            if i != j and le[i][j] and le[j][i]:
                report.append(f"not antisymmetric at ({self.names[i]}, {self.names[j]})")
        for i, j, k in itertools.product(range(n), repeat=3):
            if le[i][j] and le[j][k] and not le[i][k]:
                report.append(f"not transitive at ({self.names[i]}, {self.names[j]}, {self.names[k]})")
        return report

    def meet(self, a: int, b: int) -> int | None:
        lower = [c for c in range(self.size) if self.leq[c][a] and self.leq[c][b]]
        for c in lower:
            if all(self.leq[d][c] for d in lower):
                return c
        return None

    def top(self) -> int | None:
        for c in range(self.size):
            if all(self.leq[d][c] for d in range(self.size)):
                return c
        return None


class FinLattice(FinPoset):
    """A finite poset with a top and all binary meets (hence a lattice)."""

    def check(self) -> list[str]:
        report = super().check()
        if report:
            return report
        if self.top() is None:
            report.append("no top element")
        for a, b in itertools.combinations(range(self.size), 2):
            if self.meet(a, b) is None:
                report.append(f"no meet of ({self.names[a]}, {self.names[b]})")
        return report

    def __post_init__(self):
        super().__post_init__()
        problems = self.check()
        if problems:
            raise ValueError("not a finite lattice: " + "; ".join(problems))

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.meet(a, b) for b in range(self.size)) for a in range(self.size))

    @cached_property
    def top_element(self) -> int:
        return self.top()

    def filters(self) -> list[frozenset[int]]:
        """Upward-closed, meet-closed, top-containing subsets (lexicographic by
        membership bitmask)."""
        out = []
        n = self.size
        for bits in itertools.product((0, 1), repeat=n):
            s = {i for i in range(n) if bits[i]}
            if self.top_element not in s:
                continue
            if any(self.leq[a][b] and b not in s for a in s for b in range(n)):
                continue
            if any(self.meet_table[a][b] not in s for a in s for b in s):
                continue
            out.append(frozenset(s))
        return out


def poset_from_relation(names: Sequence[str], pairs: Sequence[tuple[str, str]], cls=FinPoset):
    """Reflexive-transitive closure of a covering relation given by name pairs."""
    n = len(names)
    idx = {nm: i for i, nm in enumerate(names)}
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        le[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    return cls(tuple(names), tuple(tuple(r) for r in le))


def chain(n: int) -> FinLattice:
    names = [str(i) for i in range(n)]
    return poset_from_relation(names, [(names[i], names[i + 1]) for i in range(n - 1)], FinLattice)


def diamond() -> FinLattice:
    return poset_from_relation(["bot", "a", "b", "top"],
                               [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")], FinLattice)


def antichain_with_top(n: int) -> FinPoset:
    names = [f"a{i}" for i in range(n)] + ["top"]
    return poset_from_relation(names, [(f"a{i}", "top") for i in range(n)])


def lattice_to_category(p: FinPoset) -> FinCategory:
    """One morphism i -> j iff i <= j; composition is forced."""
    arrows = [(i, j) for i in range(p.size) for j in range(p.size) if p.leq[i][j]]
    index = {a: m for m, a in enumerate(arrows)}
    ident = [index[(i, i)] for i in range(p.size)]
    return FinCategory.build(
        p.size, arrows, ident,
        lambda g, f: index[(arrows[f][0], arrows[g][1])],
        obj_labels=p.names,
        mor_labels=[f"{p.names[i]}<={p.names[j]}" for i, j in arrows])


# ---------------------------------------------------------------------------
# The truncated base


@dataclass(eq=False)
class TruncArityBase:
    """Objects 0..N; hom(n, m) = functions m -> n (the opposite of finite
    sets), morphisms stored as (n, m, table) with table of length m."""

    max_arity: int

    @cached_property
    def arrows(self) -> list[tuple[int, int, tuple[int, ...]]]:
        N = self.max_arity
        out = []
        for n in range(N + 1):
            for m in range(N + 1):
                for t in itertools.product(range(n), repeat=m):
                    out.append((n, m, t))
        return out

    @cached_property
    def index(self) -> dict[tuple[int, int, tuple[int, ...]], int]:
        return {a: k for k, a in enumerate(self.arrows)}

    def mor(self, n: int, m: int, table: Sequence[int]) -> int:
        return self.index[(n, m, tuple(table))]

    @cached_property
    def cat(self) -> FinCategory:
        arrows = self.arrows
        index = self.index
        ident = [index[(n, n, tuple(range(n)))] for n in range(self.max_arity + 1)]

        def compose(g, f):
            n, m, phi = arrows[f]
            _, k, psi = arrows[g]
            return index[(n, k, tuple(phi[psi[i]] for i in range(k)))]

        return FinCategory.build(self.max_arity + 1, [(a[0], a[1]) for a in arrows], ident, compose,
                                 obj_labels=[str(n) for n in range(self.max_arity + 1)],
                                 mor_labels=[f"{n}<-{m}:{list(t)}" for n, m, t in arrows])


# ---------------------------------------------------------------------------
# Lex bases


@dataclass(frozen=True)
class ProductCone:
    left: int
    right: int
    apex: int
    proj_left: int
    proj_right: int


@dataclass(eq=False)
class LexBase:
    """A base category together with the limit cones that lexness is checked
    against (all of them for a lattice; the in-bounds ones when truncated)."""

    name: str
    kind: str  # "lattice" | "trunc"
    cat: FinCategory
    terminal: int | None
    cones: tuple[ProductCone, ...]
    lattice: FinLattice | None = None
    trunc: TruncArityBase | None = None

    @property
    def n_obj(self) -> int:
        return self.cat.n_obj

    def __repr__(self):
        return f"LexBase({self.name})"

    @classmethod
    def from_lattice(cls, lat: FinLattice, name: str) -> "LexBase":
        cat = lattice_to_category(lat)
        cones = []
        for a in range(lat.size):
            for b in range(lat.size):
                p = lat.meet_table[a][b]
                cones.append(ProductCone(a, b, p, cat.hom(p, a)[0], cat.hom(p, b)[0]))
        return cls(name, "lattice", cat, lat.top_element, tuple(cones), lattice=lat)

    @classmethod
    def truncated(cls, N: int, name: str | None = None) -> "LexBase":
        tb = TruncArityBase(N)
        cones = []
        for n in range(N + 1):
            for m in range(N + 1 - n):
                # n + m in A_f^op is the coproduct of finite sets
                cones.append(ProductCone(n, m, n + m, tb.mor(n + m, n, range(n)),
                                         tb.mor(n + m, m, range(n, n + m))))
        return cls(name or f"trunc{N}", "trunc", tb.cat, 0, tuple(cones), trunc=tb)


def check_lex_functor(base: LexBase, F: FunctorData) -> list[str]:
    """In-bounds limit cones of `base` whose image under F is not a limit cone."""
    if F.src is not base.cat:
        raise PreconditionError("functor source is not the base category")
    D = F.dst
    report = []
    if base.terminal is not None:
        t = F.obj_map[base.terminal]
        for c in range(D.n_obj):
            if len(D.hom(c, t)) != 1:
                report.append(f"terminal {base.cat.obj_label(base.terminal)} not sent to a terminal"
                              f" object (|hom({D.obj_label(c)}, -)| = {len(D.hom(c, t))})")
                break
    for cone in base.cones:
        p, a, b = (F.obj_map[x] for x in (cone.apex, cone.left, cone.right))
        p1, p2 = F.mor_map[cone.proj_left], F.mor_map[cone.proj_right]
        for c in range(D.n_obj):
            imgs = [(D.comp[(p1, h)], D.comp[(p2, h)]) for h in D.hom(c, p)]
            if len(set(imgs)) != len(imgs) or len(imgs) != len(D.hom(c, a)) * len(D.hom(c, b)):
                report.append(f"product cone ({base.cat.obj_label(cone.left)}, "
                              f"{base.cat.obj_label(cone.right)}) not preserved "
                              f"(tested at {D.obj_label(c)})")
                break
    return report


def enumerate_lex_maps(A: LexBase, B: LexBase) -> list[FunctorData]:
    """Lex functors A -> B.

    Exhaustive when the source is a lattice. Between truncated bases the
    lex functors are, up to isomorphism, the scalings k -> s*k; those are
    returned (one per admissible s).
    """
    if A.kind == "trunc" and B.kind == "trunc":
        M, N = A.trunc.max_arity, B.trunc.max_arity
        out = []
        for s in range(0, N + 1):
            if s * M <= N:
                out.append(scale_map(A, B, s))
        return out
    return [F for F in enumerate_functors(A.cat, B.cat) if not check_lex_functor(A, F)]


def scale_map(A: LexBase, B: LexBase, s: int) -> FunctorData:
    """k -> s*k between truncated bases; a function m -> n becomes the
    block map s*m -> s*n."""
    ta, tb = A.trunc, B.trunc
    if s * ta.max_arity > tb.max_arity:
        raise PreconditionError(f"scale {s} leaves the arity bound")
    mor_map = []
    for n, m, t in ta.arrows:
        mor_map.append(tb.mor(s * n, s * m, [t[i // s] * s + i % s for i in range(s * m)]))
    return FunctorData(A.cat, B.cat, tuple(s * k for k in range(ta.max_arity + 1)), tuple(mor_map))


# ---------------------------------------------------------------------------
# Lex points: finite-limit-preserving functors base -> FinSet


@dataclass(eq=False)
class LexPoint:
    base: LexBase
    sizes: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]  # per morphism, table sizes[dom] -> sizes[cod]
    carrier: int | None = None  # truncated regime: |X| with sizes[n] = |X|**n
    filter: frozenset[int] | None = None  # lattice regime

    def key(self) -> tuple:
        return (self.sizes, self.action)

    def __eq__(self, other):
        return isinstance(other, LexPoint) and other.base is self.base and self.key() == other.key()

    def __hash__(self):
        return hash((id(self.base), self.key()))


def filter_point(base: LexBase, filt: frozenset[int]) -> LexPoint:
    C = base.cat
    sizes = tuple(1 if a in filt else 0 for a in range(C.n_obj))
    action = tuple((0,) if C.dom[m] in filt else () for m in range(C.n_mor))
    return LexPoint(base, sizes, action, filter=filt)


def power_point(base: LexBase, k: int) -> LexPoint:
    """The lex point n -> X^n for |X| = k; elements of X^n are row-major."""
    tb = base.trunc
    sizes = tuple(k ** n for n in range(tb.max_arity + 1))
    action = []
    for n, m, t in tb.arrows:
        row = []
        for x in range(k ** n):
            xs = decode_tuple(x, k, n)
            row.append(encode_tuple([xs[t[i]] for i in range(m)], k))
        action.append(tuple(row))
    return LexPoint(base, sizes, tuple(action), carrier=k)


def enumerate_lex_points(base: LexBase, k: int) -> list[LexPoint]:
    """Lex functors base -> finite sets with values bounded by k."""
    if base.kind == "lattice":
        return [filter_point(base, f) for f in base.lattice.filters()]
    check_candidates(k ** base.trunc.max_arity, "lex point values")
    return [power_point(base, c) for c in range(k + 1)]


def check_lex_point(P: LexPoint) -> list[str]:
    base, C = P.base, P.base.cat
    report = []
    for m in range(C.n_mor):
        if len(P.action[m]) != P.sizes[C.dom[m]] or any(
                not 0 <= y < P.sizes[C.cod[m]] for y in P.action[m]):
            report.append(f"action of {C.mor_label(m)} is not a function")
    if report:
        return report
    for a in range(C.n_obj):
        if P.action[C.ident[a]] != tuple(range(P.sizes[a])):
            report.append(f"identity at {C.obj_label(a)} not preserved")
    for (g, f), h in C.comp.items():
        if tuple(P.action[g][y] for y in P.action[f]) != P.action[h]:
            report.append(f"composition not preserved at ({g}, {f})")
    if base.terminal is not None and P.sizes[base.terminal] != 1:
        report.append("value at terminal is not a singleton")
    for cone in base.cones:
        pl, pr = P.action[cone.proj_left], P.action[cone.proj_right]
        pairs = {(pl[x], pr[x]) for x in range(P.sizes[cone.apex])}
        if len(pairs) != P.sizes[cone.apex] or len(pairs) != P.sizes[cone.left] * P.sizes[cone.right]:
            report.append(f"product cone ({cone.left}, {cone.right}) not preserved")
    return report


def point_pairing(P: LexPoint, cone: ProductCone) -> dict[tuple[int, int], int]:
    """Inverse of the comparison P(apex) -> P(left) x P(right)."""
    pl, pr = P.action[cone.proj_left], P.action[cone.proj_right]
    return {(pl[x], pr[x]): x for x in range(P.sizes[cone.apex])}


# ---------------------------------------------------------------------------
# Named fixtures


def named_lattice(name: str) -> FinLattice:
    if name.startswith("chain"):
        return chain(int(name[5:]))
    if name == "diamond":
        return diamond()
    raise KeyError(f"unknown lattice {name!r}")


_BASES: dict[str, LexBase] = {}


def named_base(name: str) -> LexBase:
    """Shared instances so that identity checks between bases work."""
    if name not in _BASES:
        if name.startswith("trunc"):
            _BASES[name] = LexBase.truncated(int(name[5:]), name)
        else:
            _BASES[name] = LexBase.from_lattice(named_lattice(name), name)
    return _BASES[name]
