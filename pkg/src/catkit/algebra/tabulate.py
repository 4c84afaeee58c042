"""Free algebras on n generators by bounded congruence closure.

The closure works on an e-graph: classes are union-find roots, nodes are
(op, child classes) and are kept canonical by a rebuild loop. Depth d adds
every operation applied to the classes present after depth d-1, then
instantiates every equation over the present classes (sides that would need
a missing node are skipped for now) and closes under congruence. Once no
operation leaves the present classes, every instance is evaluable, so the
quotient is an algebra of the presentation generated by the variables, i.e.
the free one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import LIMITS, PreconditionError, ResourceError, StabilizationError
from .terms import App, Presentation, Term, Var, term_key


class EGraph:
    def __init__(self, pres: Presentation, n: int):
        self.pres = pres
        self.n = n
        self.parent: list[int] = []
        self.rep: list[Term] = []
        self.nodes: dict[tuple, int] = {}
        self.order = pres.signature.order
        for i in range(n):
            self.add(("#x", i), (), Var(i))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def classes(self) -> list[int]:
        return [c for c in range(len(self.parent)) if self.parent[c] == c]

    def lookup(self, op, kids) -> int | None:
        c = self.nodes.get((op, tuple(self.find(k) for k in kids)))
        return None if c is None else self.find(c)

    def add(self, op, kids, term: Term) -> int:
        key = (op, tuple(self.find(k) for k in kids))
        if key in self.nodes:
            return self.find(self.nodes[key])
        c = len(self.parent)
        self.parent.append(c)
        self.rep.append(term)
        self.nodes[key] = c
        return c

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        # keep the smaller representative at the root
        if term_key(self.rep[b], self.order) < term_key(self.rep[a], self.order):
            a, b = b, a
        self.parent[b] = a
        return True

    def rebuild(self) -> None:
        dirty = True
        while dirty:
            dirty = False
            fresh: dict[tuple, int] = {}
            for (op, kids), c in self.nodes.items():
                key = (op, tuple(self.find(k) for k in kids))
                if key in fresh:
                    dirty |= self.union(fresh[key], c)
                else:
                    fresh[key] = c
            self.nodes = fresh

    def evaluate(self, t: Term, sub: tuple[int, ...]) -> int | None:
        """Class of t with x_i -> sub[i], or None if some node is missing."""
        if isinstance(t, Var):
            return self.find(sub[t.index])
        kids = []
        for a in t.args:
            k = self.evaluate(a, sub)
            if k is None:
                return None
            kids.append(k)
        return self.lookup(t.op, kids)

    def grow(self) -> None:
        present = self.classes()
        for op, ar in self.pres.signature.ops:
            for kids in itertools.product(present, repeat=ar):
                self.add(op, kids, App(op, tuple(self.rep[k] for k in kids)))
        self._check_size()

    def saturate(self) -> None:
        changed = True
        while changed:
            changed = False
            for eq in self.pres.equations:
                for a, b in self._instances(eq):
                    if a is not None and b is not None and self.union(a, b):
                        changed = True
            self.rebuild()

    def _instances(self, eq):
        """Pairs of classes of the two sides, over every substitution in
        which a side built from operations already exists (e-matching); the
        variables it leaves unbound range over all classes."""
        present = self.classes()
        pattern, other = (eq.lhs, eq.rhs) if isinstance(eq.lhs, App) else (eq.rhs, eq.lhs)
        if not isinstance(pattern, App):
            for sub in itertools.product(present, repeat=eq.n_vars):
                yield self.evaluate(eq.lhs, sub), self.evaluate(eq.rhs, sub)
            return
        index: dict[tuple, list[tuple]] = {}
        for (op, kids), c in self.nodes.items():
            index.setdefault((op, self.find(c)), []).append(kids)
        tops = [(c, kids) for (op, c), ks in index.items() if op == pattern.op for kids in ks]
        for c, kids in tops:
            for sub in self._match_args(pattern.args, kids, {}, index):
                free = [v for v in range(eq.n_vars) if v not in sub]
                for extra in itertools.product(present, repeat=len(free)):
                    full = dict(sub)
                    full.update(zip(free, extra))
                    s = tuple(full[v] for v in range(eq.n_vars))
                    yield c, self.evaluate(other, s)

    def _match(self, pat, cls, sub, index):
        if isinstance(pat, Var):
            bound = sub.get(pat.index)
            if bound is None:
                yield {**sub, pat.index: cls}
            elif self.find(bound) == cls:
                yield sub
            return
        for kids in index.get((pat.op, cls), ()):
            yield from self._match_args(pat.args, kids, sub, index)

    def _match_args(self, pats, kids, sub, index):
        if not pats:
            yield sub
            return
        for s in self._match(pats[0], self.find(kids[0]), sub, index):
            yield from self._match_args(pats[1:], kids[1:], s, index)

    def closed(self) -> bool:
        present = self.classes()
        return all(self.lookup(op, kids) is not None
                   for op, ar in self.pres.signature.ops
                   for kids in itertools.product(present, repeat=ar))

    def _check_size(self):
        if len(self.parent) > LIMITS.max_set_size:
            raise ResourceError(f"congruence closure for n={self.n} exceeded max_set_size={LIMITS.max_set_size}")


@dataclass(eq=False)
class TabMonad:
    """A finitary monad on Set recorded up to arity N.

    ``unit[n][i]`` is the class of x_{i+1} in T(n); ``ext[(n, m, f)]`` is the
    Kleisli extension of f (an m-tuple in T(n)) as a table T(m) -> T(n).
    """

    N: int
    sizes: tuple[int, ...]
    unit: tuple[tuple[int, ...], ...]
    ext: dict[tuple[int, int, tuple[int, ...]], tuple[int, ...]]
    labels: tuple[tuple[str, ...], ...] | None = None
    name: str = ""
    meta: dict = field(default_factory=dict, repr=False)

    def __repr__(self):
        return f"TabMonad({self.name or '?'}, N={self.N}, sizes={list(self.sizes)})"

    def kleisli(self, n: int, f: tuple[int, ...]) -> tuple[int, ...]:
        return self.ext[(n, len(f), tuple(f))]

    def tuples(self, n: int, m: int):
        return itertools.product(range(self.sizes[n]), repeat=m)


def check_kleisli(t: TabMonad, exhaustive: bool = True) -> list[str]:
    """The three Kleisli triple laws, over every f and g within bounds."""
    report = []
    S, N = t.sizes, t.N
    for n, m in itertools.product(range(N + 1), repeat=2):
        for f in t.tuples(n, m):
            e = t.kleisli(n, f)
            if len(e) != S[m] or any(not 0 <= v < S[n] for v in e):
                report.append(f"ext{f} at ({n},{m}) is not a function T{m} -> T{n}")
                continue
            if tuple(e[t.unit[m][i]] for i in range(m)) != f:
                report.append(f"ext(f) . unit != f for f={f} at ({n},{m})")
    for n in range(N + 1):
        if t.kleisli(n, t.unit[n]) != tuple(range(S[n])):
            report.append(f"ext(unit_{n}) is not the identity")
    if not exhaustive:
        return report
    for n, m, k in itertools.product(range(N + 1), repeat=3):
        for f in t.tuples(n, m):
            ef = t.kleisli(n, f)
            for g in t.tuples(m, k):
                eg = t.kleisli(m, g)
                lhs = t.kleisli(n, tuple(ef[v] for v in g))
                if lhs != tuple(ef[v] for v in eg):
                    report.append(f"ext(ext(f) g) != ext(f) ext(g) for f={f}, g={g} at ({n},{m},{k})")
                    return report
    return report


def identity_tabmonad(N: int) -> TabMonad:
    sizes = tuple(range(N + 1))
    unit = tuple(tuple(range(n)) for n in range(N + 1))
    ext = {}
    for n, m in itertools.product(range(N + 1), repeat=2):
        for f in itertools.product(range(n), repeat=m):
            ext[(n, m, f)] = tuple(f)
    labels = tuple(tuple(f"x{i + 1}" for i in range(n)) for n in range(N + 1))
    return TabMonad(N, sizes, unit, ext, labels, name="identity")


def free_algebra(p: Presentation, n: int, depth: int) -> EGraph:
    g = EGraph(p, n)
    g.saturate()
    previous = len(g.classes())
    for d in range(1, depth + 1):
        g.grow()
        g.saturate()
        count = len(g.classes())
        if count == previous and g.closed():
            return g
        previous = count
    raise StabilizationError(
        f"not locally finite within bounds: free algebra on n={n} generators did not stabilize by depth {depth}"
        f" ({previous} classes at depth {depth})")


def tabulate(p: Presentation, N: int, depth: int = 8, size_bound: int | None = None) -> TabMonad:
    """Tabulate the free-algebra monad of a presentation for arities 0..N."""
    if N < 0 or depth < 1 or (size_bound is not None and size_bound < 1):
        raise PreconditionError("bounds must be positive")
    bound = LIMITS.max_set_size if size_bound is None else size_bound
    graphs, classes, index = [], [], []
    for n in range(N + 1):
        g = free_algebra(p, n, depth)
        cls = sorted(g.classes(), key=lambda c: term_key(g.rep[c], g.order))
        if len(cls) > bound:
            raise ResourceError(f"T({n}) has {len(cls)} classes, more than the size bound {bound}")
        graphs.append(g)
        classes.append(cls)
        index.append({c: i for i, c in enumerate(cls)})
    sizes = tuple(len(c) for c in classes)
    unit = tuple(tuple(index[n][graphs[n].find(i)] for i in range(n)) for n in range(N + 1))
    ext = {}
    for n, m in itertools.product(range(N + 1), repeat=2):
        g, reps_m = graphs[n], [graphs[m].rep[c] for c in classes[m]]
        for f in itertools.product(range(sizes[n]), repeat=m):
            sub = tuple(classes[n][v] for v in f)
            table = []
            for t in reps_m:
                c = g.evaluate(t, sub)
                if c is None:
                    raise StabilizationError(f"not locally finite within bounds: substitution escapes T({n})")
                table.append(index[n][c])
            ext[(n, m, f)] = tuple(table)
    labels = tuple(tuple(str(graphs[n].rep[c]) for c in classes[n]) for n in range(N + 1))
    t = TabMonad(N, sizes, unit, ext, labels, name=p.name)
    t.meta["graphs"] = graphs
    return t


def substitution_sound(p: Presentation, t: TabMonad) -> list[str]:
    """Both sides of every equation land in the same class of T(n) under
    every assignment of representatives to the variables."""
    graphs = t.meta.get("graphs")
    if graphs is None:
        raise PreconditionError("monad was not produced by tabulate")
    report = []
    for eq in p.equations:
        for n, g in enumerate(graphs):
            for sub in itertools.product(g.classes(), repeat=eq.n_vars):
                if g.evaluate(eq.lhs, sub) != g.evaluate(eq.rhs, sub):
                    report.append(f"{eq} fails in T({n}) under {[str(g.rep[c]) for c in sub]}")
                    break
    return report
