"""Categories enriched in LexProf, presented elementwise.

A W-category has objects X with extents, a hom 1-cell C(X, Y) from the
extent of X to the extent of Y, a composition function on elements

    C(Y, Z)(j, k) x C(X, Y)(i, j) -> C(X, Z)(i, k)

and identities iota_X sending a base morphism i -> j to an element of
C(X, X)(i, j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from ..fincat import FinCategory, LexBase
from ..lexprof import LexProf1Cell, ProfMorphism, check_2cell, check_cell, check_lexness, identity_prof
from ..search import Problem

Compose = Callable[[int, int, int, int, int, int, int, int], int]


@dataclass(eq=False)
class WCategory:
    names: list[str]
    extents: list[LexBase]
    homs: dict[tuple[int, int], LexProf1Cell]
    compose: Compose  # (X, Y, Z, i, j, k, g, f) -> g o f
    ident: Callable[[int, int], int]  # (X, phi) -> iota_X(phi)
    name: str = ""
    meta: dict = field(default_factory=dict, repr=False)

    @property
    def n_obj(self) -> int:
        return len(self.names)

    def hom(self, X: int, Y: int) -> LexProf1Cell:
        return self.homs[(X, Y)]

    def unit_elem(self, X: int, i: int) -> int:
        return self.ident(X, self.extents[X].cat.ident[i])

    def iota(self, X: int) -> ProfMorphism:
        """iota_X as a 2-cell I -> C(X, X)."""
        A = self.extents[X]
        C = A.cat
        comps = {(i, j): tuple(self.ident(X, m) for m in C.hom(i, j))
                 for i in range(C.n_obj) for j in range(C.n_obj)}
        return ProfMorphism(identity_prof(A), self.hom(X, X), comps)

    def __repr__(self):
        return f"WCategory({self.name or '?'}, {self.n_obj} objects)"


def _triples(c: WCategory):
    return itertools.product(range(c.n_obj), repeat=3)


def _unary_targets(c: WCategory) -> bool:
    return all(A.kind == "trunc" and A.trunc.max_arity >= 1 for A in c.extents)


def check_wcategory(c: WCategory, laws: bool = True, exhaustive: bool | None = None) -> list[str]:
    """All violated axiom instances (hom cells, naturality and dinaturality
    of composition, unit and associativity laws, actions from identities,
    functoriality of iota).

    Over truncated extents the default is a reduced check: composites into
    arity k are determined by their k components into arity 1 (the homs
    are lex), so the composition laws are checked with targets of arity 1
    and naturality in the target along arrows into 1 only.
    """
    reduced = _unary_targets(c) if exhaustive is None else not exhaustive
    report = []
    for (X, Y), M in c.homs.items():
        if M.src is not c.extents[X] or M.dst is not c.extents[Y]:
            report.append(f"hom({c.names[X]}, {c.names[Y]}) has the wrong extents")
            continue
        report.extend(f"hom({c.names[X]}, {c.names[Y]}): {p}" for p in check_cell(M))
        if reduced:
            report.extend(f"hom({c.names[X]}, {c.names[Y]}): {p}" for p in check_lexness(M))
    if report:
        return report
    for X in range(c.n_obj):
        report.extend(f"iota at {c.names[X]}: {p}" for p in check_2cell(c.iota(X)))
    if report:
        return report
    comp = c.compose
    for X, Y, Z in _triples(c):
        F, G, H = c.hom(X, Y), c.hom(Y, Z), c.hom(X, Z)
        A, B, C = c.extents[X].cat, c.extents[Y].cat, c.extents[Z].cat
        for i, j, k in itertools.product(range(A.n_obj), range(B.n_obj), range(C.n_obj)):
            full = not reduced or k == 1
            into_i = _into(A, i) if full else []
            out_k = _out(C, k) if full else [m for m in C.hom(k, 1)]
            for g in range(G.size(j, k)):
                for f in range(F.size(i, j)):
                    h = comp(X, Y, Z, i, j, k, g, f)
                    if not 0 <= h < H.size(i, k):
                        report.append(f"composite out of range at {(X, Y, Z, i, j, k, g, f)}")
                        return report
                    for alpha in into_i:
                        i1 = A.dom[alpha]
                        if H.lact[(alpha, k)][h] != comp(X, Y, Z, i1, j, k, g, F.lact[(alpha, j)][f]):
                            report.append(f"composition not natural in i at {(X, Y, Z, i, j, k, g, f)}, "
                                          f"arrow {A.mor_label(alpha)}")
                    for gamma in out_k:
                        k1 = C.cod[gamma]
                        if H.ract[(i, gamma)][h] != comp(X, Y, Z, i, j, k1, G.ract[(j, gamma)][g], f):
                            report.append(f"composition not natural in k at {(X, Y, Z, i, j, k, g, f)}, "
                                          f"arrow {C.mor_label(gamma)}")
        # dinaturality in the middle variable
        for beta in range(B.n_mor):
            j, j1 = B.dom[beta], B.cod[beta]
            for i, k in itertools.product(range(A.n_obj), [1] if reduced else range(C.n_obj)):
                for g in range(G.size(j1, k)):
                    for f in range(F.size(i, j)):
                        if (comp(X, Y, Z, i, j, k, G.lact[(beta, k)][g], f)
                                != comp(X, Y, Z, i, j1, k, g, F.ract[(i, beta)][f])):
                            report.append(f"composition not dinatural at {(X, Y, Z)}, arrow "
                                          f"{B.mor_label(beta)}, elements ({g}, {f})")
    if report or not laws:
        return report
    for X, Y in itertools.product(range(c.n_obj), repeat=2):
        F = c.hom(X, Y)
        A, B = c.extents[X].cat, c.extents[Y].cat
        for i, j in itertools.product(range(A.n_obj), range(B.n_obj)):
            for f in range(F.size(i, j)):
                if comp(X, X, Y, i, i, j, f, c.unit_elem(X, i)) != f:
                    report.append(f"right unit law fails at ({c.names[X]}, {c.names[Y]}), ({i}, {j}), {f}")
                if comp(X, Y, Y, i, j, j, c.unit_elem(Y, j), f) != f:
                    report.append(f"left unit law fails at ({c.names[X]}, {c.names[Y]}), ({i}, {j}), {f}")
                for alpha in _into(A, i):
                    if F.lact[(alpha, j)][f] != comp(X, X, Y, A.dom[alpha], i, j, f, c.ident(X, alpha)):
                        report.append(f"left action is not composition with iota at {(X, Y, i, j, f)}")
                for beta in _out(B, j):
                    if F.ract[(i, beta)][f] != comp(X, Y, Y, i, j, B.cod[beta], c.ident(Y, beta), f):
                        report.append(f"right action is not composition with iota at {(X, Y, i, j, f)}")
    for X in range(c.n_obj):
        A = c.extents[X].cat
        for (g, f), h in A.comp.items():
            i, j, k = A.dom[f], A.cod[f], A.cod[g]
            if c.ident(X, h) != comp(X, X, X, i, j, k, c.ident(X, g), c.ident(X, f)):
                report.append(f"iota at {c.names[X]} not functorial at ({A.mor_label(g)}, {A.mor_label(f)})")
    for X, Y, Z, V in itertools.product(range(c.n_obj), repeat=4):
        F, G, H = c.hom(X, Y), c.hom(Y, Z), c.hom(Z, V)
        dims = [c.extents[W].cat.n_obj for W in (X, Y, Z, V)]
        ls = [1] if reduced else range(dims[3])
        for i, j, k, l in itertools.product(*map(range, dims[:3]), ls):
            for h in range(H.size(k, l)):
                for g in range(G.size(j, k)):
                    hg = comp(Y, Z, V, j, k, l, h, g)
                    for f in range(F.size(i, j)):
                        if (comp(X, Z, V, i, k, l, h, comp(X, Y, Z, i, j, k, g, f))
                                != comp(X, Y, V, i, j, l, hg, f)):
                            report.append(f"associativity fails at objects "
                                          f"{(c.names[X], c.names[Y], c.names[Z], c.names[V])}, "
                                          f"extents {(i, j, k, l)}, elements {(h, g, f)}")
    return report


def _into(C: FinCategory, i: int) -> list[int]:
    return [m for a in range(C.n_obj) for m in C.hom(a, i)]


def _out(C: FinCategory, i: int) -> list[int]:
    return [m for b in range(C.n_obj) for m in C.hom(i, b)]


def global_elements(M: LexProf1Cell) -> list[tuple[int, ...]]:
    """2-cells I_A -> M for M: A -/-> A, as their values (e_i) at the
    identities; e must satisfy ract(alpha) e_i' = lact(alpha) e_i."""
    A = M.src.cat
    prob = Problem()
    for i in range(A.n_obj):
        prob.var(i, range(M.size(i, i)))
    for alpha in range(A.n_mor):
        i1, i = A.dom[alpha], A.cod[alpha]
        prob.require([i1, i], lambda e1, e, alpha=alpha, i1=i1, i=i:
                     M.ract[(i1, alpha)][e1] == M.lact[(alpha, i)][e])
    return [tuple(s[i] for i in range(A.n_obj)) for s in prob.solutions()]


@dataclass(eq=False)
class Underlying:
    cat: FinCategory
    objects: list[int]  # objects of the W-category
    families: list[tuple[int, ...]]  # per morphism, its values at identities


def underlying_category(c: WCategory, x: LexBase) -> Underlying:
    """Objects of extent x; morphisms X -> Y are 2-cells I_x -> C(X, Y)."""
    objs = [X for X in range(c.n_obj) if c.extents[X] is x]
    arrows, fams, index = [], [], {}
    for p, X in enumerate(objs):
        for q, Y in enumerate(objs):
            for e in global_elements(c.hom(X, Y)):
                index[(p, q, e)] = len(arrows)
                arrows.append((p, q))
                fams.append(e)
    n = x.cat.n_obj
    ident = [index[(p, p, tuple(c.unit_elem(X, i) for i in range(n)))] for p, X in enumerate(objs)]

    def compose(g, f):
        p, q = arrows[f]
        r = arrows[g][1]
        X, Y, Z = objs[p], objs[q], objs[r]
        e = tuple(c.compose(X, Y, Z, i, i, i, fams[g][i], fams[f][i]) for i in range(n))
        return index[(p, r, e)]

    cat = FinCategory.build(len(objs), arrows, ident, compose, obj_labels=[c.names[X] for X in objs])
    return Underlying(cat, objs, fams)


# ---------------------------------------------------------------------------
# W-functors


@dataclass(eq=False)
class WFunctorData:
    src: WCategory
    dst: WCategory
    obj_map: tuple[int, ...]
    maps: dict[tuple[int, int], dict[tuple[int, int], tuple[int, ...]]]

    def __call__(self, X, Y, i, j, e) -> int:
        return self.maps[(X, Y)][(i, j)][e]

    def key(self) -> tuple:
        return (self.obj_map, tuple((k, tuple(sorted(v.items()))) for k, v in sorted(self.maps.items())))

    def as_2cell(self, X: int, Y: int) -> ProfMorphism:
        FX, FY = self.obj_map[X], self.obj_map[Y]
        return ProfMorphism(self.src.hom(X, Y), self.dst.hom(FX, FY), self.maps[(X, Y)])


def check_wfunctor(F: WFunctorData) -> list[str]:
    c, d = F.src, F.dst
    report = []
    for X in range(c.n_obj):
        if d.extents[F.obj_map[X]] is not c.extents[X]:
            report.append(f"object {c.names[X]} sent to an object of another extent")
    if report:
        return report
    for X, Y in itertools.product(range(c.n_obj), repeat=2):
        report.extend(f"hom map at ({c.names[X]}, {c.names[Y]}): {p}" for p in check_2cell(F.as_2cell(X, Y)))
    if report:
        return report
    for X in range(c.n_obj):
        A = c.extents[X].cat
        for m in range(A.n_mor):
            i, j = A.dom[m], A.cod[m]
            if F(X, X, i, j, c.ident(X, m)) != d.ident(F.obj_map[X], m):
                report.append(f"identities not preserved at {c.names[X]}, arrow {A.mor_label(m)}")
    for X, Y, Z in _triples(c):
        fx, fy, fz = (F.obj_map[W] for W in (X, Y, Z))
        dims = [c.extents[W].cat.n_obj for W in (X, Y, Z)]
        G, H = c.hom(Y, Z), c.hom(X, Y)
        for i, j, k in itertools.product(*map(range, dims)):
            for g in range(G.size(j, k)):
                for f in range(H.size(i, j)):
                    lhs = F(X, Z, i, k, c.compose(X, Y, Z, i, j, k, g, f))
                    rhs = d.compose(fx, fy, fz, i, j, k, F(Y, Z, j, k, g), F(X, Y, i, j, f))
                    if lhs != rhs:
                        report.append(f"composition not preserved at {(X, Y, Z, i, j, k, g, f)}")
    return report


def is_fully_faithful(F: WFunctorData) -> bool:
    for (X, Y), m in F.maps.items():
        M = F.dst.hom(F.obj_map[X], F.obj_map[Y])
        for (i, j), t in m.items():
            if len(set(t)) != len(t) or len(t) != M.size(i, j):
                return False
    return True


def enumerate_wfunctors(c: WCategory, d: WCategory) -> list[WFunctorData]:
    """All W-functors c -> d (exhaustive search, deterministic order)."""
    prob = Problem()
    for X in range(c.n_obj):
        prob.var(("o", X), [Z for Z in range(d.n_obj) if d.extents[Z] is c.extents[X]])
    for X, Y in itertools.product(range(c.n_obj), repeat=2):
        M = c.hom(X, Y)
        for (i, j), n in sorted(M.sizes.items()):
            for e in range(n):
                prob.var(("m", X, Y, i, j, e),
                         lambda asg, X=X, Y=Y, i=i, j=j: range(d.hom(asg[("o", X)], asg[("o", Y)]).size(i, j)),
                         valid=lambda v, asg, X=X, Y=Y, i=i, j=j: (
                             ("o", X) not in asg or ("o", Y) not in asg
                             or 0 <= v < d.hom(asg[("o", X)], asg[("o", Y)]).size(i, j)))
    for X in range(c.n_obj):
        A = c.extents[X].cat
        for m in range(A.n_mor):
            prob.propagate([("o", X)], ("m", X, X, A.dom[m], A.cod[m], c.ident(X, m)),
                           lambda z, m=m: d.ident(z, m))
    for X, Y, Z in _triples(c):
        dims = [c.extents[W].cat.n_obj for W in (X, Y, Z)]
        G, H = c.hom(Y, Z), c.hom(X, Y)
        for i, j, k in itertools.product(*map(range, dims)):
            for g in range(G.size(j, k)):
                for f in range(H.size(i, j)):
                    h = c.compose(X, Y, Z, i, j, k, g, f)
                    prob.propagate([("o", X), ("o", Y), ("o", Z), ("m", Y, Z, j, k, g), ("m", X, Y, i, j, f)],
                                   ("m", X, Z, i, k, h),
                                   lambda a, b, z, u, v, i=i, j=j, k=k: d.compose(a, b, z, i, j, k, u, v))
    out = []
    for s in prob.solutions():
        maps = {}
        for X, Y in itertools.product(range(c.n_obj), repeat=2):
            M = c.hom(X, Y)
            maps[(X, Y)] = {(i, j): tuple(s[("m", X, Y, i, j, e)] for e in range(n))
                            for (i, j), n in M.sizes.items()}
        out.append(WFunctorData(c, d, tuple(s[("o", X)] for X in range(c.n_obj)), maps))
    return out
