"""Semantics in S_k: the W-category whose objects of extent A are lex points
A -> FinSet with values bounded by k, and S(X, Y)(a, b) = Set(Xa, Yb).

S_k is never tabulated; a W-functor c -> S_k is searched for directly as
a point per object together with an action

    c(X, Y)(i, j) x P_X(i) -> P_Y(j)

preserving identities and composition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..fincat import FinCategory, FunctorData, LexBase, LexPoint, check_lex_point, enumerate_lex_points, point_pairing
from ..errors import InvariantError
from ..finset import coequalize
from ..lexprof import LexProf1Cell
from ..search import SKIP, Problem
from .core import WCategory, WFunctorData


@dataclass(eq=False)
class SemObject:
    points: tuple[LexPoint, ...]
    action: dict  # (X, Y, i, j, e) -> tuple table

    def key(self) -> tuple:
        return (tuple(p.key() for p in self.points), tuple(sorted(self.action.items())))


@dataclass(eq=False)
class Semantics:
    cat: FinCategory
    objects: list[SemObject]
    morphisms: list[tuple[int, int, tuple]]  # (src, dst, components)
    source: WCategory

    def object_index(self) -> dict:
        return {o.key(): n for n, o in enumerate(self.objects)}


def _elements(c: WCategory):
    for X, Y in itertools.product(range(c.n_obj), repeat=2):
        for (i, j), n in sorted(c.hom(X, Y).sizes.items()):
            for e in range(n):
                yield X, Y, i, j, e


def _only_unary_targets(B: LexBase) -> bool:
    # in a truncated base every object is a power of 1 within bounds, so
    # composition needs checking only into 1 (the rest follows from
    # naturality and the pairing bijections)
    return B.kind == "trunc" and B.trunc.max_arity >= 1


def wfunctors_to_S(c: WCategory, k: int) -> list[SemObject]:
    points = [enumerate_lex_points(A, k) for A in c.extents]
    out = []
    for choice in itertools.product(*points):
        out.extend(_solve_actions(c, choice))
    return out


def _solve_actions(c: WCategory, P: tuple[LexPoint, ...]) -> list[SemObject]:
    prob = Problem()
    elems = list(_elements(c))
    for X, Y, i, j, e in elems:
        for x in range(P[X].sizes[i]):
            prob.var((X, Y, i, j, e, x), range(P[Y].sizes[j]))
    # identities act as the points do
    for X in range(c.n_obj):
        A = c.extents[X].cat
        for m in range(A.n_mor):
            i, j = A.dom[m], A.cod[m]
            e = c.ident(X, m)
            for x in range(P[X].sizes[i]):
                prob.propagate([], (X, X, i, j, e, x), lambda v=P[X].action[m][x]: v)
    # naturality in the target variable, and pairing at product apexes
    for X, Y, i, j, e in elems:
        B = c.extents[Y]
        M = c.hom(X, Y)
        for beta in [m for b in range(B.n_obj) for m in B.cat.hom(j, b)]:
            j1 = B.cat.cod[beta]
            e1 = M.ract[(i, beta)][e]
            act = P[Y].action[beta]
            for x in range(P[X].sizes[i]):
                prob.propagate([(X, Y, i, j, e, x)], (X, Y, i, j1, e1, x), act.__getitem__)
    for X, Y in itertools.product(range(c.n_obj), repeat=2):
        B = c.extents[Y]
        M = c.hom(X, Y)
        for cone in B.cones:
            pr = point_pairing(P[Y], cone)
            for i in range(c.extents[X].n_obj):
                pl, pq = M.ract[(i, cone.proj_left)], M.ract[(i, cone.proj_right)]
                for e in range(M.size(i, cone.apex)):
                    for x in range(P[X].sizes[i]):
                        prob.propagate([(X, Y, i, cone.left, pl[e], x), (X, Y, i, cone.right, pq[e], x)],
                                       (X, Y, i, cone.apex, e, x), lambda u, v, pr=pr: pr.get((u, v), -1))
    # composition: F(g o f)(x) = F(g)(F(f)(x)), guarded on the value of F(f)(x)
    for X, Y, Z in itertools.product(range(c.n_obj), repeat=3):
        A, B, C = (c.extents[W] for W in (X, Y, Z))
        G, H = c.hom(Y, Z), c.hom(X, Y)
        ks = [1] if _only_unary_targets(C) else range(C.n_obj)
        for i, j, kk in itertools.product(range(A.n_obj), range(B.n_obj), ks):
            for g in range(G.size(j, kk)):
                for f in range(H.size(i, j)):
                    h = c.compose(X, Y, Z, i, j, kk, g, f)
                    for x in range(P[X].sizes[i]):
                        for y in range(P[Y].sizes[j]):
                            prob.propagate([(X, Y, i, j, f, x), (Y, Z, j, kk, g, y)], (X, Z, i, kk, h, x),
                                           lambda u, v, y=y: v if u == y else SKIP)
    out = []
    for s in prob.solutions():
        action = {}
        for X, Y, i, j, e in elems:
            action[(X, Y, i, j, e)] = tuple(s[(X, Y, i, j, e, x)] for x in range(P[X].sizes[i]))
        out.append(SemObject(P, action))
    return out


def check_sem_object(c: WCategory, F: SemObject) -> list[str]:
    """Full W-functor laws for an action, without the shortcuts used in the
    search."""
    P = F.points
    report = []
    for X in range(c.n_obj):
        report.extend(check_lex_point(P[X]))
        A = c.extents[X].cat
        for m in range(A.n_mor):
            if F.action[(X, X, A.dom[m], A.cod[m], c.ident(X, m))] != P[X].action[m]:
                report.append(f"identity {A.mor_label(m)} not preserved at {c.names[X]}")
    for X, Y, Z in itertools.product(range(c.n_obj), repeat=3):
        A, B, C = (c.extents[W] for W in (X, Y, Z))
        G, H = c.hom(Y, Z), c.hom(X, Y)
        for i, j, k in itertools.product(range(A.n_obj), range(B.n_obj), range(C.n_obj)):
            for g in range(G.size(j, k)):
                tg = F.action[(Y, Z, j, k, g)]
                for f in range(H.size(i, j)):
                    tf = F.action[(X, Y, i, j, f)]
                    if F.action[(X, Z, i, k, c.compose(X, Y, Z, i, j, k, g, f))] != tuple(tg[v] for v in tf):
                        report.append(f"composition not preserved at {(X, Y, Z, i, j, k, g, f)}")
    return report


def transformations(c: WCategory, F: SemObject, G: SemObject) -> list[tuple]:
    """W-natural transformations F => G: per object X a family
    theta_{X,i}: P_X(i) -> Q_X(i) commuting with every action."""
    if any(F.points[X].base is not G.points[X].base for X in range(c.n_obj)):
        return []
    prob = Problem()
    for X in range(c.n_obj):
        for i in range(c.extents[X].n_obj):
            for x in range(F.points[X].sizes[i]):
                prob.var((X, i, x), range(G.points[X].sizes[i]))
    for (X, Y, i, j, e), tf in F.action.items():
        tg = G.action[(X, Y, i, j, e)]
        for x in range(len(tf)):
            prob.propagate([(X, i, x)], (Y, j, tf[x]), tg.__getitem__)
    for X in range(c.n_obj):
        A = c.extents[X]
        for cone in A.cones:
            prF, prG = F.points[X], point_pairing(G.points[X], cone)
            al, ar = prF.action[cone.proj_left], prF.action[cone.proj_right]
            for x in range(prF.sizes[cone.apex]):
                prob.propagate([(X, cone.left, al[x]), (X, cone.right, ar[x])], (X, cone.apex, x),
                               lambda u, v, prG=prG: prG.get((u, v), -1))
    out = []
    keys = [(X, i, x) for X in range(c.n_obj) for i in range(c.extents[X].n_obj)
            for x in range(F.points[X].sizes[i])]
    for s in prob.solutions():
        out.append(tuple(s[key] for key in keys))
    return out


def semantics(c: WCategory, k: int) -> Semantics:
    """The category of W-functors c -> S_k and W-natural transformations."""
    objs = wfunctors_to_S(c, k)
    objs.sort(key=lambda o: o.key())
    arrows, comps, index = [], [], {}
    for p, F in enumerate(objs):
        for q, G in enumerate(objs):
            for t in transformations(c, F, G):
                index[(p, q, t)] = len(arrows)
                arrows.append((p, q))
                comps.append(t)
    keys = {}
    for p, F in enumerate(objs):
        keys[p] = [(X, i, x) for X in range(c.n_obj) for i in range(c.extents[X].n_obj)
                   for x in range(F.points[X].sizes[i])]
    ident = [index[(p, p, tuple(x for (_, _, x) in keys[p]))] for p in range(len(objs))]

    def compose(g, f):
        p, q = arrows[f]
        r = arrows[g][1]
        pos_q = {key: n for n, key in enumerate(keys[q])}
        t = tuple(comps[g][pos_q[(X, i, comps[f][n])]] for n, (X, i, _) in enumerate(keys[p]))
        return index[(p, r, t)]

    cat = FinCategory.build(len(objs), arrows, ident, compose)
    return Semantics(cat, objs, [(a, b, t) for (a, b), t in zip(arrows, comps)], c)


def restrict(sem_d: Semantics, sem_c: Semantics, K: WFunctorData) -> FunctorData:
    """Precomposition with K: c -> d, as a functor sem(d) -> sem(c)."""
    c = K.src
    idx = sem_c.object_index()
    obj_map = []
    for G in sem_d.objects:
        pts = tuple(G.points[K.obj_map[X]] for X in range(c.n_obj))
        action = {}
        for X, Y, i, j, e in _elements(c):
            action[(X, Y, i, j, e)] = G.action[(K.obj_map[X], K.obj_map[Y], i, j, K(X, Y, i, j, e))]
        obj_map.append(idx[SemObject(pts, action).key()])
    mindex = {(a, b, t): n for n, (a, b, t) in enumerate(sem_c.morphisms)}
    mor_map = []
    for a, b, t in sem_d.morphisms:
        # components of the restricted transformation, reordered by c's objects
        d = K.dst
        Fa = sem_d.objects[a]
        pos = {}
        n = 0
        for Z in range(d.n_obj):
            for i in range(d.extents[Z].n_obj):
                for x in range(Fa.points[Z].sizes[i]):
                    pos[(Z, i, x)] = n
                    n += 1
        new = tuple(t[pos[(K.obj_map[X], i, x)]] for X in range(c.n_obj) for i in range(c.extents[X].n_obj)
                    for x in range(Fa.points[K.obj_map[X]].sizes[i]))
        mor_map.append(mindex[(obj_map[a], obj_map[b], new)])
    return FunctorData(sem_d.cat, sem_c.cat, tuple(obj_map), tuple(mor_map))


def act_S(M: LexProf1Cell, X: LexPoint) -> LexPoint:
    """(M * X)(b) = colim over a of M(a, b) x X(a)."""
    A, B = M.src, M.dst
    Ac, Bc = A.cat, B.cat
    quots, offs = {}, {}
    sizes = []
    for b in range(B.n_obj):
        off, total = {}, 0
        for a in range(Ac.n_obj):
            off[a] = total
            total += M.size(a, b) * X.sizes[a]
        pairs = []
        for alpha in range(Ac.n_mor):
            a1, a = Ac.dom[alpha], Ac.cod[alpha]
            la, xa = M.lact[(alpha, b)], X.action[alpha]
            for m in range(M.size(a, b)):
                for x in range(X.sizes[a1]):
                    pairs.append((off[a1] + la[m] * X.sizes[a1] + x, off[a] + m * X.sizes[a] + xa[x]))
        _, q = coequalize(pairs, total)
        quots[b], offs[b] = q.table, off
        sizes.append(q.cod.size)
    action = []
    for beta in range(Bc.n_mor):
        b, b1 = Bc.dom[beta], Bc.cod[beta]
        table: dict[int, int] = {}
        for a in range(Ac.n_obj):
            r = M.ract[(a, beta)]
            for m in range(M.size(a, b)):
                for x in range(X.sizes[a]):
                    v = quots[b1][offs[b1][a] + r[m] * X.sizes[a] + x]
                    if table.setdefault(quots[b][offs[b][a] + m * X.sizes[a] + x], v) != v:
                        raise InvariantError(f"action along {Bc.mor_label(beta)} not well defined on the coend")
        action.append(tuple(table[k] for k in range(sizes[b])))
    return LexPoint(B, tuple(sizes), tuple(action))
