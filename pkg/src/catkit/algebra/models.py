"""Models of truncated theories, Eilenberg-Moore algebras, and the
comparison between them (and with the enriched semantics)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import PreconditionError, check_candidates
from ..fincat import (FinCategory, FunctorData, check_functor, functor_report, is_equivalence, is_isomorphism,
                      named_base)
from ..finset import decode_tuple, encode_tuple
from ..search import SKIP, Problem
from .tabulate import TabMonad
from ..wcat import eta, monad_to_oneobject, restrict, semantics, tabmonad_to_lexmonad
from .theory import LawTheory, check_law_theory, monad_to_theory


@dataclass(eq=False)
class Model:
    """Carrier {0..s-1}; ``interp[(n, e)]`` interprets the e-th element of
    hom(n, 1) as a table over X^n (row-major)."""

    carrier: int
    interp: dict[tuple[int, int], tuple[int, ...]]

    def key(self) -> tuple:
        return (self.carrier, tuple(sorted(self.interp.items())))


@dataclass(eq=False)
class ModelCategory:
    objects: list[Model]
    cat: FinCategory
    maps: list[tuple[int, ...]]  # carrier function of each morphism
    kind: str = "model"
    meta: dict = field(default_factory=dict, repr=False)

    def index(self) -> dict[tuple, int]:
        return {o.key(): n for n, o in enumerate(self.objects)}

    def carriers(self) -> list[int]:
        return [o.carrier for o in self.objects]


def _models_with_carrier(l: LawTheory, s: int) -> list[Model]:
    C, N = l.cat, l.N
    pos = C.hom_pos
    prob = Problem()
    unary = [C.hom(n, 1) for n in range(N + 1)]
    for n in range(N + 1):
        for e in range(len(unary[n])):
            for x in range(s ** n):
                prob.var((n, e, x), range(s))
    for n in range(N + 1):
        for i in range(n):
            e = pos[l.projection(n, i)]
            for x in range(s ** n):
                prob.propagate([], (n, e, x), lambda v=decode_tuple(x, s, n)[i]: v)
    # M(g f)(x) = M(g)(M(f_1)(x), ..., M(f_m)(x)), guarded on the tuple
    for n, m in itertools.product(range(N + 1), repeat=2):
        projs = [l.projection(m, i) for i in range(m)]
        ys = [decode_tuple(y, s, m) for y in range(s ** m)]
        for f in C.hom(n, m):
            comps = [pos[C.comp[(p, f)]] for p in projs]
            for g in unary[m]:
                h = pos[C.comp[(g, f)]]
                eg = pos[g]
                for x in range(s ** n):
                    ins = [(n, c, x) for c in comps]
                    for y in range(s ** m):
                        prob.propagate(ins + [(m, eg, y)], (n, h, x),
                                       lambda *v, want=ys[y]: v[-1] if v[:-1] == want else SKIP)
    out = []
    for sol in prob.solutions():
        interp = {(n, e): tuple(sol[(n, e, x)] for x in range(s ** n))
                  for n in range(N + 1) for e in range(len(unary[n]))}
        out.append(Model(s, interp))
    return out


def is_homomorphism(h: tuple[int, ...], A: Model, B: Model, N: int) -> bool:
    s, t = A.carrier, B.carrier
    for (n, e), table in A.interp.items():
        other = B.interp[(n, e)]
        for x in range(s ** n):
            if h[table[x]] != other[encode_tuple([h[v] for v in decode_tuple(x, s, n)], t)]:
                return False
    return True


def _category(objects: list[Model], N: int, kind: str) -> ModelCategory:
    arrows, maps, index = [], [], {}
    for p, A in enumerate(objects):
        for q, B in enumerate(objects):
            for h in itertools.product(range(B.carrier), repeat=A.carrier):
                if is_homomorphism(h, A, B, N):
                    index[(p, q, h)] = len(arrows)
                    arrows.append((p, q))
                    maps.append(h)
    ident = [index[(p, p, tuple(range(A.carrier)))] for p, A in enumerate(objects)]

    def compose(g, f):
        p, r = arrows[f][0], arrows[g][1]
        return index[(p, r, tuple(maps[g][v] for v in maps[f]))]

    labels = [f"{kind}{n}[{A.carrier}]" for n, A in enumerate(objects)]
    cat = FinCategory.build(len(objects), arrows, ident, compose, obj_labels=labels)
    return ModelCategory(objects, cat, maps, kind)


def enumerate_models(l: LawTheory, k: int, check: bool = True) -> ModelCategory:
    """Models with M(n) = X^n strictly, |X| <= k, and their homomorphisms."""
    if k < 0:
        raise PreconditionError("carrier bound must be nonnegative")
    if check:
        problems = check_law_theory(l)
        if problems:
            raise PreconditionError("not a truncated Lawvere theory: " + problems[0])
    check_candidates(k ** l.N, "model interpretation tables")
    objects = [M for s in range(k + 1) for M in _models_with_carrier(l, s)]
    objects.sort(key=Model.key)
    out = _category(objects, l.N, "M")
    out.meta["theory"] = l
    return out


def enumerate_algebras(t: TabMonad, k: int) -> ModelCategory:
    """Algebras of t as models of its theory: an operation table for each
    element of T(n)."""
    l = monad_to_theory(t)
    models = enumerate_models(l, k, check=False)
    labels = [f"A{n}[{A.carrier}]" for n, A in enumerate(models.objects)]
    cat = FinCategory(models.cat.n_obj, models.cat.dom, models.cat.cod, models.cat.ident,
                      models.cat.comp, tuple(labels))
    return ModelCategory(models.objects, cat, models.maps, "algebra", {"theory": l, "monad": t})


# ---------------------------------------------------------------------------
# Eilenberg-Moore algebras, computed directly from the Kleisli data


@dataclass(eq=False)
class EMAlgebra:
    carrier: int
    structure: tuple[int, ...]  # T(carrier) -> carrier


def _T_map(t: TabMonad, h: tuple[int, ...], s: int, s1: int) -> tuple[int, ...]:
    return t.kleisli(s1, tuple(t.unit[s1][v] for v in h)) if s else ()


def em_algebras(t: TabMonad, k: int) -> tuple[list[EMAlgebra], FinCategory, list[tuple[int, ...]]]:
    """Structure maps a: T(s) -> s with a unit = id and a ext(f) = a ext(unit a f)
    for every f in T(s)^m, m <= N; morphisms h with h a = a' T(h)."""
    if k > t.N:
        raise PreconditionError(f"carrier bound {k} exceeds the arity bound {t.N}")
    algs = []
    for s in range(k + 1):
        check_candidates(s ** t.sizes[s], "structure maps")
        for a in itertools.product(range(s), repeat=t.sizes[s]):
            if any(a[t.unit[s][i]] != i for i in range(s)):
                continue
            ok = True
            for m in range(t.N + 1):
                for f in t.tuples(s, m):
                    lhs = t.kleisli(s, f)
                    rhs = t.kleisli(s, tuple(t.unit[s][a[v]] for v in f))
                    if any(a[lhs[c]] != a[rhs[c]] for c in range(t.sizes[m])):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                algs.append(EMAlgebra(s, a))
    arrows, maps, index = [], [], {}
    for p, A in enumerate(algs):
        for q, B in enumerate(algs):
            for h in itertools.product(range(B.carrier), repeat=A.carrier):
                Th = _T_map(t, h, A.carrier, B.carrier)
                if A.carrier and any(h[A.structure[c]] != B.structure[Th[c]] for c in range(t.sizes[A.carrier])):
                    continue
                index[(p, q, h)] = len(arrows)
                arrows.append((p, q))
                maps.append(h)
    ident = [index[(p, p, tuple(range(A.carrier)))] for p, A in enumerate(algs)]

    def compose(g, f):
        return index[(arrows[f][0], arrows[g][1], tuple(maps[g][v] for v in maps[f]))]

    cat = FinCategory.build(len(algs), arrows, ident, compose)
    return algs, cat, maps


def em_to_model(t: TabMonad, A: EMAlgebra) -> Model:
    """The operation of e in T(n) at x in X^n is a(ext(unit x)(e))."""
    s = A.carrier
    interp = {}
    for n in range(t.N + 1):
        tables = []
        for x in range(s ** n):
            xs = decode_tuple(x, s, n)
            e = t.kleisli(s, tuple(t.unit[s][v] for v in xs))
            tables.append([A.structure[e[c]] for c in range(t.sizes[n])])
        for c in range(t.sizes[n]):
            interp[(n, c)] = tuple(tables[x][c] for x in range(s ** n))
    return Model(s, interp)


def _hom_sizes(cat: FinCategory) -> list[list[int]]:
    return [[len(cat.hom(a, b)) for b in range(cat.n_obj)] for a in range(cat.n_obj)]


def _iso_classes(cat: FinCategory, carriers: list[int]) -> list[int]:
    reps: list[int] = []
    for a in range(cat.n_obj):
        if not any(cat.isomorphic(r, a) is not None for r in reps):
            reps.append(a)
    return sorted(carriers[r] for r in reps)


def check_triangle(t: TabMonad, k: int, with_semantics: bool = True) -> dict:
    """Algebras vs models vs the enriched semantics, at carrier bound k.

    The comparison functor sends an Eilenberg-Moore algebra to the model
    interpreting each element of T(n) through the structure map, and is
    certified to be an isomorphism of finite categories. With `semantics`,
    the category of enriched functors from the one-object embedding into
    S_k is compared the same way (and with the semantics of Gamma of the
    theory, through restriction along the unit).
    """
    models = enumerate_algebras(t, k)
    idx = models.index()
    mindex = {(a, b, h): n for n, ((a, b), h) in enumerate(zip(zip(models.cat.dom, models.cat.cod), models.maps))}
    algs, em_cat, em_maps = em_algebras(t, k)
    report: dict = {"objects": models.cat.n_obj, "morphisms": models.cat.n_mor,
                    "carriers": models.carriers(), "iso_classes": _iso_classes(models.cat, models.carriers())}
    failures = []
    obj_map = []
    for A in algs:
        key = em_to_model(t, A).key()
        if key not in idx:
            failures.append(f"algebra {A.structure} on {A.carrier} elements has no matching model")
            obj_map.append(-1)
        else:
            obj_map.append(idx[key])
    comparison = None
    if not failures:
        mors = []
        for m, h in enumerate(em_maps):
            key = (obj_map[em_cat.dom[m]], obj_map[em_cat.cod[m]], h)
            if key not in mindex:
                failures.append(f"algebra morphism {h} is not a model morphism")
                break
            mors.append(mindex[key])
        if not failures:
            comparison = FunctorData(em_cat, models.cat, tuple(obj_map), tuple(mors))
            if check_functor(comparison) or not is_isomorphism(comparison):
                rep = functor_report(comparison)
                failures.append(f"comparison functor is not an isomorphism: {rep}")
    report["algebra_model_isomorphism"] = not failures
    if with_semantics and not failures:
        report["semantics"] = _semantics_check(t, k, models, mindex, failures)
    report["failures"] = failures
    report["passed"] = not failures
    return report


def _semantics_check(t: TabMonad, k: int, models: ModelCategory, mindex: dict, failures: list) -> dict:
    base = named_base(f"trunc{t.N}")
    c = monad_to_oneobject(tabmonad_to_lexmonad(t, base), check=False)
    sem = semantics(c, k)
    idx = models.index()
    obj_map = []
    for F in sem.objects:
        s = F.points[0].carrier
        interp = {(n, e): F.action[(0, 0, n, 1, e)] for n in range(t.N + 1) for e in range(t.sizes[n])}
        key = Model(s, interp).key()
        if key not in idx:
            failures.append(f"enriched functor on carrier {s} has no matching model")
            return {"passed": False}
        obj_map.append(idx[key])
    mors = []
    for a, b, comp in sem.morphisms:
        s = sem.objects[a].points[0].carrier
        h = tuple(comp[1:1 + s])  # component at arity 1 (after the one at arity 0)
        key = (obj_map[a], obj_map[b], h)
        if key not in mindex:
            failures.append(f"enriched transformation {h} is not a model morphism")
            return {"passed": False}
        mors.append(mindex[key])
    F = FunctorData(sem.cat, models.cat, tuple(obj_map), tuple(mors))
    iso = not check_functor(F) and is_isomorphism(F)
    if not iso:
        failures.append("semantics of the one-object embedding is not isomorphic to the models")
    K = eta(c)
    sem_g = semantics(K.dst, k)
    R = restrict(sem_g, sem, K)
    equiv = not check_functor(R) and is_equivalence(R)
    counts = (sem_g.cat.n_obj, sem_g.cat.n_mor) == (sem.cat.n_obj, sem.cat.n_mor)
    if not (equiv and counts):
        failures.append("semantics of Gamma(theory) does not restrict to an equivalence")
    return {"objects": sem.cat.n_obj, "morphisms": sem.cat.n_mor, "models_isomorphism": iso,
            "gamma_objects": sem_g.cat.n_obj, "gamma_morphisms": sem_g.cat.n_mor,
            "restriction_equivalence": equiv, "counts_equal": counts, "passed": iso and equiv and counts}
