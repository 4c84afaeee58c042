"""Monads in LexProf, their one-object W-categories, and the round trip
with Lawvere theories (identity-on-objects lex functors J: A -> L).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable

from ..errors import PreconditionError
from ..fincat import FinCategory, FunctorData, LexBase, check_functor, check_lex_functor
from ..finset import decode_tuple, encode_tuple
from ..lexprof import (LexProf1Cell, ProfMorphism, canonical_2cell, compose_prof, identity_prof,
                       two_cell_problem)
from ..search import Problem
from .completion import ParflCategory, integrate
from .core import WCategory, check_wcategory


@dataclass(eq=False)
class LexMonad:
    """T: A -/-> A with unit I_A => T and multiplication given elementwise:
    ``compose(i, j, k, g, f)`` for f in T(i, j), g in T(j, k)."""

    cell: LexProf1Cell
    unit: ProfMorphism
    compose: Callable[[int, int, int, int, int], int]
    name: str = ""

    @property
    def base(self) -> LexBase:
        return self.cell.src

    def mult(self) -> ProfMorphism:
        """The multiplication as a 2-cell T.T => T, verified to descend to
        the coend."""
        T = self.cell
        TT = compose_prof(T, T)
        return canonical_2cell(TT, T, lambda i, k, j, g, f: self.compose(i, j, k, g, f), "multiplication")


def monad_to_oneobject(m: LexMonad, check: bool = True) -> WCategory:
    A = m.base
    Ac = A.cat
    c = WCategory(["*"], [A], {(0, 0): m.cell},
                  lambda X, Y, Z, i, j, k, g, f: m.compose(i, j, k, g, f),
                  lambda X, phi: m.unit(Ac.dom[phi], Ac.cod[phi], Ac.hom_pos[phi]),
                  name=m.name or "T")
    c.meta["monad"] = m
    if check:
        problems = check_wcategory(c)
        if problems:
            raise PreconditionError("monad laws fail: " + problems[0])
    return c


def identity_monad(A: LexBase) -> LexMonad:
    I = identity_prof(A)
    C = A.cat
    unit = ProfMorphism(identity_prof(A), I, {ij: tuple(range(n)) for ij, n in I.sizes.items()})

    def compose(i, j, k, g, f):
        return C.hom_pos[C.comp[(C.hom(j, k)[g], C.hom(i, j)[f])]]

    return LexMonad(I, unit, compose, name=f"Id[{A.name}]")


# ---------------------------------------------------------------------------
# Monads on lattices


def relation_monad(A: LexBase, rel: tuple[tuple[bool, ...], ...]) -> LexMonad:
    """T(i, j) = [rel(i, j)] for a relation containing the order, transitive,
    with every row a filter."""
    lat = A.lattice
    n = lat.size
    for i, j in itertools.product(range(n), repeat=2):
        if lat.leq[i][j] and not rel[i][j]:
            raise PreconditionError(f"relation does not contain the order at ({i}, {j})")
    cell = LexProf1Cell.build(A, A, lambda i, j: int(rel[i][j]), lambda a, b, x: 0, lambda a, b, x: 0,
                              name="T")
    I = identity_prof(A)
    unit = ProfMorphism(I, cell, {ij: (0,) * k for ij, k in I.sizes.items()})
    return LexMonad(cell, unit, lambda i, j, k, g, f: 0, name="T" + "".join(
        "".join("1" if x else "0" for x in row) for row in rel))


def enumerate_lattice_monads(A: LexBase) -> list[LexMonad]:
    """All monads on the identity-extent lattice A: rows are filters
    containing the principal filter of i, and the relation is transitive.
    Monads here are subsingleton-valued, so laws reduce to these conditions."""
    lat = A.lattice
    n = lat.size
    filters = lat.filters()
    rows = [[f for f in filters if all(j in f for j in range(n) if lat.leq[i][j])] for i in range(n)]
    out = []
    for choice in itertools.product(*rows):
        rel = tuple(tuple(j in choice[i] for j in range(n)) for i in range(n))
        if all(not (rel[i][j] and rel[j][k]) or rel[i][k] for i, j, k in itertools.product(range(n), repeat=3)):
            out.append(relation_monad(A, rel))
    return out


def interior_operators(A: LexBase) -> list[tuple[int, ...]]:
    """Monotone, deflationary, idempotent maps; an independent count of the
    lattice monads (T(i, j) = [g(i) <= j])."""
    lat = A.lattice
    n = lat.size
    out = []
    for g in itertools.product(range(n), repeat=n):
        if (all(lat.leq[g[i]][i] for i in range(n)) and all(g[g[i]] == g[i] for i in range(n))
                and all(lat.leq[g[i]][g[j]] for i in range(n) for j in range(n) if lat.leq[i][j])):
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# Tabulated monads on Set, truncated at arity N


def tabmonad_to_lexmonad(t, A: LexBase) -> LexMonad:
    """T(n, m) = (Tn)^m (row-major tuples); composition is Kleisli,
    left action relabels variables, right action reindexes tuples."""
    tb = A.trunc
    if tb is None or tb.max_arity != t.N:
        raise PreconditionError("base does not match the monad's arity bound")
    S = t.sizes

    def ext(n, f_tuple):
        return t.ext[(n, len(f_tuple), tuple(f_tuple))]

    def iota(n, m, tab):
        return tuple(t.unit[n][tab[l]] for l in range(m))

    def lact(alpha, m, x):
        n1, n, tab = tb.arrows[alpha]
        xs = decode_tuple(x, S[n], m)
        e = ext(n1, iota(n1, n, tab))
        return encode_tuple([e[v] for v in xs], S[n1])

    def ract(n, beta, x):
        m, m1, tab = tb.arrows[beta]
        xs = decode_tuple(x, S[n], m)
        return encode_tuple([xs[tab[l]] for l in range(m1)], S[n])

    cell = LexProf1Cell.build(A, A, lambda n, m: S[n] ** m, lact, ract, name="T")
    I = identity_prof(A)
    C = A.cat
    ucomps = {}
    for (n, m), k in I.sizes.items():
        ucomps[(n, m)] = tuple(encode_tuple(iota(n, m, tb.arrows[h][2]), S[n]) for h in C.hom(n, m))
    unit = ProfMorphism(I, cell, ucomps)

    decoded = {(n, m): [decode_tuple(x, S[n], m) for x in range(S[n] ** m)]
               for n in range(t.N + 1) for m in range(t.N + 1)}

    # the axiom checks ask for the same composites many times over
    @functools.lru_cache(maxsize=None)
    def compose(i, j, k, g, f):
        e = t.ext[(i, j, decoded[(i, j)][f])]
        return encode_tuple([e[v] for v in decoded[(j, k)][g]], S[i])

    return LexMonad(cell, unit, compose, name=getattr(t, "name", "") or "T")


# ---------------------------------------------------------------------------
# Theories


@dataclass(eq=False)
class LawvereWCat:
    base: LexBase
    theory: ParflCategory
    J: FunctorData

    @property
    def cat(self) -> FinCategory:
        return self.theory.cat


def check_lawvere(lw: LawvereWCat) -> list[str]:
    report = [f"J: {q}" for q in check_functor(lw.J)]
    if lw.J.obj_map != tuple(range(lw.base.n_obj)) or lw.cat.n_obj != lw.base.n_obj:
        report.append("J is not identity-on-objects")
    report += [f"J: {q}" for q in check_lex_functor(lw.base, lw.J)]
    return report


def theory_from_monad(m: LexMonad) -> LawvereWCat:
    """J = iota of the one-object W-category, into its integral."""
    c = monad_to_oneobject(m)
    p = integrate(c)
    A, J = p.gens[0]
    return LawvereWCat(A, p, J)


def monad_from_theory(lw: LawvereWCat) -> LexMonad:
    """T(i, j) = L(Ji, Jj), acted on through J; unit is J, multiplication
    is composition in L."""
    problems = check_lawvere(lw)
    if problems:
        raise PreconditionError("not a Lawvere theory: " + problems[0])
    A, L, J = lw.base, lw.cat, lw.J
    Ac = A.cat
    pos = L.hom_pos

    def lact(alpha, j, x):
        h = L.hom(J.obj_map[Ac.cod[alpha]], J.obj_map[j])[x]
        return pos[L.comp[(h, J.mor_map[alpha])]]

    def ract(i, beta, x):
        h = L.hom(J.obj_map[i], J.obj_map[Ac.dom[beta]])[x]
        return pos[L.comp[(J.mor_map[beta], h)]]

    cell = LexProf1Cell.build(A, A, lambda i, j: len(L.hom(J.obj_map[i], J.obj_map[j])), lact, ract, name="T")
    I = identity_prof(A)
    unit = ProfMorphism(I, cell, {(i, j): tuple(pos[J.mor_map[h]] for h in Ac.hom(i, j)) for i, j in I.sizes})

    def compose(i, j, k, g, f):
        return pos[L.comp[(L.hom(j, k)[g], L.hom(i, j)[f])]]

    return LexMonad(cell, unit, compose, name="T(L)")


def find_monad_iso(m1: LexMonad, m2: LexMonad) -> ProfMorphism | None:
    """An invertible 2-cell T1 => T2 preserving units and composition."""
    T1, T2 = m1.cell, m2.cell
    if T1.src is not T2.src or T1.sizes != T2.sizes:
        return None
    A = T1.src.cat
    n = A.n_obj
    for s in two_cell_problem(T1, T2).solutions():
        th = ProfMorphism(T1, T2, {(a, b): tuple(s[(a, b, x)] for x in range(k)) for (a, b), k in T1.sizes.items()})
        if not th.is_iso():
            continue
        if any(th(i, j, m1.unit(i, j, h)) != m2.unit(i, j, h)
               for (i, j), k in m1.unit.src.sizes.items() for h in range(k)):
            continue
        if all(th(i, k, m1.compose(i, j, k, g, f)) == m2.compose(i, j, k, th(j, k, g), th(i, j, f))
               for i, j, k in itertools.product(range(n), repeat=3)
               for g in range(T1.size(j, k)) for f in range(T1.size(i, j))):
            return th
    return None


def find_theory_iso(l1: LawvereWCat, l2: LawvereWCat) -> FunctorData | None:
    """An identity-on-objects isomorphism K: L1 -> L2 with K J1 = J2.

    Values at product apexes are forced from the legs (J preserves the
    base's cones), which keeps the search to the generating operations.
    """
    if l1.base is not l2.base:
        return None
    L1, L2 = l1.cat, l2.cat
    if L1.n_obj != L2.n_obj or any(len(L1.hom(i, j)) != len(L2.hom(i, j))
                                   for i in range(L1.n_obj) for j in range(L1.n_obj)):
        return None
    prob = Problem()
    for m in range(L1.n_mor):
        prob.var(m, L2.hom(L1.dom[m], L1.cod[m]))
    for h in range(l1.base.cat.n_mor):
        prob.propagate([], l1.J.mor_map[h], lambda h=h: l2.J.mor_map[h])
    for (g, f), h in L1.comp.items():
        prob.propagate([g, f], h, lambda u, v: L2.comp[(u, v)])
    for cone in l1.base.cones:
        p1, q1 = l1.J.mor_map[cone.proj_left], l1.J.mor_map[cone.proj_right]
        p2, q2 = l2.J.mor_map[cone.proj_left], l2.J.mor_map[cone.proj_right]
        for c in range(L1.n_obj):
            pair2 = {(L2.comp[(p2, x)], L2.comp[(q2, x)]): x for x in L2.hom(c, cone.apex)}
            for x in L1.hom(c, cone.apex):
                prob.propagate([L1.comp[(p1, x)], L1.comp[(q1, x)]], x,
                               lambda u, v, pair2=pair2: pair2.get((u, v), -1))
    for s in prob.solutions():
        mm = tuple(s[m] for m in range(L1.n_mor))
        if len(set(mm)) == len(mm):
            return FunctorData(L1, L2, tuple(range(L1.n_obj)), mm)
    return None


def roundtrip_monad(m: LexMonad) -> dict:
    lw = theory_from_monad(m)
    m2 = monad_from_theory(lw)
    lw2 = theory_from_monad(m2)
    iso_m = find_monad_iso(m2, m)
    iso_l = find_theory_iso(lw, lw2)
    return {"monad_iso": iso_m is not None, "theory_iso": iso_l is not None,
            "passed": iso_m is not None and iso_l is not None,
            "sizes": {f"{i},{j}": n for (i, j), n in sorted(m.cell.sizes.items())}}
