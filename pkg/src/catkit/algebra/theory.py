"""Lawvere theories truncated at arity N and their tabulated monads."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..errors import ParseError, PreconditionError
from ..fincat import FinCategory, FunctorData, LexBase, check_functor, named_base
from ..finset import decode_tuple, encode_tuple
from .tabulate import TabMonad, check_kleisli


@dataclass(eq=False)
class LawTheory:
    """Objects 0..N; J: the truncated arity base -> cat, identity on objects."""

    N: int
    base: LexBase
    cat: FinCategory
    J: FunctorData
    name: str = ""

    def __repr__(self):
        return f"LawTheory({self.name or '?'}, N={self.N})"

    def hom(self, n: int, m: int) -> list[int]:
        return self.cat.hom(n, m)

    def projection(self, n: int, i: int) -> int:
        """J of the i-th projection n -> 1."""
        return self.J.mor_map[self.base.trunc.mor(n, 1, (i,))]

    @cached_property
    def untuple(self) -> dict[tuple[int, int, tuple[int, ...]], int]:
        """(k, n, components) -> the morphism k -> n with those components."""
        out = {}
        C = self.cat
        for k, n in itertools.product(range(self.N + 1), repeat=2):
            projs = [self.projection(n, i) for i in range(n)]
            for f in C.hom(k, n):
                out[(k, n, tuple(C.comp[(p, f)] for p in projs))] = f
        return out


def _category_laws(l: LawTheory) -> list[str]:
    # associativity is only checked for composites into 1: with the tupling
    # bijection, h(gf) and (hg)f agree as soon as their components do
    C = l.cat
    report = []
    for (g, f), h in C.comp.items():
        if C.dom[g] != C.cod[f] or not 0 <= h < C.n_mor or (C.dom[h], C.cod[h]) != (C.dom[f], C.cod[g]):
            return [f"composite of {g} after {f} is ill-typed"]
    for f in range(C.n_mor):
        if (C.ident[C.cod[f]], f) not in C.comp or C.comp[(C.ident[C.cod[f]], f)] != f:
            report.append(f"left identity fails at {C.mor_label(f)}")
        if (f, C.ident[C.dom[f]]) not in C.comp or C.comp[(f, C.ident[C.dom[f]])] != f:
            report.append(f"right identity fails at {C.mor_label(f)}")
    if report:
        return report
    for a, b, c in itertools.product(range(C.n_obj), repeat=3):
        for h in C.hom(c, 1):
            for g in C.hom(b, c):
                hg = C.comp[(h, g)]
                for f in C.hom(a, b):
                    if C.comp[(h, C.comp[(g, f)])] != C.comp[(hg, f)]:
                        return [f"associativity fails at ({C.mor_label(h)}, {C.mor_label(g)}, {C.mor_label(f)})"]
    return report


def check_law_theory(l: LawTheory) -> list[str]:
    C = l.cat
    if C.n_obj != l.N + 1 or l.J.obj_map != tuple(range(l.N + 1)):
        return ["J is not identity-on-objects"]
    expected = sum(len(C.hom(C.cod[f], c)) for f in range(C.n_mor) for c in range(C.n_obj))
    if len(C.comp) != expected:
        return ["composition table is incomplete"]
    report = [f"category: {q}" for q in _category_laws(l)]
    report += [f"J: {q}" for q in check_functor(l.J)]
    if report:
        return report
    for k, n in itertools.product(range(l.N + 1), repeat=2):
        unary = len(C.hom(k, 1))
        projs = [l.projection(n, i) for i in range(n)]
        images = {tuple(C.comp[(p, f)] for p in projs) for f in C.hom(k, n)}
        if len(images) != len(C.hom(k, n)) or len(images) != unary ** n:
            report.append(f"tupling bijection fails: hom({k},{n}) -> hom({k},1)^{n}")
    return report


def _offsets(sizes, N):
    offs, total = {}, 0
    for n, m in itertools.product(range(N + 1), repeat=2):
        offs[(n, m)] = total
        total += sizes[n] ** m
    return offs, total


def monad_to_theory(t: TabMonad, base: LexBase | None = None) -> LawTheory:
    """hom(n, m) = T(n)^m (row-major), composed by Kleisli extension."""
    N, S = t.N, t.sizes
    if N < 1:
        raise PreconditionError("a theory needs arity bound at least 1 (operations are arrows into 1)")
    base = base or named_base(f"trunc{N}")
    if base.trunc is None or base.trunc.max_arity != N:
        raise PreconditionError(f"base {base.name} does not have arity bound {N}")
    offs, total = _offsets(S, N)
    arrows = [(n, m) for n, m in itertools.product(range(N + 1), repeat=2) for _ in range(S[n] ** m)]

    def element(h):
        n, m = arrows[h]
        return decode_tuple(h - offs[(n, m)], S[n], m)

    def compose(g, f):
        n, m = arrows[f]
        k = arrows[g][1]
        e = t.kleisli(n, element(f))
        return offs[(n, k)] + encode_tuple([e[v] for v in element(g)], S[n])

    ident = [offs[(n, n)] + encode_tuple(t.unit[n], S[n]) for n in range(N + 1)]
    labels = None
    if t.labels:
        labels = [f"<{', '.join(t.labels[arrows[h][0]][v] for v in element(h))}>" for h in range(total)]
    cat = FinCategory.build(N + 1, arrows, ident, compose, obj_labels=[str(n) for n in range(N + 1)],
                            mor_labels=labels)
    tb = base.trunc
    jmap = tuple(offs[(n, m)] + encode_tuple([t.unit[n][tab[l]] for l in range(m)], S[n])
                 for n, m, tab in tb.arrows)
    J = FunctorData(base.cat, cat, tuple(range(N + 1)), jmap)
    return LawTheory(N, base, cat, J, name=t.name)


def theory_to_monad(l: LawTheory) -> TabMonad:
    """T(n) = hom(n, 1); unit from J; ext from composition."""
    problems = check_law_theory(l)
    if problems:
        raise PreconditionError("not a truncated Lawvere theory: " + problems[0])
    C, N = l.cat, l.N
    pos = C.hom_pos
    sizes = tuple(len(C.hom(n, 1)) for n in range(N + 1))
    unit = tuple(tuple(pos[l.projection(n, i)] for i in range(n)) for n in range(N + 1))
    ext = {}
    for n, m in itertools.product(range(N + 1), repeat=2):
        unary_n, unary_m = C.hom(n, 1), C.hom(m, 1)
        for f in itertools.product(range(sizes[n]), repeat=m):
            ff = l.untuple[(n, m, tuple(unary_n[v] for v in f))]
            ext[(n, m, f)] = tuple(pos[C.comp[(g, ff)]] for g in unary_m)
    t = TabMonad(N, sizes, unit, ext, name=l.name)
    problems = check_kleisli(t)
    if problems:
        raise PreconditionError("Kleisli laws fail: " + problems[0])
    return t


def compare_theories(l: LawTheory, other_cat: FinCategory, other_J: FunctorData) -> list[str]:
    """Table-for-table comparison with another presentation of a theory
    (same object numbering and hom ordering)."""
    C, D = l.cat, other_cat
    report = []
    if C.n_obj != D.n_obj:
        return [f"object count {C.n_obj} != {D.n_obj}"]
    if (C.dom, C.cod) != (D.dom, D.cod):
        report.append("morphism domains/codomains differ")
    if C.ident != D.ident:
        report.append("identities differ")
    if C.comp != D.comp:
        bad = next(k for k in C.comp if D.comp.get(k) != C.comp[k])
        report.append(f"composition differs at {bad}")
    if l.J.mor_map != other_J.mor_map or l.J.obj_map != other_J.obj_map:
        report.append("J tables differ")
    return report


def theory_to_json(l: LawTheory) -> dict:
    C = l.cat
    return {
        "kind": "theory",
        "name": l.name,
        "N": l.N,
        "hom_sizes": [[len(C.hom(n, m)) for m in range(l.N + 1)] for n in range(l.N + 1)],
        "dom": list(C.dom),
        "cod": list(C.cod),
        "ident": list(C.ident),
        "comp": [[g, f, h] for (g, f), h in sorted(C.comp.items())],
        "J": list(l.J.mor_map),
    }


def theory_from_json(data: dict) -> LawTheory:
    try:
        N = int(data["N"])
        base = named_base(f"trunc{N}")
        dom, cod = data["dom"], data["cod"]
        comp = {(int(g), int(f)): int(h) for g, f, h in data["comp"]}
        cat = FinCategory(N + 1, tuple(dom), tuple(cod), tuple(data["ident"]), comp)
        J = FunctorData(base.cat, cat, tuple(range(N + 1)), tuple(data["J"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed theory: {exc}") from exc
    if N < 1:
        raise ParseError("a theory needs arity bound at least 1")
    if len(J.mor_map) != base.cat.n_mor:
        raise ParseError("J table has the wrong length")
    return LawTheory(N, base, cat, J, name=data.get("name", ""))
