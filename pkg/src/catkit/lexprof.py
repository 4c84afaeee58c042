"""Lex profunctors: the 1-cells and 2-cells of the bicategory LexProf.

A 1-cell M: A -/-> B assigns a finite set M(a, b) to each pair of objects,
contravariantly in a (``lact``) and covariantly in b (``ract``), and
preserves the listed limit cones of B in its second variable.

Composition is the coend (N . M)(a, c) = colim over b of N(b, c) x M(a, b),
computed as a quotient of a disjoint union; right closure [M, P] is the end
of natural families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import CompositionError, InvariantError, PreconditionError
from .fincat import FunctorData, LexBase, check_lex_functor
from .finset import FinSetObj, Partition, decode_tuple, encode_tuple
from .search import Problem


# ---------------------------------------------------------------------------
# 1-cells


@dataclass(eq=False)
class LexProf1Cell:
    """``lact[(alpha, b)]`` tabulates M(a, b) -> M(a', b) for alpha: a' -> a;
    ``ract[(a, beta)]`` tabulates M(a, b) -> M(a, b') for beta: b -> b'."""

    src: LexBase
    dst: LexBase
    sizes: dict[tuple[int, int], int]
    lact: dict[tuple[int, int], tuple[int, ...]]
    ract: dict[tuple[int, int], tuple[int, ...]]
    name: str = ""
    coend: "CoendData | None" = field(default=None, repr=False)

    def value(self, a: int, b: int) -> FinSetObj:
        return FinSetObj(self.sizes[(a, b)])

    def size(self, a: int, b: int) -> int:
        return self.sizes[(a, b)]

    def pairs(self) -> Iterator[tuple[int, int]]:
        return itertools.product(range(self.src.n_obj), range(self.dst.n_obj))

    def key(self) -> tuple:
        return (tuple(sorted(self.sizes.items())), tuple(sorted(self.lact.items())),
                tuple(sorted(self.ract.items())))

    def same_tables(self, other: "LexProf1Cell") -> bool:
        return self.src is other.src and self.dst is other.dst and self.key() == other.key()

    def __repr__(self):
        return f"LexProf1Cell({self.name or '?'}: {self.src.name} -/-> {self.dst.name})"

    @classmethod
    def build(cls, src: LexBase, dst: LexBase, size: Callable[[int, int], int],
              lact: Callable[[int, int, int], int], ract: Callable[[int, int, int], int],
              name: str = "") -> "LexProf1Cell":
        """Tabulate from element functions: lact(alpha, b, x), ract(a, beta, x)."""
        A, B = src.cat, dst.cat
        sizes = {(a, b): size(a, b) for a in range(A.n_obj) for b in range(B.n_obj)}
        lt = {}
        for alpha in range(A.n_mor):
            a = A.cod[alpha]
            for b in range(B.n_obj):
                lt[(alpha, b)] = tuple(lact(alpha, b, x) for x in range(sizes[(a, b)]))
        rt = {}
        for beta in range(B.n_mor):
            b = B.dom[beta]
            for a in range(A.n_obj):
                rt[(a, beta)] = tuple(ract(a, beta, x) for x in range(sizes[(a, b)]))
        return cls(src, dst, sizes, lt, rt, name)


def pairing(M: LexProf1Cell, a: int, cone) -> dict[tuple[int, int], int]:
    """Inverse of the comparison M(a, apex) -> M(a, left) x M(a, right)."""
    pl, pr = M.ract[(a, cone.proj_left)], M.ract[(a, cone.proj_right)]
    return {(pl[x], pr[x]): x for x in range(M.size(a, cone.apex))}


def check_cell(M: LexProf1Cell) -> list[str]:
    """Functoriality of both actions, their interchange, and lexness in the
    second variable."""
    A, B = M.src.cat, M.dst.cat
    report = []
    for alpha in range(A.n_mor):
        for b in range(B.n_obj):
            t = M.lact[(alpha, b)]
            n_to = M.size(A.dom[alpha], b)
            if len(t) != M.size(A.cod[alpha], b) or any(not 0 <= y < n_to for y in t):
                report.append(f"lact({A.mor_label(alpha)}, {b}) is not a function")
    for beta in range(B.n_mor):
        for a in range(A.n_obj):
            t = M.ract[(a, beta)]
            n_to = M.size(a, B.cod[beta])
            if len(t) != M.size(a, B.dom[beta]) or any(not 0 <= y < n_to for y in t):
                report.append(f"ract({a}, {B.mor_label(beta)}) is not a function")
    if report:
        return report
    for a, b in M.pairs():
        if M.lact[(A.ident[a], b)] != tuple(range(M.size(a, b))):
            report.append(f"lact of identity at ({a}, {b}) is not the identity")
        if M.ract[(a, B.ident[b])] != tuple(range(M.size(a, b))):
            report.append(f"ract of identity at ({a}, {b}) is not the identity")
    for (g, f), h in A.comp.items():
        # f: a'' -> a', g: a' -> a; acting on the left reverses order
        for b in range(B.n_obj):
            tg, tf = M.lact[(g, b)], M.lact[(f, b)]
            if tuple(tf[x] for x in tg) != M.lact[(h, b)]:
                report.append(f"lact not functorial at ({A.mor_label(g)}, {A.mor_label(f)}), b={b}")
    for (g, f), h in B.comp.items():
        for a in range(A.n_obj):
            tg, tf = M.ract[(a, g)], M.ract[(a, f)]
            if tuple(tg[x] for x in tf) != M.ract[(a, h)]:
                report.append(f"ract not functorial at ({B.mor_label(g)}, {B.mor_label(f)}), a={a}")
    for alpha in range(A.n_mor):
        a1, a = A.dom[alpha], A.cod[alpha]
        for beta in range(B.n_mor):
            b, b1 = B.dom[beta], B.cod[beta]
            la0, la1 = M.lact[(alpha, b)], M.lact[(alpha, b1)]
            ra0, ra1 = M.ract[(a, beta)], M.ract[(a1, beta)]
            for x in range(M.size(a, b)):
                if la1[ra0[x]] != ra1[la0[x]]:
                    report.append(f"actions do not commute at ({A.mor_label(alpha)}, "
                                  f"{B.mor_label(beta)}), element {x}")
                    break
    report.extend(check_lexness(M))
    return report


def check_lexness(M: LexProf1Cell) -> list[str]:
    report = []
    for a in range(M.src.n_obj):
        if M.dst.terminal is not None and M.size(a, M.dst.terminal) != 1:
            report.append(f"value at ({a}, terminal) has size {M.size(a, M.dst.terminal)}, not 1")
        for cone in M.dst.cones:
            pr = pairing(M, a, cone)
            if (len(pr) != M.size(a, cone.apex)
                    or len(pr) != M.size(a, cone.left) * M.size(a, cone.right)):
                report.append(f"product cone ({cone.left}, {cone.right}) not preserved at a={a}")
    return report


def identity_prof(A: LexBase) -> LexProf1Cell:
    """I_A(a', a) = A(a', a), acted on by composition."""
    C = A.cat
    pos = C.hom_pos

    def lact(alpha, b, x):
        h = C.hom(C.cod[alpha], b)[x]
        return pos[C.comp[(h, alpha)]]

    def ract(a, beta, x):
        h = C.hom(a, C.dom[beta])[x]
        return pos[C.comp[(beta, h)]]

    return LexProf1Cell.build(A, A, lambda a, b: len(C.hom(a, b)), lact, ract, name=f"I[{A.name}]")


def hom_element(A: LexBase, m: int) -> int:
    """Index of morphism m within its hom-set, i.e. as an element of I_A."""
    return A.cat.hom_pos[m]


def companion(F: FunctorData, A: LexBase, B: LexBase) -> LexProf1Cell:
    """F_*(b, a) = B(b, Fa), a 1-cell B -/-> A."""
    _require_lex(F, A, B)
    D = B.cat

    def lact(beta, a, x):
        h = D.hom(D.cod[beta], F.obj_map[a])[x]
        return hom_element(B, D.comp[(h, beta)])

    def ract(b, alpha, x):
        h = D.hom(b, F.obj_map[A.cat.dom[alpha]])[x]
        return hom_element(B, D.comp[(F.mor_map[alpha], h)])

    return LexProf1Cell.build(B, A, lambda b, a: len(D.hom(b, F.obj_map[a])), lact, ract,
                              name=f"companion[{A.name}->{B.name}]")


def conjoint(F: FunctorData, A: LexBase, B: LexBase) -> LexProf1Cell:
    """F^*(a, b) = B(Fa, b), a 1-cell A -/-> B."""
    _require_lex(F, A, B)
    D = B.cat

    def lact(alpha, b, x):
        h = D.hom(F.obj_map[A.cat.cod[alpha]], b)[x]
        return hom_element(B, D.comp[(h, F.mor_map[alpha])])

    def ract(a, beta, x):
        h = D.hom(F.obj_map[a], D.dom[beta])[x]
        return hom_element(B, D.comp[(beta, h)])

    return LexProf1Cell.build(A, B, lambda a, b: len(D.hom(F.obj_map[a], b)), lact, ract,
                              name=f"conjoint[{A.name}->{B.name}]")


def _require_lex(F: FunctorData, A: LexBase, B: LexBase):
    if F.src is not A.cat or F.dst is not B.cat:
        raise PreconditionError("functor does not go between the given bases")
    problems = check_lex_functor(A, F)
    if problems:
        raise PreconditionError("map is not lex: " + problems[0])


def relation_cell(A: LexBase, B: LexBase, g: tuple[int, ...]) -> LexProf1Cell:
    """Between lattices: M(a, b) = [g(a) <= b] for a monotone g. Every lex
    1-cell between lattices has this form."""
    la, lb = A.lattice, B.lattice
    for x, y in itertools.product(range(la.size), repeat=2):
        if la.leq[x][y] and not lb.leq[g[x]][g[y]]:
            raise PreconditionError(f"map {g} is not monotone")
    return LexProf1Cell.build(A, B, lambda a, b: int(lb.leq[g[a]][b]),
                              lambda alpha, b, x: 0, lambda a, beta, x: 0, name=f"rel{list(g)}")


def affine_cell(A: LexBase, B: LexBase, P: int, Q: int) -> LexProf1Cell:
    """Between truncated bases: M(n, m) = S(n)^m with S(n) = P*n + Q, i.e.
    P labelled copies of n plus Q constants."""
    ta, tb = A.trunc, B.trunc

    def S(n):
        return P * n + Q

    def s_map(t, n_to, e):
        # apply the function t: n -> n_to to an element of S(n)
        n = len(t)
        if e < P * n:
            p, i = divmod(e, n)
            return p * n_to + t[i]
        return P * n_to + (e - P * n)

    def lact(alpha, b, x):
        a1, a, t = ta.arrows[alpha]  # alpha: a1 -> a is the function t: a -> a1
        xs = decode_tuple(x, S(a), b)
        return encode_tuple([s_map(t, a1, e) for e in xs], S(a1))

    def ract(a, beta, x):
        b, b1, t = tb.arrows[beta]
        xs = decode_tuple(x, S(a), b)
        return encode_tuple([xs[t[i]] for i in range(b1)], S(a))

    return LexProf1Cell.build(A, B, lambda a, b: S(a) ** b, lact, ract, name=f"affine[{P}n+{Q}]")


# ---------------------------------------------------------------------------
# 2-cells


@dataclass(eq=False)
class ProfMorphism:
    src: LexProf1Cell
    dst: LexProf1Cell
    comps: dict[tuple[int, int], tuple[int, ...]]

    def __call__(self, a: int, b: int, x: int) -> int:
        return self.comps[(a, b)][x]

    def key(self) -> tuple:
        return tuple(sorted(self.comps.items()))

    def is_iso(self) -> bool:
        return all(len(set(t)) == len(t) == self.dst.size(a, b) for (a, b), t in self.comps.items())

    def inverse(self) -> "ProfMorphism":
        if not self.is_iso():
            raise ValueError("2-cell is not invertible")
        comps = {}
        for ab, t in self.comps.items():
            inv = [0] * len(t)
            for x, y in enumerate(t):
                inv[y] = x
            comps[ab] = tuple(inv)
        return ProfMorphism(self.dst, self.src, comps)


def identity_2cell(M: LexProf1Cell) -> ProfMorphism:
    return ProfMorphism(M, M, {ab: tuple(range(n)) for ab, n in M.sizes.items()})


def vcompose(t: ProfMorphism, s: ProfMorphism) -> ProfMorphism:
    """t after s."""
    if s.dst is not t.src:
        raise CompositionError("2-cells are not composable")
    return ProfMorphism(s.src, t.dst, {ab: tuple(t.comps[ab][y] for y in s.comps[ab]) for ab in s.comps})


def check_2cell(t: ProfMorphism) -> list[str]:
    M, N = t.src, t.dst
    if M.src is not N.src or M.dst is not N.dst:
        return ["2-cell between non-parallel 1-cells"]
    A, B = M.src.cat, M.dst.cat
    report = []
    for (a, b), comp in t.comps.items():
        if len(comp) != M.size(a, b) or any(not 0 <= y < N.size(a, b) for y in comp):
            report.append(f"component at ({a}, {b}) is not a function")
    if report:
        return report
    for alpha in range(A.n_mor):
        a1, a = A.dom[alpha], A.cod[alpha]
        for b in range(B.n_obj):
            for x in range(M.size(a, b)):
                if t(a1, b, M.lact[(alpha, b)][x]) != N.lact[(alpha, b)][t(a, b, x)]:
                    report.append(f"not natural in the first variable at ({A.mor_label(alpha)}, {b})")
                    break
    for beta in range(B.n_mor):
        b, b1 = B.dom[beta], B.cod[beta]
        for a in range(A.n_obj):
            for x in range(M.size(a, b)):
                if t(a, b1, M.ract[(a, beta)][x]) != N.ract[(a, beta)][t(a, b, x)]:
                    report.append(f"not natural in the second variable at ({a}, {B.mor_label(beta)})")
                    break
    return report


def two_cell_problem(M: LexProf1Cell, N: LexProf1Cell) -> Problem:
    """Variables (a, b, x) -> N(a, b), natural in both variables.

    Values at product apexes are forced from the legs via N's pairing, so
    the free choices are the elements of M not reachable by the actions.
    """
    if M.src is not N.src or M.dst is not N.dst:
        raise CompositionError("2-cells need parallel 1-cells")
    A, B = M.src.cat, M.dst.cat
    prob = Problem()
    for a in range(A.n_obj):
        for b in range(B.n_obj):
            for x in range(M.size(a, b)):
                prob.var((a, b, x), range(N.size(a, b)))
    for alpha in range(A.n_mor):
        a1, a = A.dom[alpha], A.cod[alpha]
        for b in range(B.n_obj):
            lm, ln = M.lact[(alpha, b)], N.lact[(alpha, b)]
            for x in range(M.size(a, b)):
                prob.propagate([(a, b, x)], (a1, b, lm[x]), ln.__getitem__)
    for beta in range(B.n_mor):
        b, b1 = B.dom[beta], B.cod[beta]
        for a in range(A.n_obj):
            rm, rn = M.ract[(a, beta)], N.ract[(a, beta)]
            for x in range(M.size(a, b)):
                prob.propagate([(a, b, x)], (a, b1, rm[x]), rn.__getitem__)
    for a in range(A.n_obj):
        for cone in M.dst.cones:
            pn = pairing(N, a, cone)
            pl, pr = M.ract[(a, cone.proj_left)], M.ract[(a, cone.proj_right)]
            for x in range(M.size(a, cone.apex)):
                prob.propagate([(a, cone.left, pl[x]), (a, cone.right, pr[x])], (a, cone.apex, x),
                               lambda u, v, pn=pn: pn.get((u, v), -1))
    return prob


def _solution_to_2cell(M, N, s) -> ProfMorphism:
    return ProfMorphism(M, N, {(a, b): tuple(s[(a, b, x)] for x in range(n)) for (a, b), n in M.sizes.items()})


def enumerate_2cells(M: LexProf1Cell, N: LexProf1Cell, limit: int | None = None) -> list[ProfMorphism]:
    return [_solution_to_2cell(M, N, s) for s in two_cell_problem(M, N).solutions(limit)]


def find_iso(M: LexProf1Cell, N: LexProf1Cell) -> ProfMorphism | None:
    """Search for an invertible 2-cell M => N."""
    if M.sizes != N.sizes:
        return None
    for s in two_cell_problem(M, N).solutions():
        t = _solution_to_2cell(M, N, s)
        if t.is_iso():
            return t
    return None


# ---------------------------------------------------------------------------
# Composition


@dataclass(eq=False)
class CoendData:
    """Bookkeeping for (N . M)(a, c): summands are ordered by b, elements of
    N(b, c) x M(a, b) row-major, and classes by least member."""

    N: LexProf1Cell
    M: LexProf1Cell
    offsets: dict[tuple[int, int], dict[int, int]]
    quot: dict[tuple[int, int], tuple[int, ...]]
    reps: dict[tuple[int, int], list[tuple[int, int, int]]]

    def cls(self, a: int, c: int, b: int, x: int, y: int) -> int:
        """The class of the summand element (x, y) in N(b, c) x M(a, b)."""
        return self.quot[(a, c)][self.offsets[(a, c)][b] + x * self.M.size(a, b) + y]

    def rep(self, a: int, c: int, k: int) -> tuple[int, int, int]:
        return self.reps[(a, c)][k]


def compose_prof(N: LexProf1Cell, M: LexProf1Cell) -> LexProf1Cell:
    """N after M, for M: A -/-> B and N: B -/-> C. The result carries its
    ``coend`` data for working with representatives."""
    if M.dst is not N.src:
        raise CompositionError(f"cannot compose: middle bases {M.dst.name} and {N.src.name} differ")
    A, B, C = M.src.cat, M.dst.cat, N.dst.cat
    offsets, quot, reps, sizes = {}, {}, {}, {}
    for a in range(A.n_obj):
        for c in range(C.n_obj):
            off, total, owner = {}, 0, []
            for b in range(B.n_obj):
                off[b] = total
                total += N.size(b, c) * M.size(a, b)
                owner.extend([b] * (total - off[b]))
            part = Partition(total)
            for beta in range(B.n_mor):
                b, b1 = B.dom[beta], B.cod[beta]
                nl, mr = N.lact[(beta, c)], M.ract[(a, beta)]
                mb, mb1 = M.size(a, b), M.size(a, b1)
                for x in range(N.size(b1, c)):
                    for y in range(mb):
                        part.union(off[b] + nl[x] * mb + y, off[b1] + x * mb1 + mr[y])
            q = part.quotient_map()
            offsets[(a, c)], quot[(a, c)] = off, q.table
            sizes[(a, c)] = q.cod.size
            rl = []
            for e in range(total):
                if q.table[e] == len(rl):  # first member of a new class
                    b = owner[e]
                    x, y = divmod(e - off[b], M.size(a, b))
                    rl.append((b, x, y))
            reps[(a, c)] = rl
    data = CoendData(N, M, offsets, quot, reps)
    lact, ract = {}, {}
    for alpha in range(A.n_mor):
        a1, a = A.dom[alpha], A.cod[alpha]
        for c in range(C.n_obj):
            lact[(alpha, c)] = _induced(data, a, c, lambda b, x, y: (a1, c, b, x, M.lact[(alpha, b)][y]),
                                        f"lact along {A.mor_label(alpha)}")
    for gamma in range(C.n_mor):
        c, c1 = C.dom[gamma], C.cod[gamma]
        for a in range(A.n_obj):
            ract[(a, gamma)] = _induced(data, a, c, lambda b, x, y: (a, c1, b, N.ract[(b, gamma)][x], y),
                                        f"ract along {C.mor_label(gamma)}")
    out = LexProf1Cell(M.src, N.dst, sizes, lact, ract, name=f"({N.name}.{M.name})", coend=data)
    problems = check_lexness(out)
    if problems:
        raise InvariantError("composite is not lex: " + problems[0])
    return out


def _induced(data: CoendData, a: int, c: int, f, what: str) -> tuple[int, ...]:
    """Map classes at (a, c) by acting on every summand element, checking
    that the result is constant on classes."""
    M, N = data.M, data.N
    out: dict[int, int] = {}
    for b in range(M.dst.n_obj):
        for x in range(N.size(b, c)):
            for y in range(M.size(a, b)):
                k = data.cls(a, c, b, x, y)
                a2, c2, b2, x2, y2 = f(b, x, y)
                v = data.cls(a2, c2, b2, x2, y2)
                if out.setdefault(k, v) != v:
                    raise InvariantError(f"{what} is not well defined on the coend at ({a}, {c})")
    return tuple(out[k] for k in range(len(data.reps[(a, c)])))


# ---------------------------------------------------------------------------
# Canonical isomorphisms


def canonical_2cell(src: LexProf1Cell, dst: LexProf1Cell, f, what: str) -> ProfMorphism:
    """Build a 2-cell out of a composite by a formula on summand elements,
    verifying well-definedness, naturality and invertibility."""
    data = src.coend
    comps = {}
    for (a, c) in src.sizes:
        out: dict[int, int] = {}
        for b in range(data.M.dst.n_obj):
            for x in range(data.N.size(b, c)):
                for y in range(data.M.size(a, b)):
                    k = data.cls(a, c, b, x, y)
                    v = f(a, c, b, x, y)
                    if out.setdefault(k, v) != v:
                        raise InvariantError(f"{what} not well defined at ({a}, {c})")
        comps[(a, c)] = tuple(out[k] for k in range(src.size(a, c)))
    t = ProfMorphism(src, dst, comps)
    problems = check_2cell(t)
    if problems:
        raise InvariantError(f"{what}: {problems[0]}")
    return t


def left_unitor(M: LexProf1Cell) -> ProfMorphism:
    """I_B . M => M, [h, y] -> ract(h)(y)."""
    comp = compose_prof(identity_prof(M.dst), M)
    B = M.dst.cat
    return canonical_2cell(comp, M, lambda a, c, b, x, y: M.ract[(a, B.hom(b, c)[x])][y], "left unitor")


def right_unitor(M: LexProf1Cell) -> ProfMorphism:
    """M . I_A => M, [x, h] -> lact(h)(x)."""
    comp = compose_prof(M, identity_prof(M.src))
    A = M.src.cat
    return canonical_2cell(comp, M, lambda a, c, b, x, y: M.lact[(A.hom(a, b)[y], c)][x], "right unitor")


def associator(P: LexProf1Cell, N: LexProf1Cell, M: LexProf1Cell,
               left: LexProf1Cell | None = None, right: LexProf1Cell | None = None) -> ProfMorphism:
    """(P . N) . M => P . (N . M) on representatives."""
    PN = compose_prof(P, N)
    left = left or compose_prof(PN, M)
    NM = compose_prof(N, M)
    right = right or compose_prof(P, NM)

    def f(a, d, b, z, y):
        c, w, x = PN.coend.rep(b, d, z)
        return right.coend.cls(a, d, c, w, NM.coend.cls(a, c, b, x, y))

    return canonical_2cell(left, right, f, "associator")


def is_bijective_2cell(t: ProfMorphism) -> bool:
    return t.is_iso() and t.src.sizes == t.dst.sizes


# ---------------------------------------------------------------------------
# Right closure


def right_closure(M: LexProf1Cell, P: LexProf1Cell) -> LexProf1Cell:
    """[M, P](b, c) = natural families phi_a: M(a, b) -> P(a, c).

    Elements are tuples (one table per a), indexed in enumeration order;
    the tuples are kept in ``families``.
    """
    if M.src is not P.src:
        raise CompositionError("right closure needs 1-cells with a common source")
    A = M.src.cat
    B, C = M.dst.cat, P.dst.cat
    fams: dict[tuple[int, int], list[tuple[tuple[int, ...], ...]]] = {}
    index: dict[tuple[int, int], dict] = {}
    for b in range(B.n_obj):
        for c in range(C.n_obj):
            prob = Problem()
            for a in range(A.n_obj):
                for y in range(M.size(a, b)):
                    prob.var((a, y), range(P.size(a, c)))
            for alpha in range(A.n_mor):
                a1, a = A.dom[alpha], A.cod[alpha]
                lm, lp = M.lact[(alpha, b)], P.lact[(alpha, c)]
                for y in range(M.size(a, b)):
                    prob.propagate([(a, y)], (a1, lm[y]), lp.__getitem__)
            sols = [tuple(tuple(s[(a, y)] for y in range(M.size(a, b))) for a in range(A.n_obj))
                    for s in prob.solutions()]
            sols.sort()
            fams[(b, c)] = sols
            index[(b, c)] = {f: i for i, f in enumerate(sols)}

    def size(b, c):
        return len(fams[(b, c)])

    def lact(beta, c, i):
        b1, b = B.dom[beta], B.cod[beta]
        phi = fams[(b, c)][i]
        new = tuple(tuple(phi[a][M.ract[(a, beta)][y]] for y in range(M.size(a, b1)))
                    for a in range(A.n_obj))
        return index[(b1, c)][new]

    def ract(b, gamma, i):
        c1 = C.cod[gamma]
        phi = fams[(b, C.dom[gamma])][i]
        new = tuple(tuple(P.ract[(a, gamma)][v] for v in phi[a]) for a in range(A.n_obj))
        return index[(b, c1)][new]

    out = LexProf1Cell.build(M.dst, P.dst, size, lact, ract, name=f"[{M.name},{P.name}]")
    out.families = fams
    out.family_index = index
    return out


def transpose(theta: ProfMorphism, N: LexProf1Cell, M: LexProf1Cell, MP: LexProf1Cell) -> ProfMorphism:
    """theta: N . M => P  |->  N => [M, P]."""
    NM = theta.src
    A = M.src.cat
    comps = {}
    for (b, c), n in N.sizes.items():
        row = []
        for x in range(n):
            fam = tuple(tuple(theta(a, c, NM.coend.cls(a, c, b, x, y)) for y in range(M.size(a, b)))
                        for a in range(A.n_obj))
            if fam not in MP.family_index[(b, c)]:
                raise InvariantError(f"transpose of a 2-cell is not natural at ({b}, {c})")
            row.append(MP.family_index[(b, c)][fam])
        comps[(b, c)] = tuple(row)
    return ProfMorphism(N, MP, comps)


def untranspose(psi: ProfMorphism, NM: LexProf1Cell, P: LexProf1Cell) -> ProfMorphism:
    """psi: N => [M, P]  |->  N . M => P, [x, y] -> psi(x)_a(y)."""
    MP = psi.dst
    data = NM.coend
    comps = {}
    for (a, c), n in NM.sizes.items():
        row = []
        for k in range(n):
            b, x, y = data.rep(a, c, k)
            row.append(MP.families[(b, c)][psi(b, c, x)][a][y])
        comps[(a, c)] = tuple(row)
    return ProfMorphism(NM, P, comps)


# ---------------------------------------------------------------------------
# Duality


@dataclass(eq=False)
class DualityCertificate:
    """W: A -/-> B with left dual Wstar: B -/-> A.

    ``eta``: I_B => W . Wstar and ``eps``: Wstar . W => I_A, with the
    composites kept alongside for access to representatives.
    """

    W: LexProf1Cell
    Wstar: LexProf1Cell
    unit_cell: LexProf1Cell  # W . Wstar
    counit_cell: LexProf1Cell  # Wstar . W
    eta: ProfMorphism
    eps: ProfMorphism


def check_duality(cert: DualityCertificate) -> list[str]:
    W, Ws = cert.W, cert.Wstar
    A, B = W.src, W.dst
    report = []
    for t, what in ((cert.eta, "unit"), (cert.eps, "counit")):
        report.extend(f"{what}: {p}" for p in check_2cell(t))
    if report:
        return report
    WWs, WsW = cert.unit_cell.coend, cert.counit_cell.coend
    # eta(1_b) as a representative (w' in W(a', b), v in Wstar(b, a'))
    rep_eta = {b: WWs.rep(b, b, cert.eta(b, b, hom_element(B, B.cat.ident[b]))) for b in range(B.n_obj)}
    Acat = A.cat
    for (a, b), n in W.sizes.items():
        a1, w1, v = rep_eta[b]
        for w in range(n):
            h = Acat.hom(a, a1)[cert.eps(a, a1, WsW.cls(a, a1, b, v, w))]
            if W.lact[(h, b)][w1] != w:
                report.append(f"first triangle fails at W({a}, {b}) element {w}")
    for (b, a), n in Ws.sizes.items():
        a1, w1, v1 = rep_eta[b]
        for v in range(n):
            h = Acat.hom(a1, a)[cert.eps(a1, a, WsW.cls(a1, a, b, v, w1))]
            if Ws.ract[(b, h)][v1] != v:
                report.append(f"second triangle fails at Wstar({b}, {a}) element {v}")
    return report


def evaluation(Ws: LexProf1Cell, W: LexProf1Cell, WsW: LexProf1Cell) -> ProfMorphism:
    """[W, I_A] . W => I_A, [phi, w] -> phi_a(w)."""
    I = identity_prof(W.src)
    return canonical_2cell(WsW, I, lambda a, a1, b, phi, w: Ws.families[(b, a1)][phi][a][w], "evaluation")


def search_left_dual(W: LexProf1Cell) -> DualityCertificate | None:
    """Try Wstar = [W, I_A] with evaluation as counit; search the unit by
    its values at identities (a 2-cell out of I_B is determined by them)."""
    A, B = W.src, W.dst
    Ws = right_closure(W, identity_prof(A))
    WWs = compose_prof(W, Ws)
    WsW = compose_prof(Ws, W)
    eps = evaluation(Ws, W, WsW)
    IB = identity_prof(B)
    Bc = B.cat
    prob = Problem()
    for b in range(B.n_obj):
        prob.var(b, range(WWs.size(b, b)))
    for beta in range(Bc.n_mor):
        b, b1 = Bc.dom[beta], Bc.cod[beta]
        # dinaturality: lact(beta) e_{b1} = ract(beta) e_b
        prob.require([b, b1], lambda e, e1, beta=beta, b=b, b1=b1:
                     WWs.lact[(beta, b1)][e1] == WWs.ract[(b, beta)][e])
    for s in prob.solutions():
        comps = {}
        for b0, b1 in IB.sizes:
            comps[(b0, b1)] = tuple(WWs.ract[(b0, h)][s[b0]] for h in Bc.hom(b0, b1))
        eta = ProfMorphism(IB, WWs, comps)
        cert = DualityCertificate(W, Ws, WWs, WsW, eta, eps)
        if not check_duality(cert):
            return cert
    return None
