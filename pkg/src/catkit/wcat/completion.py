"""Partially finitely complete categories and the Gamma / integral
adjunction with LexProf-categories.

A ParflCategory is a finite category with a left-exact sieve, presented by
a finite list of generating lex functors. Membership of an arbitrary
functor F: A -> C in the generated sieve is decided by searching for a
generator X, a lex G into its domain and a natural isomorphism X G = F.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import InvariantError, PreconditionError
from ..fincat import (FinCategory, FunctorData, LexBase, check_functor, check_lex_functor,
                      compose_functors, enumerate_functors, enumerate_lex_maps, find_natural_iso,
                      functor_report)
from ..lexprof import (DualityCertificate, LexProf1Cell, ProfMorphism, check_2cell, check_duality,
                       compose_prof, conjoint, enumerate_2cells, find_iso, hom_element)
from .core import WCategory, WFunctorData, check_wfunctor, is_fully_faithful, underlying_category


@dataclass(eq=False)
class ParflCategory:
    cat: FinCategory
    gens: list[tuple[LexBase, FunctorData]]
    name: str = ""
    meta: dict = field(default_factory=dict, repr=False)

    def __repr__(self):
        return f"ParflCategory({self.name or '?'}, {len(self.gens)} generators)"


def check_parfl(p: ParflCategory) -> list[str]:
    report = []
    covered = set()
    for n, (A, X) in enumerate(p.gens):
        if X.src is not A.cat or X.dst is not p.cat:
            report.append(f"generator {n} has the wrong domain or codomain")
            continue
        report.extend(f"generator {n}: {q}" for q in check_functor(X))
        report.extend(f"generator {n}: {q}" for q in check_lex_functor(A, X))
        covered.update(X.obj_map)
    for a in range(p.cat.n_obj):
        if a not in covered:
            report.append(f"object {p.cat.obj_label(a)} is not in the image of any generator")
    return report


def in_sieve(p: ParflCategory, A: LexBase, F: FunctorData) -> bool:
    """Is F: A -> p.cat isomorphic to X G for a generator X and a lex G?"""
    for B, X in p.gens:
        for G in enumerate_lex_maps(A, B):
            if find_natural_iso(compose_functors(X, G), F) is not None:
                return True
    return False


def sieve_members(p: ParflCategory, A: LexBase) -> list[FunctorData]:
    return [F for F in enumerate_functors(A.cat, p.cat) if in_sieve(p, A, F)]


# ---------------------------------------------------------------------------
# Gamma


def gamma(p: ParflCategory, extent_family: list[LexBase] | None = None) -> WCategory:
    """Gamma(C)(X, Y)(i, j) = C(Xi, Yj).

    Objects are the generators; with an extent family, also every sieve
    member whose domain is in the family (on the nose, generators first).
    """
    C = p.cat
    objs: list[tuple[LexBase, FunctorData]] = list(p.gens)
    if extent_family:
        seen = {(id(A), X.key()) for A, X in objs}
        for A in extent_family:
            for F in sieve_members(p, A):
                if (id(A), F.key()) not in seen:
                    seen.add((id(A), F.key()))
                    objs.append((A, F))
    pos = C.hom_pos
    homs = {}
    for (x, (A, X)), (y, (B, Y)) in itertools.product(enumerate(objs), repeat=2):
        def lact(alpha, j, e, X=X, Y=Y):
            h = C.hom(X.obj_map[A.cat.cod[alpha]], Y.obj_map[j])[e]
            return pos[C.comp[(h, X.mor_map[alpha])]]

        def ract(i, beta, e, X=X, Y=Y, B=B):
            h = C.hom(X.obj_map[i], Y.obj_map[B.cat.dom[beta]])[e]
            return pos[C.comp[(Y.mor_map[beta], h)]]

        homs[(x, y)] = LexProf1Cell.build(A, B, lambda i, j, X=X, Y=Y: len(C.hom(X.obj_map[i], Y.obj_map[j])),
                                          lact, ract, name=f"Gamma({x},{y})")

    def compose(x, y, z, i, j, k, g, f):
        X, Y, Z = objs[x][1], objs[y][1], objs[z][1]
        gm = C.hom(Y.obj_map[j], Z.obj_map[k])[g]
        fm = C.hom(X.obj_map[i], Y.obj_map[j])[f]
        return pos[C.comp[(gm, fm)]]

    def ident(x, phi):
        return pos[objs[x][1].mor_map[phi]]

    names = [f"g{n}" if n < len(p.gens) else f"s{n}" for n in range(len(objs))]
    out = WCategory(names, [A for A, _ in objs], homs, compose, ident, name=f"Gamma({p.name})")
    out.meta["functors"] = [X for _, X in objs]
    out.meta["parfl"] = p
    return out


# ---------------------------------------------------------------------------
# Integral


def integrate(c: WCategory) -> ParflCategory:
    """Objects (X, i); morphisms (X, i) -> (Y, j) the elements of
    C(X, Y)(i, j); the sieve is generated by the iota_X."""
    objs = [(X, i) for X in range(c.n_obj) for i in range(c.extents[X].n_obj)]
    obj_index = {o: n for n, o in enumerate(objs)}
    arrows, mor_index, elems = [], {}, []
    for (X, i), (Y, j) in itertools.product(objs, repeat=2):
        for e in range(c.hom(X, Y).size(i, j)):
            mor_index[(X, Y, i, j, e)] = len(arrows)
            arrows.append((obj_index[(X, i)], obj_index[(Y, j)]))
            elems.append((X, Y, i, j, e))
    ident = [mor_index[(X, X, i, i, c.unit_elem(X, i))] for X, i in objs]

    def compose(g, f):
        X, Y, i, j, ef = elems[f]
        _, Z, _, k, eg = elems[g]
        return mor_index[(X, Z, i, k, c.compose(X, Y, Z, i, j, k, eg, ef))]

    cat = FinCategory.build(len(objs), arrows, ident, compose,
                            obj_labels=[f"({c.names[X]},{c.extents[X].cat.obj_label(i)})" for X, i in objs])
    gens = []
    for X in range(c.n_obj):
        A = c.extents[X]
        Ac = A.cat
        F = FunctorData(Ac, cat, tuple(obj_index[(X, i)] for i in range(Ac.n_obj)),
                        tuple(mor_index[(X, X, Ac.dom[m], Ac.cod[m], c.ident(X, m))] for m in range(Ac.n_mor)))
        problems = check_lex_functor(A, F)
        if problems:
            raise InvariantError(f"iota at {c.names[X]} is not lex: {problems[0]}")
        gens.append((A, F))
    p = ParflCategory(cat, gens, name=f"int({c.name})")
    p.meta.update(source=c, obj_index=obj_index, mor_index=mor_index, elems=elems)
    return p


def check_eq31(c: WCategory, p: ParflCategory) -> list[str]:
    """C(X, Y) agrees with the integral's homs restricted along iota_X, iota_Y,
    including the actions."""
    report = []
    cat, oi = p.cat, p.meta["obj_index"]
    for X, Y in itertools.product(range(c.n_obj), repeat=2):
        M = c.hom(X, Y)
        (A, FX), (B, FY) = p.gens[X], p.gens[Y]
        for (i, j), n in M.sizes.items():
            if len(cat.hom(oi[(X, i)], oi[(Y, j)])) != n:
                report.append(f"size mismatch at ({c.names[X]}, {c.names[Y]}), ({i}, {j})")
        for alpha in range(A.cat.n_mor):
            a = A.cat.cod[alpha]
            for j in range(B.n_obj):
                for e in range(M.size(a, j)):
                    m = cat.hom(oi[(X, a)], oi[(Y, j)])[e]
                    if cat.hom_pos[cat.comp[(m, FX.mor_map[alpha])]] != M.lact[(alpha, j)][e]:
                        report.append(f"left action differs at ({c.names[X]}, {c.names[Y]}), arrow {alpha}")
        for beta in range(B.cat.n_mor):
            b = B.cat.dom[beta]
            for i in range(A.n_obj):
                for e in range(M.size(i, b)):
                    m = cat.hom(oi[(X, i)], oi[(Y, b)])[e]
                    if cat.hom_pos[cat.comp[(FY.mor_map[beta], m)]] != M.ract[(i, beta)][e]:
                        report.append(f"right action differs at ({c.names[X]}, {c.names[Y]}), arrow {beta}")
    return report


# ---------------------------------------------------------------------------
# Unit and counit


def eta(c: WCategory, extent_family: list[LexBase] | None = None) -> WFunctorData:
    """c -> Gamma(int c), X -> iota_X, identity on hom elements."""
    p = integrate(c)
    d = gamma(p, extent_family)
    maps = {(X, Y): {ij: tuple(range(n)) for ij, n in c.hom(X, Y).sizes.items()}
            for X, Y in itertools.product(range(c.n_obj), repeat=2)}
    return WFunctorData(c, d, tuple(range(c.n_obj)), maps)


def wfunctor_report(F: WFunctorData) -> dict:
    """Fully faithful / essentially surjective (isomorphism in the underlying
    category of each extent)."""
    c, d = F.src, F.dst
    ff = is_fully_faithful(F)
    es = True
    missing = []
    for x in {id(A): A for A in d.extents}.values():
        u = underlying_category(d, x)
        image = [u.objects.index(F.obj_map[X]) for X in range(c.n_obj) if c.extents[X] is x]
        for q, Z in enumerate(u.objects):
            if not any(u.cat.isomorphic(p, q) is not None for p in image):
                es = False
                missing.append(d.names[Z])
    return {"fully_faithful": ff, "essentially_surjective": es, "not_in_essential_image": missing,
            "laws": not check_wfunctor(F)}


def epsilon(p: ParflCategory) -> tuple[FunctorData, dict]:
    """int(Gamma p) -> p.cat, (X, i) -> Xi and identity on homsets."""
    g = gamma(p)
    ip = integrate(g)
    C = p.cat
    objs = [p.gens[X][1].obj_map[i] for X, i in ip.meta["obj_index"]]
    mors = []
    for X, Y, i, j, e in ip.meta["elems"]:
        FX, FY = p.gens[X][1], p.gens[Y][1]
        mors.append(C.hom(FX.obj_map[i], FY.obj_map[j])[e])
    E = FunctorData(ip.cat, C, tuple(objs), tuple(mors))
    rep = functor_report(E)
    reflecting = all(compose_functors(E, ip.gens[n][1]) == X for n, (_, X) in enumerate(p.gens))
    report = {
        "functor_laws": not check_functor(E),
        "fully_faithful": rep["fully_faithful"],
        "essentially_surjective": rep["essentially_surjective"],
        "sieve_reflecting": reflecting,
        "injective_on_objects": rep["injective_on_objects"],
    }
    report["equivalence"] = all(report[k] for k in ("functor_laws", "fully_faithful", "essentially_surjective"))
    return E, report


# ---------------------------------------------------------------------------
# Absolute tensors


def check_absolute_tensored(c: WCategory, extent_family: list[LexBase], integral: ParflCategory | None = None) -> dict:
    """For every X, every lex F from a family member A into the extent of X,
    look for Y of extent A with iota_X F = iota_Y (natural iso in int c)."""
    p = integral or integrate(c)
    witnesses, failures = [], []
    for X in range(c.n_obj):
        B, iX = p.gens[X]
        for A in extent_family:
            for F in enumerate_lex_maps(A, B):
                target = compose_functors(iX, F)
                found = None
                for Y in range(c.n_obj):
                    if c.extents[Y] is not A:
                        continue
                    iso = find_natural_iso(target, p.gens[Y][1])
                    if iso is not None:
                        found = (Y, iso.components)
                        break
                entry = {"X": c.names[X], "A": A.name, "F": list(F.obj_map)}
                if found:
                    entry.update(Y=c.names[found[0]], iso=list(found[1]))
                    witnesses.append(entry)
                else:
                    failures.append(entry)
    return {"passed": not failures, "family": [A.name for A in extent_family],
            "witnesses": witnesses, "failures": failures}


@dataclass(eq=False)
class TensorWitness:
    X: int
    W: LexProf1Cell
    WX: int
    u: ProfMorphism  # W => C(X, WX)
    ustar: ProfMorphism | None = None  # Wstar => C(WX, X)
    duality: DualityCertificate | None = None


def is_tensor(c: WCategory, w: TensorWitness, test_family: list[LexProf1Cell] | None = None) -> dict:
    """With u* and a duality certificate, check both unit/counit squares
    elementwise (exact); otherwise check the universal bijection for each U
    in the test family and each object Z (bounded)."""
    X, Y = w.X, w.WX
    failures = [f"u: {q}" for q in check_2cell(w.u)]
    if w.ustar is not None:
        cert = w.duality
        if cert is None or check_duality(cert):
            return {"strength": "exact", "passed": False, "failures": ["missing or invalid duality certificate"]}
        failures += [f"u*: {q}" for q in check_2cell(w.ustar)]
        if failures:
            return {"strength": "exact", "passed": False, "failures": failures}
        A, B = w.W.src, w.W.dst
        WWs, WsW = cert.unit_cell.coend, cert.counit_cell.coend
        for b in range(B.n_obj):
            a1, w1, v = WWs.rep(b, b, cert.eta(b, b, hom_element(B, B.cat.ident[b])))
            lhs = c.compose(Y, X, Y, b, a1, b, w.u(a1, b, w1), w.ustar(b, a1, v))
            if lhs != c.unit_elem(Y, b):
                failures.append(f"left square fails at ({b}, {b}): u o u* gives {lhs}")
        Ws = cert.Wstar
        for (b, a), n in Ws.sizes.items():
            for v in range(n):
                for a1 in range(A.n_obj):
                    for x in range(w.W.size(a1, b)):
                        lhs = c.compose(X, Y, X, a1, b, a, w.ustar(b, a, v), w.u(a1, b, x))
                        h = A.cat.hom(a1, a)[cert.eps(a1, a, WsW.cls(a1, a, b, v, x))]
                        if lhs != c.ident(X, h):
                            failures.append(f"right square fails at ({a1}, {a}), elements ({v}, {x})")
        return {"strength": "exact", "passed": not failures, "failures": failures}
    for U in test_family or []:
        if U.src is not w.W.dst:
            continue
        UW = compose_prof(U, w.W)
        for Z in range(c.n_obj):
            if c.extents[Z] is not U.dst:
                continue
            left = enumerate_2cells(U, c.hom(Y, Z))
            right = {t.key() for t in enumerate_2cells(UW, c.hom(X, Z))}
            images = set()
            for f in left:
                comps = {}
                for (a, z), n in UW.sizes.items():
                    row = []
                    for k in range(n):
                        b, x, y = UW.coend.rep(a, z, k)
                        row.append(c.compose(X, Y, Z, a, b, z, f(b, z, x), w.u(a, b, y)))
                    comps[(a, z)] = tuple(row)
                images.add(tuple(sorted(comps.items())))
            if len(images) != len(left) or images != right:
                failures.append(f"bijection fails for U={U.name}, Z={c.names[Z]}: "
                                f"{len(left)} maps vs {len(right)} targets, {len(images)} distinct images")
    return {"strength": "bounded", "passed": not failures, "failures": failures}


def companion_tensor(p: ParflCategory, g: WCategory, X: int, F: FunctorData, A: LexBase,
                     WX: int, W: LexProf1Cell, cert: DualityCertificate) -> TensorWitness:
    """In Gamma(p), the tensor of X by the companion F_* is X F; u and u*
    are the actions of X on B(b, Fa) and B(Fa, b)."""
    B = g.extents[X]
    C = p.cat
    FX = g.meta["functors"][X]
    Bc = B.cat
    pos = C.hom_pos
    ucomps = {(b, a): tuple(pos[FX.mor_map[h]] for h in Bc.hom(b, F.obj_map[a]))
              for b in range(B.n_obj) for a in range(A.n_obj)}
    u = ProfMorphism(W, g.hom(X, WX), ucomps)
    Ws = cert.Wstar
    # Wstar is only isomorphic to the conjoint; transport along that iso
    cj = conjoint(F, A, B)
    iso = find_iso(Ws, cj)
    if iso is None:
        raise PreconditionError("left dual is not the conjoint")
    scomps = {(a, b): tuple(pos[FX.mor_map[Bc.hom(F.obj_map[a], b)[iso(a, b, v)]]] for v in range(Ws.size(a, b)))
              for a in range(A.n_obj) for b in range(B.n_obj)}
    ustar = ProfMorphism(Ws, g.hom(WX, X), scomps)
    return TensorWitness(X, W, WX, u, ustar, cert)


# ---------------------------------------------------------------------------
# The adjunction bijection


def parfl_morphisms(ic: ParflCategory, d: ParflCategory) -> list[FunctorData]:
    """Functors int(c) -> d carrying every generator into the sieve of d."""
    out = []
    for F in enumerate_functors(ic.cat, d.cat):
        if all(in_sieve(d, A, compose_functors(F, X)) for A, X in ic.gens):
            out.append(F)
    return out


def transpose_to_w(F: FunctorData, c: WCategory, ic: ParflCategory, gd: WCategory) -> WFunctorData:
    """F: int c -> d  |->  c -> Gamma d, X -> F iota_X."""
    index = {(id(A), X.key()): n for n, (A, X) in enumerate(zip(gd.extents, gd.meta["functors"]))}
    D = F.dst
    obj_map = []
    for X in range(c.n_obj):
        A, iX = ic.gens[X]
        key = (id(A), compose_functors(F, iX).key())
        if key not in index:
            raise PreconditionError(f"F iota_{c.names[X]} is not an object of Gamma d")
        obj_map.append(index[key])
    mi = ic.meta["mor_index"]
    maps = {}
    for X, Y in itertools.product(range(c.n_obj), repeat=2):
        maps[(X, Y)] = {(i, j): tuple(D.hom_pos[F.mor_map[mi[(X, Y, i, j, e)]]] for e in range(n))
                        for (i, j), n in c.hom(X, Y).sizes.items()}
    return WFunctorData(c, gd, tuple(obj_map), maps)


def transpose_to_parfl(G: WFunctorData, ic: ParflCategory, d: ParflCategory) -> FunctorData:
    """G: c -> Gamma d  |->  int c -> d, (X, i) -> (GX)(i)."""
    gd = G.dst
    funs = gd.meta["functors"]
    D = d.cat
    objs = tuple(funs[G.obj_map[X]].obj_map[i] for X, i in ic.meta["obj_index"])
    mors = []
    for X, Y, i, j, e in ic.meta["elems"]:
        FX, FY = funs[G.obj_map[X]], funs[G.obj_map[Y]]
        mors.append(D.hom(FX.obj_map[i], FY.obj_map[j])[G(X, Y, i, j, e)])
    return FunctorData(ic.cat, D, objs, tuple(mors))
