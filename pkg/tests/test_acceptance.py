"""Exit criteria. Each test checks one criterion within its time budget and
records a single PASS/FAIL line; conftest prints them after the run."""

import itertools
import random
import re
import time
from pathlib import Path

import pytest

from catkit import io
from catkit.algebra import (PRESENTATIONS, check_triangle, compare_theories, identity_tabmonad, monad_to_theory,
                            tabulate)
from catkit.errors import StabilizationError
from catkit.fincat import enumerate_lex_maps, identity_functor, named_base
from catkit.lexprof import (associator, check_2cell, check_duality, check_lexness, companion, compose_prof, conjoint,
                            enumerate_2cells, find_iso, is_bijective_2cell, left_unitor, right_closure,
                            right_unitor, search_left_dual, transpose, untranspose)
from catkit.wcat import (ParflCategory, check_absolute_tensored, check_wfunctor, companion_tensor,
                         enumerate_lattice_monads, epsilon, eta, gamma, identity_monad, integrate, is_tensor,
                         monad_to_oneobject, parfl_morphisms, roundtrip_monad, tabmonad_to_lexmonad,
                         theory_from_monad, transpose_to_parfl, transpose_to_w, wfunctor_report)

from cells import random_bases, random_cell

pytestmark = pytest.mark.acceptance

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
LATTICES = ("chain2", "chain3", "diamond")
RESULTS = {}


def run_criterion(number, title, budget, body):
    """Run body() -> list of failure strings; record and print the verdict."""
    start = time.perf_counter()
    try:
        failures = list(body())
    except Exception as exc:  # reported as a failure, not a crash
        failures = [f"{type(exc).__name__}: {exc}"]
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        failures.append(f"took {elapsed:.1f}s, budget {budget}s")
    verdict = "PASS" if not failures else "FAIL"
    line = f"criterion {number}: {verdict} ({elapsed:.2f}s / {budget}s) {title}"
    if failures:
        line += f" -- {failures[0]}"
    RESULTS[number] = line
    print(line)
    assert not failures, failures


def _parfl(name):
    return io.parfl_from_json(io.load(FIXTURES / name))


def _identity_parfl(name):
    A = named_base(name)
    return ParflCategory(A.cat, [(A, identity_functor(A.cat))], name=name)


def _fixture_tabmonads(N):
    yield identity_tabmonad(N)
    for name in ("pointed", "semilattice"):
        yield tabulate(PRESENTATIONS[name](), N)


# 1


def _roundtrips():
    for name in LATTICES:
        for m in enumerate_lattice_monads(named_base(name)):
            res = roundtrip_monad(m)
            if not res["passed"]:
                yield f"{name}: {m.name} does not round-trip: {res}"


def test_criterion_1_monad_roundtrip():
    run_criterion(1, "every lattice monad round-trips through its theory", 60, _roundtrips)


# 2


def _hom_sizes():
    N = 3
    for t in _fixture_tabmonads(N):
        l = monad_to_theory(t)
        for n, m in itertools.product(range(N + 1), repeat=2):
            expected = n ** m if t.name == "identity" else t.sizes[n] ** m
            if len(l.hom(n, m)) != expected or expected != len(l.hom(n, 1)) ** m:
                yield f"{t.name}: |hom({n},{m})| = {len(l.hom(n, m))}, expected {expected}"


def test_criterion_2_theory_hom_sizes():
    run_criterion(2, "theory hom sizes are |T n|^m at N=3", 5, _hom_sizes)


# 3


def _tabulation():
    N = 3
    sl = tabulate(PRESENTATIONS["semilattice"](), N)
    # non-empty subsets of the generators
    if list(sl.sizes[1:]) != [2 ** n - 1 for n in range(1, N + 1)]:
        yield f"semilattice sizes {sl.sizes}"
    for n in range(N + 1):
        subsets = {frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)}
        labels = {frozenset(int(v) - 1 for v in re.findall(r"x(\d+)", label)) for label in sl.labels[n]}
        if labels != subsets:
            yield f"semilattice T({n}) classes do not match the subsets"
    pt = tabulate(PRESENTATIONS["pointed"](), N)
    if list(pt.sizes) != [n + 1 for n in range(N + 1)]:
        yield f"pointed sizes {pt.sizes}"
    try:
        tabulate(PRESENTATIONS["monoid"](), N, depth=6)
        yield "monoid was tabulated"
    except StabilizationError:
        pass


def test_criterion_3_tabulation():
    run_criterion(3, "free algebra sizes and the monoid rejection", 10, _tabulation)


# 4


def _triangles():
    for t in itertools.chain(_fixture_tabmonads(2), _fixture_tabmonads(3)):
        res = check_triangle(t, 2)
        if not res["passed"]:
            yield f"{t.name} at N={t.N}: {res['failures'][:1]}"
        elif not (res["semantics"]["passed"] and res["semantics"]["counts_equal"]):
            yield f"{t.name} at N={t.N}: enriched semantics disagree: {res['semantics']}"


def test_criterion_4_triangle():
    run_criterion(4, "algebras, models and semantics agree at k=2", 60, _triangles)


# 5


def _completion():
    for p in (_parfl("parfl_vee.json"), _parfl("parfl_chain3.json"), _identity_parfl("diamond")):
        _, rep = epsilon(p)
        if not (rep["equivalence"] and rep["sieve_reflecting"]):
            yield f"epsilon at {p.name}: {rep}"
    chain2 = named_base("chain2")
    const = monad_to_oneobject(io.monad_from_json(io.load(FIXTURES / "chain2_const_monad.json")))
    for c in (monad_to_oneobject(identity_monad(chain2)), const):
        family = [chain2]
        ic = integrate(c)
        for d in (_parfl("parfl_chain3.json"), _parfl("parfl_vee.json")):
            gd = gamma(d, family)
            for F in parfl_morphisms(ic, d):
                G = transpose_to_w(F, c, ic, gd)
                if check_wfunctor(G) or transpose_to_parfl(G, ic, d) != F:
                    yield f"transposes are not inverse at {c.name}, {d.name}"
    for name in ("chain2", "chain3"):
        A = named_base(name)
        for family in ([A], [named_base("chain1"), A]):
            for m in enumerate_lattice_monads(A):
                c = monad_to_oneobject(m)
                rep = wfunctor_report(eta(c, family))
                if not (rep["fully_faithful"] and rep["laws"]):
                    yield f"eta at {m.name} is not fully faithful"
                if rep["essentially_surjective"] != check_absolute_tensored(c, family)["passed"]:
                    yield f"eta at {m.name}: surjectivity disagrees with absolute tensors"


def test_criterion_5_completion():
    run_criterion(5, "epsilon, eta and the adjunction transposes", 60, _completion)


# 6


def _closure_bijection(M, N, P):
    NM, MP = compose_prof(N, M), right_closure(M, P)
    left, right = enumerate_2cells(NM, P), enumerate_2cells(N, MP)
    if len(left) != len(right):
        return f"{len(left)} 2-cells vs {len(right)}"
    for theta in left:
        psi = transpose(theta, N, M, MP)
        if check_2cell(psi) or untranspose(psi, NM, P).key() != theta.key():
            return "transpose is not inverse"
    return None


def _random_cells():
    rng = random.Random(20261016)
    for trial in range(100):
        A, B, C, D = random_bases(rng, 4)
        M, N, P = random_cell(rng, A, B), random_cell(rng, B, C), random_cell(rng, C, D)
        for u in (left_unitor(M), right_unitor(M)):
            if not is_bijective_2cell(u) or check_2cell(u):
                yield f"trial {trial}: unitor fails at {M.name}"
        a = associator(P, N, M)
        if not is_bijective_2cell(a):
            yield f"trial {trial}: associator fails"
        for X in (compose_prof(N, M), compose_prof(P, N), a.src, a.dst):
            if check_lexness(X):
                yield f"trial {trial}: composite {X.name} is not lex"
        # internal homs between arity-2 affine cells run to millions of
        # elements, so closure triples are drawn over lattices and trunc1
        A, B, C = random_bases(rng, 3, truncs=("trunc1",))
        problem = _closure_bijection(random_cell(rng, A, B), random_cell(rng, B, C), random_cell(rng, A, C))
        if problem:
            yield f"trial {trial}: closure adjunction: {problem}"


def test_criterion_6_random_cells():
    run_criterion(6, "unit, associativity, closure and lexness on 100 random cells", 120, _random_cells)


# 7


def _duality():
    for src, dst in itertools.product(LATTICES, repeat=2):
        A, B = named_base(src), named_base(dst)
        p = _identity_parfl(dst)
        g = gamma(p, [A])
        for F in enumerate_lex_maps(A, B):
            W = companion(F, A, B)
            cert = search_left_dual(W)
            if cert is None or check_duality(cert):
                yield f"companion of {F.obj_map} ({src} -> {dst}) has no checked left dual"
                continue
            if find_iso(cert.Wstar, conjoint(F, A, B)) is None:
                yield f"left dual of companion {F.obj_map} is not the conjoint"
            WX = next(x for x in range(g.n_obj)
                      if g.extents[x] is A and g.meta["functors"][x].obj_map == F.obj_map)
            res = is_tensor(g, companion_tensor(p, g, 0, F, A, WX, W, cert))
            if res != {"strength": "exact", "passed": True, "failures": []}:
                yield f"tensor by companion {F.obj_map} ({src} -> {dst}): {res['failures'][:1]}"
    top = io.profunctor_from_json(io.load(FIXTURES / "conjoint_chain2_const_top.json"))
    if search_left_dual(top) is not None:
        yield "conjoint of the constant top map has a left dual"


def test_criterion_7_duality_and_tensors():
    run_criterion(7, "companions have left duals and give exact tensors", 30, _duality)


# 8


def _cross_pipeline():
    files = ("identity_tabmonad.json", "pointed_tabmonad.json", "semilattice_tabmonad.json")
    monads = [io.tabmonad_from_json(io.load(FIXTURES / f)) for f in files]
    for t in itertools.chain(monads, _fixture_tabmonads(3)):
        base = named_base(f"trunc{t.N}")
        l = monad_to_theory(t, base)
        lw = theory_from_monad(tabmonad_to_lexmonad(t, base))
        for problem in compare_theories(l, lw.cat, lw.J):
            yield f"{t.name} at N={t.N}: {problem}"


def test_criterion_8_cross_pipeline():
    run_criterion(8, "algebraic and enriched theories agree table for table", 10, _cross_pipeline)

