import itertools
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from catkit import io
from catkit.algebra import (PRESENTATIONS, App, Equation, LawTheory, Presentation, Signature, Var, check_kleisli,
                            check_law_theory, check_triangle, compare_theories, em_algebras, enumerate_algebras,
                            enumerate_models, identity_tabmonad, monad_to_theory, presentation_from_json,
                            presentation_to_json, substitution_sound, tabulate, term_from_json, term_to_json,
                            theory_from_json, theory_to_json, theory_to_monad)
from catkit.errors import ParseError, PreconditionError, ResourceError, StabilizationError
from catkit.fincat import FinCategory, FunctorData, named_base
from catkit.wcat import tabmonad_to_lexmonad, theory_from_monad

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def pres(name):
    return PRESENTATIONS[name]()


# -- terms and presentations


def test_term_json_roundtrip():
    for obj in (0, "e", ["join", 0, ["join", 1, 2]], ["mul", ["e"], 0]):
        t = term_from_json(obj)
        again = term_from_json(term_to_json(t))
        assert again == t


@pytest.mark.parametrize("bad", [True, -1, [], [3, 1], {"op": "x"}])
def test_bad_terms(bad):
    with pytest.raises(ParseError):
        term_from_json(bad)


def test_signature_checks():
    with pytest.raises(PreconditionError):
        Signature((("f", 1), ("f", 2)))
    sig = Signature((("f", 2),))
    with pytest.raises(PreconditionError):
        Presentation(sig, (Equation(1, App("f", (Var(0),)), Var(0)),))
    with pytest.raises(PreconditionError):
        Presentation(sig, (Equation(1, App("f", (Var(0), Var(1))), Var(0)),))


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_presentation_json_roundtrip(name):
    p = pres(name)
    q = presentation_from_json(presentation_to_json(p))
    assert q == p
    assert presentation_from_json(io.load(FIXTURES / f"{name}.json")) == p


# -- tabulation


def test_empty_signature_is_identity():
    t = tabulate(pres("empty"), 3)
    assert t.sizes == (0, 1, 2, 3)
    ident = identity_tabmonad(3)
    assert t.unit == ident.unit and t.ext == ident.ext


def test_pointed_sizes():
    t = tabulate(pres("pointed"), 3)
    assert t.sizes == (1, 2, 3, 4)
    for n in range(4):
        assert sorted(t.labels[n]) == sorted([f"x{i + 1}" for i in range(n)] + ["e"])


def _subset_of(term):
    """Independent semantics: a join term denotes its set of variables."""
    if isinstance(term, Var):
        return frozenset({term.index})
    return frozenset().union(*(_subset_of(a) for a in term.args))


def test_semilattice_matches_subset_oracle():
    t = tabulate(pres("semilattice"), 3)
    assert t.sizes == (0, 1, 3, 7)
    graphs = t.meta["graphs"]
    for n in range(4):
        g = graphs[n]
        reps = [g.rep[c] for c in sorted(g.classes(), key=lambda c: t.labels[n].index(str(g.rep[c])))]
        subsets = [_subset_of(r) for r in reps]
        nonempty = {frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)}
        assert set(subsets) == nonempty and len(subsets) == len(nonempty)
        # Kleisli extension is union of images
        for m in range(4):
            for f in t.tuples(n, m):
                e = t.kleisli(n, f)
                g_m = graphs[m]
                reps_m = [g_m.rep[c] for c in sorted(g_m.classes(),
                                                      key=lambda c: t.labels[m].index(str(g_m.rep[c])))]
                for v, r in enumerate(reps_m):
                    image = frozenset().union(*(subsets[f[i]] for i in _subset_of(r)))
                    assert subsets[e[v]] == image


def test_monoid_is_rejected():
    with pytest.raises(StabilizationError, match="within bounds.*n=1"):
        tabulate(pres("monoid"), 2, depth=5)


def test_size_bound():
    with pytest.raises(ResourceError):
        tabulate(pres("semilattice"), 3, size_bound=5)


def test_bad_bounds():
    with pytest.raises(PreconditionError):
        tabulate(pres("empty"), 2, depth=0)
    with pytest.raises(PreconditionError):
        monad_to_theory(tabulate(pres("empty"), 0))


@pytest.mark.parametrize("name", ["empty", "pointed", "semilattice"])
def test_tabulate_laws(name):
    t = tabulate(pres(name), 3)
    assert check_kleisli(t) == []
    assert substitution_sound(pres(name), t) == []


def test_broken_kleisli_detected():
    t = tabulate(pres("pointed"), 2)
    key = (1, 1, (0,))
    t.ext[key] = tuple(reversed(t.ext[key]))
    assert check_kleisli(t)


def test_deterministic_tabulation():
    a, b = tabulate(pres("semilattice"), 3), tabulate(pres("semilattice"), 3)
    assert a.ext == b.ext and a.labels == b.labels


# -- theories


def test_identity_theory():
    l = monad_to_theory(identity_tabmonad(2))
    assert check_law_theory(l) == []
    assert len(l.hom(2, 2)) == 4
    # composition is composition of functions (read as tuples)
    C = l.cat
    for f in C.hom(2, 2):
        for g in C.hom(2, 2):
            assert C.comp[(g, f)] in C.hom(2, 2)


@pytest.mark.parametrize("name, formula", [("pointed", lambda n, m: (n + 1) ** m),
                                           ("semilattice", lambda n, m: (2 ** n - 1) ** m)])
def test_theory_hom_sizes(name, formula):
    l = monad_to_theory(tabulate(pres(name), 3))
    for n, m in itertools.product(range(4), repeat=2):
        assert len(l.hom(n, m)) == formula(n, m)


@pytest.mark.parametrize("name", ["empty", "pointed", "semilattice"])
def test_theory_monad_roundtrip(name):
    t = tabulate(pres(name), 2)
    back = theory_to_monad(monad_to_theory(t))
    assert back.sizes == t.sizes and back.unit == t.unit and back.ext == t.ext


def _involution_theory():
    base = named_base("trunc1")
    arrows = [(0, 0), (1, 0), (1, 1), (1, 1)]  # id_0, !, id_1, s

    def compose(g, f):
        if arrows[g][1] == 0:
            return 0 if arrows[f][0] == 0 else 1
        return 2 if (g == 3) == (f == 3) else 3

    cat = FinCategory.build(2, arrows, [0, 2], compose)
    J = FunctorData(base.cat, cat, (0, 1), (0, 1, 2))
    return LawTheory(1, base, cat, J, name="involution")


def test_involution_theory():
    l = _involution_theory()
    assert check_law_theory(l) == []
    t = theory_to_monad(l)
    assert t.sizes == (0, 2)
    models = enumerate_models(l, 2)
    # carrier 0, carrier 1, and the two involutions of a 2-set
    assert sorted(models.carriers()) == [0, 1, 2, 2]


def test_broken_tupling_rejected():
    l = theory_from_json(io.load(FIXTURES / "broken_tupling_theory.json"))
    assert any("tupling" in r for r in check_law_theory(l))
    with pytest.raises(PreconditionError):
        theory_to_monad(l)


def test_theory_json_roundtrip():
    l = monad_to_theory(tabulate(pres("pointed"), 2))
    l2 = theory_from_json(theory_to_json(l))
    assert compare_theories(l, l2.cat, l2.J) == []


@pytest.mark.parametrize("name", ["empty", "pointed", "semilattice"])
def test_cross_pipeline(name):
    t = tabulate(pres(name), 2)
    base = named_base("trunc2")
    l = monad_to_theory(t, base)
    lw = theory_from_monad(tabmonad_to_lexmonad(t, base))
    assert compare_theories(l, lw.cat, lw.J) == []


# -- models and algebras


def test_identity_models():
    models = enumerate_models(monad_to_theory(identity_tabmonad(2)), 2)
    assert models.carriers() == [0, 1, 2]
    # every function is a homomorphism
    assert models.cat.n_mor == sum(b ** a for a in range(3) for b in range(3))


def test_identity_algebras_k3():
    algs = enumerate_algebras(identity_tabmonad(3), 3)
    assert algs.carriers() == [0, 1, 2, 3]


def test_pointed_models_against_pairs():
    t = tabulate(pres("pointed"), 2)
    models = enumerate_models(monad_to_theory(t), 2)
    pairs = [(s, p) for s in range(3) for p in range(s)]
    assert sorted(models.carriers()) == sorted(s for s, _ in pairs)
    # morphisms: point-preserving functions between (carrier, point) pairs
    expected = sum(1 for (s, p), (r, q) in itertools.product(pairs, repeat=2)
                   for h in itertools.product(range(r), repeat=s) if h[p] == q)
    assert models.cat.n_mor == expected
    assert enumerate_algebras(t, 2).cat.n_mor == expected


def _semilattice_ops_on_two():
    count = 0
    for table in itertools.product(range(2), repeat=4):
        def j(a, b):
            return table[2 * a + b]
        if all(j(a, a) == a for a in range(2)) and all(j(a, b) == j(b, a) for a in range(2) for b in range(2)) \
                and all(j(j(a, b), c) == j(a, j(b, c)) for a, b, c in itertools.product(range(2), repeat=3)):
            count += 1
    return count


def test_semilattice_models_against_binary_ops():
    assert _semilattice_ops_on_two() == 2
    models = enumerate_models(monad_to_theory(tabulate(pres("semilattice"), 2)), 2)
    assert models.carriers().count(2) == 2


def test_em_algebras_independent():
    t = tabulate(pres("pointed"), 2)
    algs, cat, _ = em_algebras(t, 2)
    assert sorted(a.carrier for a in algs) == [1, 2, 2]
    with pytest.raises(PreconditionError):
        em_algebras(t, 3)


@pytest.mark.parametrize("name, carriers", [("empty", [0, 1, 2]), ("pointed", [1, 2, 2]),
                                            ("semilattice", [0, 1, 2, 2])])
def test_triangle(name, carriers):
    res = check_triangle(tabulate(pres(name), 2), 2)
    assert res["passed"], res["failures"]
    assert sorted(res["carriers"]) == carriers
    assert res["semantics"]["passed"]


def test_triangle_identity_iso_classes():
    res = check_triangle(identity_tabmonad(2), 2, with_semantics=False)
    assert res["passed"] and len(res["iso_classes"]) == 3


@given(st.sampled_from(["empty", "pointed", "semilattice"]), st.integers(1, 2))
@settings(max_examples=12, deadline=None)
def test_one_element_models(name, N):
    # on a single element every operation is forced, so there is exactly one model
    l = monad_to_theory(tabulate(pres(name), N), named_base(f"trunc{N}"))
    assert enumerate_models(l, 1).carriers().count(1) == 1
