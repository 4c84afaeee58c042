import itertools

import pytest

from catkit.algebra import PRESENTATIONS, identity_tabmonad, tabulate
from catkit.errors import PreconditionError
from catkit.fincat import check_lex_functor, enumerate_lex_points, filter_point, named_base, scale_map
from catkit.io import functor_from_map
from catkit.lexprof import ProfMorphism, conjoint, identity_prof
from catkit.wcat import (LexMonad, act_S, check_lawvere, check_sem_object, check_wcategory, enumerate_lattice_monads,
                         find_monad_iso, identity_monad, interior_operators, monad_from_theory, monad_to_oneobject,
                         relation_monad, restrict, roundtrip_monad, semantics, tabmonad_to_lexmonad,
                         theory_from_monad, eta)


def _brute_force_monads(A):
    """Relations containing the order, transitive, with filter rows."""
    lat = A.lattice
    n = lat.size
    filters = set(lat.filters())
    count = 0
    for bits in itertools.product((False, True), repeat=n * n):
        rel = [bits[i * n:(i + 1) * n] for i in range(n)]
        if any(lat.leq[i][j] and not rel[i][j] for i in range(n) for j in range(n)):
            continue
        if any(frozenset(j for j in range(n) if rel[i][j]) not in filters for i in range(n)):
            continue
        if all(not (rel[i][j] and rel[j][k]) or rel[i][k] for i, j, k in itertools.product(range(n), repeat=3)):
            count += 1
    return count


@pytest.mark.parametrize("name, count", [("chain2", 2), ("chain3", 4), ("diamond", 7)])
def test_lattice_monad_counts(name, count):
    A = named_base(name)
    monads = enumerate_lattice_monads(A)
    assert len(monads) == count == len(interior_operators(A)) == _brute_force_monads(A)


@pytest.mark.parametrize("name", ["chain2", "chain3", "diamond"])
def test_roundtrip_all_lattice_monads(name):
    for m in enumerate_lattice_monads(named_base(name)):
        res = roundtrip_monad(m)
        assert res["passed"], res


def test_relation_monad_rejects_non_reflexive():
    with pytest.raises(PreconditionError):
        relation_monad(named_base("chain2"), ((False, True), (False, True)))


def test_monad_laws_checked():
    A = named_base("chain3")
    # 2 -> 1 -> 0 without 2 -> 0: multiplication has nowhere to go
    bad = relation_monad(A, ((True, True, True), (True, True, True), (False, True, True)))
    with pytest.raises(PreconditionError):
        monad_to_oneobject(bad)


def test_identity_monad_roundtrip_on_the_nose():
    for name in ("chain3", "trunc2"):
        A = named_base(name)
        m = identity_monad(A)
        m2 = monad_from_theory(theory_from_monad(m))
        assert m2.cell.same_tables(m.cell)
        assert m2.unit.key() == m.unit.key()
        assert monad_to_oneobject(m, check=False).compose is not None


def test_identity_monad_is_unit_wcategory():
    A = named_base("diamond")
    c = monad_to_oneobject(identity_monad(A))
    assert c.hom(0, 0).same_tables(identity_prof(A))


def test_identity_theory_sizes():
    A = named_base("trunc2")
    lw = theory_from_monad(tabmonad_to_lexmonad(identity_tabmonad(2), A))
    assert check_lawvere(lw) == []
    for n, m in itertools.product(range(3), repeat=2):
        assert len(lw.cat.hom(n, m)) == n ** m


def test_pointed_theory_sizes():
    t = tabulate(PRESENTATIONS["pointed"](), 2)
    lw = theory_from_monad(tabmonad_to_lexmonad(t, named_base("trunc2")))
    for n, m in itertools.product(range(3), repeat=2):
        assert len(lw.cat.hom(n, m)) == (n + 1) ** m


def test_semilattice_theory_unary_sizes():
    t = tabulate(PRESENTATIONS["semilattice"](), 2)
    lw = theory_from_monad(tabmonad_to_lexmonad(t, named_base("trunc2")))
    m = monad_from_theory(lw)
    assert [m.cell.size(n, 1) for n in range(3)] == [0, 1, 3]


def test_order_closure_theory_is_preorder():
    A = named_base("chain3")
    for m in enumerate_lattice_monads(A):
        lw = theory_from_monad(m)
        L = lw.cat
        for i, j in itertools.product(range(3), repeat=2):
            assert len(L.hom(i, j)) <= 1
            if A.lattice.leq[i][j]:
                assert lw.J.mor_map[A.cat.hom(i, j)[0]] == L.hom(i, j)[0]


@pytest.mark.parametrize("name", ["pointed", "semilattice", "empty"])
def test_tabmonad_embedding_roundtrip(name):
    t = tabulate(PRESENTATIONS[name](), 2)
    m = tabmonad_to_lexmonad(t, named_base("trunc2"))
    assert check_wcategory(monad_to_oneobject(m, check=False)) == []
    assert roundtrip_monad(m)["passed"]


def test_monad_iso_detects_difference():
    A = named_base("chain2")
    m1, m2 = enumerate_lattice_monads(A)
    assert find_monad_iso(m1, m1) is not None
    assert find_monad_iso(m1, m2) is None


def test_base_mismatch_rejected():
    with pytest.raises(PreconditionError):
        tabmonad_to_lexmonad(identity_tabmonad(2), named_base("trunc1"))


# -- semantics


def test_act_S_identity():
    for name in ("chain3", "diamond"):
        A = named_base(name)
        I = identity_prof(A)
        for P in enumerate_lex_points(A, 1):
            assert act_S(I, P).sizes == P.sizes
    A = named_base("trunc2")
    for P in enumerate_lex_points(A, 2):
        Q = act_S(identity_prof(A), P)
        assert Q.sizes == P.sizes


def test_act_S_conjoint_is_existential():
    A, B = named_base("chain2"), named_base("diamond")
    for om in ([0, 3], [1, 3], [0, 1], [3, 3]):
        F = functor_from_map(A, B.cat, om)
        if check_lex_functor(A, F):
            continue
        W = conjoint(F, A, B)
        for P in enumerate_lex_points(A, 1):
            Q = act_S(W, P)
            expected = tuple(int(any(a in P.filter and B.lattice.leq[om[a]][b] for a in range(2)))
                             for b in range(4))
            assert Q.sizes == expected


def test_act_S_tabmonad_free_algebra():
    t = tabulate(PRESENTATIONS["semilattice"](), 2)
    A = named_base("trunc2")
    m = tabmonad_to_lexmonad(t, A)
    P = enumerate_lex_points(A, 2)[2]
    Q = act_S(m.cell, P)
    # the free semilattice on two generators has 3 elements
    assert Q.sizes == (1, 3, 9)


def test_semantics_of_unit_is_lex_points():
    for name in ("chain2", "diamond"):
        A = named_base(name)
        sem = semantics(monad_to_oneobject(identity_monad(A)), 1)
        assert sem.cat.n_obj == len(enumerate_lex_points(A, 1))


@pytest.mark.parametrize("name", ["chain2", "chain3"])
def test_semantics_of_lattice_monads(name):
    A = named_base(name)
    lat = A.lattice
    for m in enumerate_lattice_monads(A):
        c = monad_to_oneobject(m)
        sem = semantics(c, 1)
        closed = [f for f in lat.filters()
                  if all(j in f for i in f for j in range(lat.size) if m.cell.size(i, j))]
        fixed = [P.filter for P in enumerate_lex_points(A, 1) if act_S(m.cell, P).sizes == P.sizes]
        assert sorted(map(sorted, closed)) == sorted(map(sorted, fixed))
        assert sorted(sorted(F.points[0].filter) for F in sem.objects) == sorted(map(sorted, closed))
        for F in sem.objects:
            assert check_sem_object(c, F) == []


def test_semantics_restricts_along_eta():
    A = named_base("chain3")
    for m in enumerate_lattice_monads(A):
        c = monad_to_oneobject(m)
        K = eta(c)
        sc, sg = semantics(c, 1), semantics(K.dst, 1)
        R = restrict(sg, sc, K)
        assert (sc.cat.n_obj, sc.cat.n_mor) == (sg.cat.n_obj, sg.cat.n_mor)
        assert sorted(R.obj_map) == list(range(sc.cat.n_obj))


def test_filter_point_helper():
    A = named_base("chain2")
    P = filter_point(A, frozenset({1}))
    assert P.sizes == (0, 1)
    assert scale_map(named_base("trunc1"), named_base("trunc2"), 2).obj_map == (0, 2)
    assert isinstance(identity_monad(A), LexMonad)
    assert isinstance(identity_monad(A).unit, ProfMorphism)
