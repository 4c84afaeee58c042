import itertools

import pytest
from hypothesis import given, settings, strategies as st

from catkit.algebra import monad_to_theory, tabulate, PRESENTATIONS
from catkit.errors import ResourceError
from catkit.fincat import (FinCategory, FinLattice, FunctorData, LexBase, NatTransData, antichain_with_top, chain,
                           check_category, check_functor, check_lex_functor, check_lex_point, check_nat_trans, diamond,
                           enumerate_functors, enumerate_lex_maps, enumerate_lex_points, enumerate_nat_trans,
                           find_natural_iso, identity_functor, is_equivalence, lattice_to_category, named_base,
                           opposite, poset_from_relation)
from catkit.io import functor_from_map


def _terminal_cat():
    return FinCategory(1, (0,), (0,), (0,), {(0, 0): 0})


def test_terminal_category_is_fine():
    assert check_category(_terminal_cat()) == []


def test_broken_unit_is_reported():
    c = lattice_to_category(chain(2))
    arrow = c.hom(0, 1)[0]
    comp = dict(c.comp)
    comp[(c.ident[1], arrow)] = c.ident[0]
    bad = FinCategory(c.n_obj, c.dom, c.cod, c.ident, comp)
    report = check_category(bad)
    assert report and "boundary" in report[0]
    # same fault but well-typed: a second parallel arrow
    arrows = [(0, 0), (1, 1), (0, 1), (0, 1)]
    table = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (3, 0): 3, (1, 2): 3, (1, 3): 3}
    bad = FinCategory(2, tuple(a for a, _ in arrows), tuple(b for _, b in arrows), (0, 1), table)
    report = check_category(bad)
    assert any("left unit fails at (object 1, morphism 2)" in r for r in report)


def test_trunc_base_is_category():
    base = named_base("trunc2")
    assert check_category(base.cat) == []
    for n, m in itertools.product(range(3), repeat=2):
        assert len(base.cat.hom(n, m)) == n ** m


@pytest.mark.parametrize("lat, count", [(chain(2), 3), (diamond(), 9)])
def test_lattice_morphism_counts(lat, count):
    c = lattice_to_category(lat)
    assert c.n_mor == count
    assert check_category(c) == []


def test_antichain_with_top():
    p = antichain_with_top(2)
    assert p.check() == []
    c = lattice_to_category(p)
    assert c.n_mor == 5
    assert lattice_to_category(antichain_with_top(3)).n_mor == 7


def test_lattice_validation():
    with pytest.raises(ValueError):
        poset_from_relation(["a", "b"], [], FinLattice)


def _random_lattice(draw):
    # grids (products of two chains) are always lattices
    p, q = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    names = [f"{i}{j}" for i in range(p) for j in range(q)]
    pairs = [(f"{i}{j}", f"{i + 1}{j}") for i in range(p - 1) for j in range(q)]
    pairs += [(f"{i}{j}", f"{i}{j + 1}") for i in range(p) for j in range(q - 1)]
    return poset_from_relation(names, pairs, FinLattice)


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_lattice_categories_are_thin(data):
    lat = _random_lattice(data.draw)
    c = lattice_to_category(lat)
    assert check_category(c) == []
    base = LexBase.from_lattice(lat, "grid")
    # |hom(c, b x b)| = |hom(c, b)|^2 forces at most one arrow
    for cone in base.cones:
        if cone.left == cone.right:
            for x in range(c.n_obj):
                assert len(c.hom(x, cone.apex)) == len(c.hom(x, cone.left)) ** 2
    assert all(len(h) <= 1 for h in c.homs.values())


def _principal_filters(lat):
    return {frozenset(j for j in range(lat.size) if lat.leq[i][j]) for i in range(lat.size)}


@pytest.mark.parametrize("name, count", [("chain2", 2), ("chain3", 3), ("diamond", 4)])
def test_lex_points_are_filters(name, count):
    base = named_base(name)
    pts = enumerate_lex_points(base, 1)
    assert len(pts) == count
    assert {p.filter for p in pts} == _principal_filters(base.lattice)
    for p in pts:
        assert check_lex_point(p) == []


@given(st.data())
@settings(max_examples=15, deadline=None)
def test_lex_points_match_principal_filters(data):
    lat = _random_lattice(data.draw)
    base = LexBase.from_lattice(lat, "grid")
    assert {p.filter for p in enumerate_lex_points(base, 1)} == _principal_filters(lat)


def test_chain2_filters():
    pts = enumerate_lex_points(named_base("chain2"), 1)
    assert [sorted(p.filter) for p in pts] == [[1], [0, 1]]


def test_trunc_points():
    base = named_base("trunc2")
    pts = enumerate_lex_points(base, 2)
    assert [p.carrier for p in pts] == [0, 1, 2]
    assert pts[2].sizes == (1, 2, 4)
    for p in pts:
        assert check_lex_point(p) == []


def test_trunc_points_resource_bound():
    from catkit.errors import LIMITS
    old = LIMITS.max_candidates
    LIMITS.max_candidates = 10
    try:
        with pytest.raises(ResourceError):
            enumerate_lex_points(named_base("trunc3"), 5)
    finally:
        LIMITS.max_candidates = old


def test_lex_functor_checks():
    D = named_base("diamond")
    assert check_lex_functor(D, identity_functor(D.cat)) == []
    # a and b both sent to top, while their meet stays at bottom
    F = functor_from_map(D, D.cat, [0, 3, 3, 3])
    report = check_lex_functor(D, F)
    assert any("(a, b)" in r for r in report)


def test_j_into_theory_is_lex():
    t = tabulate(PRESENTATIONS["semilattice"](), 2)
    th = monad_to_theory(t)
    assert check_lex_functor(th.base, th.J) == []


def test_functor_enumeration_and_nat_trans():
    C = lattice_to_category(chain(2))
    fs = enumerate_functors(C, C)
    # monotone self-maps of a 2-chain
    assert len(fs) == 3
    for F in fs:
        assert check_functor(F) == []
    const0, ident, const1 = sorted(fs, key=lambda F: F.obj_map)
    assert len(enumerate_nat_trans(const0, const1)) == 1
    assert enumerate_nat_trans(const1, const0) == []
    assert find_natural_iso(ident, ident) is not None
    assert find_natural_iso(const0, ident) is None
    nt = enumerate_nat_trans(const0, ident)[0]
    assert check_nat_trans(nt) == []
    bad = NatTransData(ident, const0, nt.components)
    assert check_nat_trans(bad)


def test_equivalence_and_opposite():
    C = lattice_to_category(diamond())
    assert is_equivalence(identity_functor(C))
    assert check_category(opposite(C)) == []
    c2 = lattice_to_category(chain(2))
    collapse = FunctorData(c2, c2, (1, 1), (c2.ident[1],) * 3)
    assert check_functor(collapse) == []
    assert not is_equivalence(collapse)


def test_lex_maps_between_truncated_bases():
    maps = enumerate_lex_maps(named_base("trunc1"), named_base("trunc2"))
    assert [F.obj_map for F in maps] == [(0, 0), (0, 1), (0, 2)]
    for F in maps:
        assert check_functor(F) == []
        assert check_lex_functor(named_base("trunc1"), F) == []


def test_lex_maps_between_lattices():
    A, B = named_base("chain2"), named_base("diamond")
    maps = enumerate_lex_maps(A, B)
    assert maps
    for F in maps:
        assert F.obj_map[1] == 3  # top goes to top
