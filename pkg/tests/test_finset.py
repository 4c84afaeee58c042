import itertools
import random
from collections import deque

import pytest
from hypothesis import given, strategies as st

from catkit.errors import BoundsError, CompositionError, ResourceError, LIMITS
from catkit.finset import (FinSetObj, Partition, coequalize, compose_fn, decode_tuple, encode_tuple,
                           enumerate_fns, fn, identity_fn, product)


def test_finset_labels_must_match():
    FinSetObj(2, ("a", "b"))
    with pytest.raises(ValueError):
        FinSetObj(2, ("a", "a"))
    with pytest.raises(ValueError):
        FinSetObj(2, ("a",))
    with pytest.raises(ValueError):
        FinSetObj(-1)


def test_table_entries_in_range():
    with pytest.raises(BoundsError):
        fn(2, 2, [0, 2])


def test_compose_examples():
    f = fn(2, 3, [2, 0])
    assert compose_fn(identity_fn(FinSetObj(3)), f).table == (2, 0)
    assert compose_fn(fn(3, 2, [1, 1, 0]), fn(2, 3, [0, 2])).table == (1, 0)


def test_compose_mismatch():
    with pytest.raises(CompositionError):
        compose_fn(fn(2, 2, [0, 1]), fn(2, 3, [0, 1]))


def test_compose_random_against_pointwise():
    rng = random.Random(7)
    for _ in range(50):
        f = fn(4, 5, [rng.randrange(5) for _ in range(4)])
        g = fn(5, 3, [rng.randrange(3) for _ in range(5)])
        assert compose_fn(g, f).table == tuple(g(f(i)) for i in range(4))


def test_compose_assoc_and_unit_exhaustive():
    # every composable triple through sets of size <= 2, plus units on size <= 4
    sizes = range(3)
    for a, b, c, d in itertools.product(sizes, repeat=4):
        for f in enumerate_fns(a, b):
            for g in enumerate_fns(b, c):
                gf = compose_fn(g, f)
                for h in enumerate_fns(c, d):
                    assert compose_fn(h, gf) == compose_fn(compose_fn(h, g), f)
    for a, b in itertools.product(range(5), repeat=2):
        if b ** a > 1000:
            continue
        for f in enumerate_fns(a, b):
            assert compose_fn(identity_fn(f.cod), f) == f
            assert compose_fn(f, identity_fn(f.dom)) == f


def test_product_layout():
    p, _, _ = product(FinSetObj(0), FinSetObj(5))
    assert p.size == 0
    p, p1, p2 = product(FinSetObj(2), FinSetObj(3))
    assert p.size == 6
    assert p1.table == (0, 0, 0, 1, 1, 1)
    assert p2.table == (0, 1, 2, 0, 1, 2)


def test_product_pairing_bijective():
    p, p1, p2 = product(FinSetObj(3), FinSetObj(3))
    pairs = [(p1(k), p2(k)) for k in range(p.size)]
    assert sorted(pairs) == list(itertools.product(range(3), repeat=2))
    assert len(set(pairs)) == 9


def test_coequalize_examples():
    part, q = coequalize([], 3)
    assert q.table == (0, 1, 2)
    _, q = coequalize([(0, 1)], 3)
    assert q.cod.size == 2
    part, q = coequalize([(0, 1), (1, 2), (4, 5)], 6)
    assert q.cod.size == 3
    assert part.blocks() == [[0, 1, 2], [3], [4, 5]]
    assert q.is_surjective()


def test_coequalize_bounds():
    with pytest.raises(BoundsError):
        coequalize([(0, 3)], 3)


def _bfs_components(n, pairs):
    adj = {i: set() for i in range(n)}
    for i, j in pairs:
        adj[i].add(j)
        adj[j].add(i)
    comp = [-1] * n
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = s
        todo = deque([s])
        while todo:
            x = todo.popleft()
            for y in adj[x]:
                if comp[y] < 0:
                    comp[y] = s
                    todo.append(y)
    return comp


@given(st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=15))))
def test_coequalize_matches_bfs(case):
    n, pairs = case
    _, q = coequalize(pairs, n)
    comp = _bfs_components(n, pairs)
    for i, j in itertools.product(range(n), repeat=2):
        assert (q(i) == q(j)) == (comp[i] == comp[j])
    # dense codomain ordered by least member
    firsts = [q(i) for i in range(n) if all(q(k) != q(i) for k in range(i))]
    assert firsts == list(range(q.cod.size))


def test_coequalize_order_independent():
    rng = random.Random(11)
    n = 10
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(7)]
    ref = coequalize(pairs, n)[0].blocks()
    for _ in range(120):
        shuffled = [(j, i) if rng.random() < 0.5 else (i, j) for i, j in pairs]
        rng.shuffle(shuffled)
        assert coequalize(shuffled, n)[0].blocks() == ref


def test_partition_find_idempotent():
    part = Partition(5)
    part.union(4, 2)
    part.union(2, 3)
    assert part.find(4) == 2
    assert part.find(part.find(3)) == part.find(3)


def test_enumerate_counts_and_order():
    assert len(enumerate_fns(2, 3)) == 9
    assert len(enumerate_fns(0, 0)) == 1
    fs = enumerate_fns(3, 2)
    assert len(fs) == 8
    assert fs[0].table == (0, 0, 0) and fs[-1].table == (1, 1, 1)
    assert [f.table for f in fs] == sorted(f.table for f in fs)
    assert len(enumerate_fns(2, 0)) == 0


def test_enumerate_resource_bound():
    old = LIMITS.max_candidates
    LIMITS.max_candidates = 100
    try:
        with pytest.raises(ResourceError):
            enumerate_fns(5, 3)
    finally:
        LIMITS.max_candidates = old


@given(st.integers(1, 5), st.integers(0, 4), st.data())
def test_tuple_encoding_roundtrip(base, length, data):
    xs = tuple(data.draw(st.lists(st.integers(0, base - 1), min_size=length, max_size=length)))
    k = encode_tuple(xs, base)
    assert 0 <= k < max(base ** length, 1)
    assert decode_tuple(k, base, length) == xs
