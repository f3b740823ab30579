import itertools
import random

import networkx as nx
import pytest

from generators import random_extension
from queueposet import (
    NotALinearExtension,
    NotBipartition,
    counterexample_witness,
    exact_queue_number,
    height,
    height2_counterexample,
    poset_from_bipartite,
    q_height,
    q_width,
    small_patterns,
    subdivided_crown,
    weak_order,
    width,
)


def undirected(p):
    g = nx.Graph()
    g.add_nodes_from(p.elements)
    g.add_edges_from(p.covers)
    return g


@pytest.mark.parametrize("k", [2, 3, 4])
def test_subdivided_crown(k):
    p = subdivided_crown(k)
    assert len(p) == 3 * k and len(p.covers) == 3 * k
    assert width(p).width == k and height(p).height == 3
    assert p.is_cover("a1", f"c{k}")
    with pytest.raises(ValueError):
        subdivided_crown(1)


def test_weak_order():
    assert height(weak_order([1, 1, 1])).height == 3
    p = weak_order([3, 3])
    assert width(p).width == 3 and len(p.covers) == 9
    assert exact_queue_number(weak_order([2, 2, 2])).k == 2
    with pytest.raises(ValueError):
        weak_order([2, 0])


@pytest.mark.parametrize("w,n", [(1, 2), (2, 7), (3, 17), (4, 37)])
def test_q_width_shape(w, n):
    p, d = q_width(w)
    assert len(p) == n and width(p).width == w
    assert d.poset is p
    if w > 1:
        assert p.zero == "a" and p.one == "c"
    assert nx.check_planarity(undirected(p))[0]


def test_counterexample_shape():
    p, xs, ys = height2_counterexample()
    # 2 + 10 + 9 * 4 elements, 20 + 72 covers
    assert len(p) == 48 and len(p.covers) == 92
    assert height(p).height == 2
    assert set(p.minimal()) == set(xs) and set(p.maximal()) == set(ys)
    assert nx.check_planarity(undirected(p))[0]


def test_counterexample_witness_random():
    p, _, _ = height2_counterexample()
    rng = random.Random(13)
    for _ in range(500):
        order = random_extension(rng, p)
        rainbow = counterexample_witness(order)
        assert len(rainbow) == 4 and rainbow.is_valid(order)
        assert all(p.is_cover(*c) for c in rainbow.covers)


def test_counterexample_witness_c_below_both_a():
    p, xs, ys = height2_counterexample()
    order = list(xs) + [y for y in ys if y.startswith("c")] + ["a1", "a2"]
    rainbow = counterexample_witness(order)
    # both a's close the two outermost covers
    assert rainbow.covers[0] == ("b1", "a2") and rainbow.covers[1] == ("b2", "a1")
    with pytest.raises(NotALinearExtension):
        counterexample_witness(list(reversed(order)))


@pytest.mark.parametrize("h,n,v", [(2, 3, 1), (3, 8, 2), (4, 18, 4), (5, 38, 8)])
def test_q_height_shape(h, n, v):
    p, vs = q_height(h)
    assert len(p) == n and len(vs) == v and height(p).height == h
    for x, y, z in vs:
        assert p.is_cover(y, x) and p.is_cover(y, z) and p.incomparable(x, z)
    for v1, v2 in itertools.combinations(vs, 2):
        assert all(p.incomparable(a, b) for a in v1 for b in v2)
    with pytest.raises(ValueError):
        q_height(1)


def test_poset_from_bipartite():
    star = poset_from_bipartite("abcd", [("a", "b"), ("c", "a"), ("a", "d")], "a", "bcd")
    assert set(star.covers) == {("a", "b"), ("a", "c"), ("a", "d")}
    assert poset_from_bipartite("xy", [], "x", "y").lt == frozenset()
    p, xs, ys = height2_counterexample()
    assert poset_from_bipartite(p.elements, [(b, a) for a, b in p.covers], xs, ys) == p
    with pytest.raises(NotBipartition):
        poset_from_bipartite("ab", [("a", "b")], "ab", "")
    with pytest.raises(NotBipartition):
        poset_from_bipartite("abc", [("a", "c")], "ac", "b")


def test_small_patterns():
    assert set(small_patterns("2+2").covers) == {("a", "b"), ("c", "d")}
    n = small_patterns("N")
    assert width(n).width == 2 and len(n.covers) == 3
    with pytest.raises(ValueError):
        small_patterns("X")
