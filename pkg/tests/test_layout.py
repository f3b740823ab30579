import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import random_extension, random_order
from queueposet import (
    NotALinearExtension,
    Poset,
    QueueLayout,
    LinearExtension,
    assign_queues,
    max_rainbow,
    rainbow_bruteforce_oracle,
    verify_layout,
    weak_order,
)
from queueposet.layout import rainbow_of_order


def test_chain_needs_one_queue():
    p = Poset("abc", [("a", "b"), ("b", "c")])
    assert max_rainbow(p, "abc")[0] == 1
    assert assign_queues(p, "abc").queue_count == 1


def test_covers_sharing_an_endpoint_are_not_nested():
    p = Poset("abc", [("a", "b"), ("a", "c")])
    assert max_rainbow(p, "abc")[0] == 1


@pytest.mark.parametrize("k", [2, 3, 4])
def test_weak_order_bad_extension_true_value(k):
    # strict nesting needs 2k distinct positions, so k is the most a [k, k] weak order can show
    p = weak_order([k, k])
    a = [f"a{i}" for i in range(1, k + 1)]
    b = [f"b{i}" for i in range(k, 0, -1)]
    size, rainbow = max_rainbow(p, a + b)
    assert size == k == rainbow_bruteforce_oracle(p, a + b)
    assert rainbow.is_valid(a + b)


def test_max_rainbow_rejects_non_extension():
    with pytest.raises(NotALinearExtension):
        max_rainbow(Poset("ab", [("a", "b")]), "ba")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rainbow_matches_oracle_and_queues_are_valid(seed):
    rng = random.Random(seed)
    p = random_order(rng, rng.randint(1, 9), rng.uniform(0.1, 0.6))
    order = random_extension(rng, p)
    k, rainbow = max_rainbow(p, order)
    assert k == len(rainbow) and rainbow.is_valid(order)
    assert set(rainbow.covers) <= set(p.covers)
    if len(p.covers) <= 20:
        assert k == rainbow_bruteforce_oracle(p, order)
    layout = assign_queues(p, order)
    assert layout.queue_count == k
    assert verify_layout(p, layout).ok


def test_rainbow_of_arbitrary_vertex_order():
    edges = [("a", "d"), ("b", "c"), ("a", "b")]
    assert len(rainbow_of_order(edges, "abcd")) == 2
    assert len(rainbow_of_order(edges, "dcba")) == 2
    assert len(rainbow_of_order([], "ab")) == 0


def _layout(order, queue_of, count):
    return QueueLayout(LinearExtension(tuple(order)), queue_of, count)


def test_verify_reports_each_violation_kind():
    p = Poset("abcd", [("a", "b"), ("b", "c"), ("a", "d")])
    # a-d spans b-c in one queue
    nested = verify_layout(p, _layout("abcd", {("a", "b"): 0, ("b", "c"): 0, ("a", "d"): 0}, 1))
    assert ("nested in one queue", ("a", "d"), ("b", "c"), 0) in nested.violations
    fixed = verify_layout(p, _layout("abcd", {("a", "b"): 0, ("b", "c"): 0, ("a", "d"): 1}, 2))
    assert fixed.ok and bool(fixed)

    wrong = verify_layout(p, _layout("bacd", {}, 1))
    kinds = {v[0] for v in wrong.violations}
    assert kinds == {"not a linear extension", "cover not assigned"}
    assert ("not a linear extension", ("a", "b")) in wrong.violations

    assert verify_layout(p, _layout("abc", {}, 1)).violations == [("not a permutation of the ground set",)]
    extra = verify_layout(p, _layout("abcd", {("a", "b"): 0, ("b", "c"): 0, ("a", "d"): 5, ("a", "c"): 0}, 1))
    assert ("not a cover", ("a", "c")) in extra.violations
    assert ("queue index out of range", ("a", "d"), 5) in extra.violations
