"""Rainbows, queue assignment and layout verification for a fixed order."""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .poset import LinearExtension, Pair, Poset, check_extension


@dataclass(frozen=True)
class Rainbow:
    """Pairwise nested covers, outermost first."""

    covers: tuple[Pair, ...]

    def __len__(self) -> int:
        return len(self.covers)

    def is_valid(self, order: LinearExtension | Sequence[Hashable]) -> bool:
        pos = order.position if isinstance(order, LinearExtension) else {e: i for i, e in enumerate(order)}
        spans = [tuple(sorted((pos[u], pos[v]))) for u, v in self.covers]
        return all(a[0] < b[0] and b[1] < a[1] for a, b in zip(spans, spans[1:]))


@dataclass(frozen=True)
class QueueLayout:
    extension: LinearExtension
    queue_of: Mapping[Pair, int]
    queue_count: int
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def order(self) -> tuple[Hashable, ...]:
        return self.extension.order

    def queues(self) -> list[list[Pair]]:
        out: list[list[Pair]] = [[] for _ in range(self.queue_count)]
        for cover, q in self.queue_of.items():
            out[q].append(cover)
        return out


@dataclass
class LayoutReport:
    violations: list[tuple[Any, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _nesting_depths(spans: Sequence[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """For each span, the longest strictly nested chain ending at it (outer to inner).

    Returns (depth, predecessor) indexed like ``spans``.
    """
    idx = sorted(range(len(spans)), key=lambda k: (spans[k][0], spans[k][1]))
    tails: list[int] = []  # -right endpoint of best chain tail per length
    tail_id: list[int] = []
    depth = [0] * len(spans)
    pred = [-1] * len(spans)
    for k in idx:
        key = -spans[k][1]
        d = bisect_left(tails, key)
        if d == len(tails):
            tails.append(key)
            tail_id.append(k)
        else:
            tails[d] = key
            tail_id[d] = k
        depth[k] = d + 1
        pred[k] = tail_id[d - 1] if d else -1
    return depth, pred


def rainbow_of_order(edges: Iterable[Pair], order: Sequence[Hashable] | LinearExtension) -> Rainbow:
    """Largest rainbow of an undirected edge set under an arbitrary vertex order."""
    pos = order.position if isinstance(order, LinearExtension) else {e: i for i, e in enumerate(order)}
    edges = list(edges)
    spans = [tuple(sorted((pos[u], pos[v]))) for u, v in edges]
    if not edges:
        return Rainbow(())
    depth, pred = _nesting_depths(spans)
    k = max(range(len(edges)), key=lambda i: depth[i])
    chain = []
    while k != -1:
        chain.append(edges[k])
        k = pred[k]
    return Rainbow(tuple(reversed(chain)))


def max_rainbow(p: Poset, ext: Sequence[Hashable] | LinearExtension) -> tuple[int, Rainbow]:
    ext = check_extension(p, ext)
    rainbow = rainbow_of_order(p.covers, ext)
    return len(rainbow), rainbow


def assign_queues(p: Poset, ext: Sequence[Hashable] | LinearExtension) -> QueueLayout:
    """Queue of a cover = its nesting depth - 1; uses exactly max_rainbow queues."""
    ext = check_extension(p, ext)
    pos = ext.position
    covers = p.covers
    depth, _ = _nesting_depths([(pos[u], pos[v]) for u, v in covers])
    return QueueLayout(ext, {c: d - 1 for c, d in zip(covers, depth)}, max(depth, default=0))


def verify_layout(p: Poset, layout: QueueLayout) -> LayoutReport:
    report = LayoutReport()
    order = layout.extension.order
    pos = {e: i for i, e in enumerate(order)}
    if len(pos) != len(order) or set(pos) != set(p.elements):
        report.violations.append(("not a permutation of the ground set",))
        return report
    for a, b in sorted(p.lt, key=lambda ab: (p.index(ab[0]), p.index(ab[1]))):
        if pos[a] > pos[b]:
            report.violations.append(("not a linear extension", (a, b)))
    covers = set(p.covers)
    for c in p.covers:
        if c not in layout.queue_of:
            report.violations.append(("cover not assigned", c))
    by_queue: dict[int, list[Pair]] = {}
    for c, q in layout.queue_of.items():
        if c not in covers:
            report.violations.append(("not a cover", c))
        elif not 0 <= q < layout.queue_count:
            report.violations.append(("queue index out of range", c, q))
        else:
            by_queue.setdefault(q, []).append(c)
    for q, items in sorted(by_queue.items()):
        spans = [(pos[u], pos[v]) for u, v in items]
        for i in range(len(items)):
            for j in range(len(items)):
                (a, b), (c, d) = spans[i], spans[j]
                if a < c and d < b:
                    report.violations.append(("nested in one queue", items[i], items[j], q))
    return report
