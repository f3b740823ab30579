"""Exact queue-number by depth-first search over linear extensions.

The search appends minimal elements one at a time.  Besides the set of
placed elements it tracks, for every placed element that still has an
unplaced upper cover ("open" left endpoint), the largest rainbow formed by
closed covers starting strictly after it.  Every such closed cover is
nested inside each open cover leaving that element, so ``depth + 1`` is a
lower bound that can never decrease; branches exceeding the target are cut.
That summary fully determines the future, so failed states are memoised.

A second bound looks ahead: a cover (a, b) with a still unplaced is nested
inside an open cover (w, u) whenever b < u in the poset, whatever happens
next.  Chaining such forced nestings gives a value every open cover must
reach, and a state is cut as soon as one exceeds the target.
"""

from __future__ import annotations

import os
import time
from collections.abc import Hashable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Literal

from .errors import TooLarge
from .layout import QueueLayout, assign_queues, max_rainbow
from .poset import LinearExtension, Poset, bits, linear_extensions
from .strategies import any_extension_layout

Status = Literal["exact", "lower_bound", "timeout"]


@dataclass(frozen=True)
class ExactResult:
    """Outcome of :func:`exact_queue_number`.

    ``exact``: ``k`` is the queue-number and ``layout`` attains it.
    ``lower_bound``: no layout with at most ``limit`` queues; ``lower = limit + 1``.
    ``timeout``: the budget ran out; ``lower``/``upper`` are the verified bounds
    and ``layout`` realises ``upper``.
    """

    status: Status
    lower: int
    upper: int | None
    layout: QueueLayout | None = None

    @property
    def k(self) -> int | None:
        return self.lower if self.status == "exact" else None


class _OutOfTime(Exception):
    pass


class _Search:
    def __init__(self, p: Poset, target: int, deadline: float | None) -> None:
        self.n = len(p)
        self.full = (1 << self.n) - 1
        self.down = p._down
        self.cdown = p._cover_down
        self.cup = p._cover_up
        self.t = target
        self.deadline = deadline
        self.failed: set = set()
        self.nodes = 0
        self._forced(p)

    def _forced(self, p: Poset) -> None:
        """Static nesting chains: ``chain[c]`` covers are forced inside-or-equal to cover c."""
        idx = {e: i for i, e in enumerate(p.elements)}
        cov = [(idx[a], idx[b]) for a, b in p.covers]
        up, down = p._up, p._down
        chain = [0] * len(cov)
        for c in sorted(range(len(cov)), key=lambda c: bin(up[cov[c][0]] & down[cov[c][1]]).count("1")):
            a, b = cov[c]
            chain[c] = 1 + max(
                (chain[d] for d, (a2, b2) in enumerate(cov) if up[a] >> a2 & 1 and down[b] >> b2 & 1),
                default=0,
            )
        self.static_bound = max(chain, default=0)
        # for each u: (chain, lower end) of covers ending strictly below u, longest first
        self.inside = [
            sorted(((chain[c], a) for c, (a, b) in enumerate(cov) if down[u] >> b & 1), reverse=True)
            for u in range(self.n)
        ]

    def _future(self, u: int, placed: int) -> int:
        for h, a in self.inside[u]:
            if not placed >> a & 1:
                return h
        return 0

    def hopeless(self, placed: int, opens: tuple) -> bool:
        t = self.t
        later: list[tuple[int, int]] = []  # (upper end, forced value) of open covers to the right
        for w, dw in reversed(opens):
            down_rem = []
            for u in bits(self.cup[w] & ~placed):
                g = max(dw, self._future(u, placed))
                du = self.down[u]
                for u2, g2 in later:
                    if g2 > g and du >> u2 & 1:
                        g = g2
                g += 1
                if g > t:
                    return True
                down_rem.append((u, g))
            later.extend(down_rem)
        return False

    def step(self, placed: int, opens: tuple, v: int) -> tuple | None:
        """State after appending v, or None when the target is exceeded."""
        lower = self.cdown[v]
        now = placed | 1 << v
        t = self.t
        running = 0
        out = []
        for w, dw in reversed(opens):
            nd = dw if dw > running else running
            if lower >> w & 1:
                if dw + 1 > running:
                    running = dw + 1
            if self.cup[w] & ~now:
                if nd + 1 > t:
                    return None
                out.append((w, nd))
        if running > t:
            return None
        out.reverse()
        if self.cup[v]:
            out.append((v, 0))
        out = tuple(out)
        if self.hopeless(now, out):
            return None
        return now, out

    def run(self, placed: int, opens: tuple, trail: list[int]) -> bool:
        if placed == self.full:
            return True
        key = (placed, opens)
        if key in self.failed:
            return False
        self.nodes += 1
        if self.deadline is not None and self.nodes % 2048 == 0 and time.monotonic() > self.deadline:
            raise _OutOfTime
        free = self.full & ~placed
        for v in bits(free):
            if self.down[v] & ~placed:
                continue
            nxt = self.step(placed, opens, v)
            if nxt is None:
                continue
            trail.append(v)
            if self.run(*nxt, trail):
                return True
            trail.pop()
        self.failed.add(key)
        return False


def _search_branch(p: Poset, target: int, first: int, deadline: float | None) -> list[int] | None:
    s = _Search(p, target, deadline)
    nxt = s.step(0, (), first)
    trail = [first]
    if nxt is not None and s.run(*nxt, trail):
        return trail
    return None


def _workers(requested: int | None) -> int:
    if requested is not None:
        return max(1, requested)
    try:
        return max(1, int(os.environ.get("QUEUEPOSET_THREADS", "1")))
    except ValueError:
        return 1


def _fits(p: Poset, target: int, deadline: float | None, workers: int) -> list[int] | None:
    if len(p) == 0:
        return []
    if _Search(p, target, deadline).static_bound > target:
        return None
    roots = [v for v in range(len(p)) if not p._down[v]]
    if workers > 1 and len(roots) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(roots))) as pool:
            results = list(pool.map(_search_branch, *zip(*[(p, target, r, deadline) for r in roots])))
        return next((r for r in results if r is not None), None)
    s = _Search(p, target, deadline)
    trail: list[int] = []
    return trail if s.run(0, (), trail) else None


def exact_queue_number(
    p: Poset,
    limit: int | None = None,
    time_budget: float | None = None,
    *,
    prune: bool = True,
    workers: int | None = None,
) -> ExactResult:
    """Least k such that some linear extension has no (k+1)-rainbow.

    Iterative deepening on the target; the first target admitting a complete
    extension is the answer.  ``prune=False`` enumerates every linear
    extension instead (test mode, tiny posets only).
    """
    if not prune:
        best = None
        for order in linear_extensions(p):
            k, _ = max_rainbow(p, order)
            if best is None or k < best[0]:
                best = (k, order)
        assert best is not None
        return ExactResult("exact", best[0], best[0], assign_queues(p, best[1]))

    deadline = None if time_budget is None else time.monotonic() + time_budget
    heuristic = any_extension_layout(p)
    upper = heuristic.queue_count
    lower = 1 if p.covers else 0
    stop = upper if limit is None else min(upper, limit + 1)
    n_workers = _workers(workers)
    for t in range(lower, stop):
        try:
            trail = _fits(p, t, deadline, n_workers)
        except _OutOfTime:
            return ExactResult("timeout", t, upper, heuristic)
        if trail is not None:
            layout = assign_queues(p, LinearExtension(tuple(p.elements[i] for i in trail)))
            assert layout.queue_count == t
            return ExactResult("exact", t, t, layout)
    if limit is not None and upper > limit:
        return ExactResult("lower_bound", limit + 1, None)
    return ExactResult("exact", upper, upper, heuristic)


def rainbow_bruteforce_oracle(p: Poset, ext: Sequence[Hashable] | LinearExtension) -> int:
    """Largest pairwise-nested subset of covers, by exhaustive enumeration."""
    covers = p.covers
    if len(covers) > 20:
        raise TooLarge(f"{len(covers)} covers; the oracle handles at most 20")
    order = ext.order if isinstance(ext, LinearExtension) else tuple(ext)
    pos = {e: i for i, e in enumerate(order)}
    spans = [(pos[u], pos[v]) for u, v in covers]

    def nested(i: int, j: int) -> bool:
        (a, b), (c, d) = spans[i], spans[j]
        return (a < c < d < b) or (c < a < b < d)

    best = 0
    def grow(chosen: list[int], start: int) -> None:
        nonlocal best
        best = max(best, len(chosen))
        for j in range(start, len(spans)):
            if all(nested(i, j) for i in chosen):
                chosen.append(j)
                grow(chosen, j + 1)
                chosen.pop()
    grow([], 0)
    return best
