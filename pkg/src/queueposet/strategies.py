"""Constructive queue-layout strategies, each with a proven queue bound."""

from __future__ import annotations

import heapq
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field

from .diagram import UpwardDiagram
from .errors import AugmentationFailed, InvalidLevels, MissingBounds, WidthExceeded
from .layout import QueueLayout, assign_queues, verify_layout
from .poset import (
    ChainPartition,
    LinearExtension,
    Pair,
    Poset,
    bits,
    check_extension,
    conjugate,
    height,
    width,
    with_bounds,
)


def any_extension_layout(p: Poset) -> QueueLayout:
    """Layout over the smallest-id-first topological order; at most width**2 queues."""
    layout = assign_queues(p, p.topological_order)
    layout.meta["strategy"] = "any"
    return layout


# -- width two and chain pairing -------------------------------------------


def lazy_extension(p: Poset, partition: ChainPartition) -> list[Hashable]:
    """Take minimal elements, staying on the chain of the previous element when possible."""
    chain_of = partition.chain_of
    down = p._down
    placed = 0
    last = None
    order: list[Hashable] = []
    for _ in range(len(p)):
        cands = [i for i in range(len(p)) if not placed >> i & 1 and down[i] & ~placed == 0]
        same = [i for i in cands if chain_of[p.elements[i]] == last]
        i = same[0] if same else cands[0]
        placed |= 1 << i
        last = chain_of[p.elements[i]]
        order.append(p.elements[i])
    return order


def blocks(order: Sequence[Hashable], partition: ChainPartition) -> list[list[Hashable]]:
    """Maximal runs of consecutive elements from the same chain."""
    out: list[list[Hashable]] = []
    chain_of = partition.chain_of
    for e in order:
        if out and chain_of[out[-1][-1]] == chain_of[e]:
            out[-1].append(e)
        else:
            out.append([e])
    return out


def lazy_width2_layout(p: Poset) -> QueueLayout:
    if len(p) == 0:
        return QueueLayout(LinearExtension(()), {}, 0, {"strategy": "lazy2"})
    w = width(p).width
    if w > 2:
        raise WidthExceeded(f"width {w} > 2")
    q = p if p.zero is not None else with_bounds(p, add_one=False)
    partition = width(q).partition
    order = [e for e in lazy_extension(q, partition) if e in p]
    layout = assign_queues(p, order)
    layout.meta.update(strategy="lazy2", partition=partition, added_zero=q is not p)
    return layout


def paired_chain_layout(p: Poset) -> QueueLayout:
    """Pair up chains of a minimum partition and keep each pair's order lazy.

    All groups run the lazy rule online while their elements are merged;
    when every group's lazy choice is blocked by another group the smallest
    globally minimal element is taken instead (counted in ``meta``).
    """
    if len(p) == 0:
        return QueueLayout(LinearExtension(()), {}, 0, {"strategy": "paired"})
    chains = width(p).partition.chains
    groups = [chains[k:k + 2] for k in range(0, len(chains), 2)]
    group_of: dict[Hashable, int] = {}
    chain_of: dict[Hashable, int] = {}
    for g, group in enumerate(groups):
        for c, chain in enumerate(group):
            for e in chain:
                group_of[e], chain_of[e] = g, c
    member = [sum(1 << p.index(e) for ch in group for e in ch) for group in groups]
    last_chain = [0] * len(groups)  # the virtual 0 of each group sits on its first chain

    n, down = len(p), p._down
    placed, order, breaks = 0, [], 0
    while len(order) < n:
        global_min = [i for i in range(n) if not placed >> i & 1 and down[i] & ~placed == 0]
        lazy_ok = []
        for i in global_min:
            e = p.elements[i]
            g = group_of[e]
            if chain_of[e] == last_chain[g]:
                lazy_ok.append((g, i))
                continue
            # the other chain is allowed only if the preferred chain has no group-minimal element
            pref = [
                j for j in bits(member[g] & ~placed)
                if chain_of[p.elements[j]] == last_chain[g] and down[j] & member[g] & ~placed == 0
            ]
            if not pref:
                lazy_ok.append((g, i))
        if lazy_ok:
            g, i = min(lazy_ok)
        else:
            breaks += 1
            g, i = min((group_of[p.elements[i]], i) for i in global_min)
        e = p.elements[i]
        placed |= 1 << i
        last_chain[g] = chain_of[e]
        order.append(e)
    layout = assign_queues(p, order)
    layout.meta.update(strategy="paired", groups=groups, lazy_breaks=breaks)
    return layout


# -- gray graph and subdivided crowns -------------------------------------


@dataclass(frozen=True)
class GrayGraph:
    vertices: tuple[Hashable, ...]
    cover_edges: tuple[Pair, ...]
    gray_edges: tuple[Pair, ...]
    witness: dict[Pair, Hashable] = field(compare=False)

    def successors(self) -> dict[Hashable, list[Hashable]]:
        out: dict[Hashable, list[Hashable]] = {v: [] for v in self.vertices}
        for a, b in self.cover_edges + self.gray_edges:
            out[a].append(b)
        return out

    def topological_order(self) -> list[Hashable] | None:
        """Smallest-id-first topological order, or None when there is a directed cycle."""
        index = {v: i for i, v in enumerate(self.vertices)}
        succ = self.successors()
        indeg = {v: 0 for v in self.vertices}
        for a, b in self.cover_edges + self.gray_edges:
            indeg[b] += 1
        ready = [index[v] for v in self.vertices if indeg[v] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = self.vertices[heapq.heappop(ready)]
            order.append(v)
            for u in succ[v]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    heapq.heappush(ready, index[u])
        return order if len(order) == len(self.vertices) else None


def gray_graph(p: Poset) -> GrayGraph:
    """Covers plus gray edges x -> y (x, y incomparable, z covered by x, z < y not a cover)."""
    n = len(p)
    full = (1 << n) - 1
    witness: dict[Pair, Hashable] = {}
    for z in range(n):
        far = p._up[z] & ~p._cover_up[z]
        for x in bits(p._cover_up[z]):
            incomparable = full & ~(p._up[x] | p._down[x] | 1 << x)
            for y in bits(far & incomparable):
                witness.setdefault((p.elements[x], p.elements[y]), p.elements[z])
    gray = tuple(sorted(witness, key=lambda xy: (p.index(xy[0]), p.index(xy[1]))))
    return GrayGraph(p.elements, p.covers, gray, witness)


@dataclass(frozen=True)
class CrownEmbedding:
    """Certificate for an embedded subdivided k-crown."""

    k: int
    a: tuple[Hashable, ...]
    b: tuple[Hashable, ...]
    c: tuple[Hashable, ...]

    def expected_relations(self) -> set[Pair]:
        a, b, c, k = self.a, self.b, self.c, self.k
        rel = {(a[i], b[i]) for i in range(k)} | {(b[i], c[i]) for i in range(k)} | {(a[i], c[i]) for i in range(k)}
        return rel | self.diagonal_covers()

    def diagonal_covers(self) -> set[Pair]:
        a, c, k = self.a, self.c, self.k
        return {(a[i], c[i - 1]) for i in range(1, k)} | {(a[0], c[k - 1])}

    def problems(self, p: Poset) -> list[str]:
        found = []
        elems = (*self.a, *self.b, *self.c)
        if self.k < 2 or any(len(s) != self.k for s in (self.a, self.b, self.c)):
            found.append("bad k")
            return found
        if len(set(elems)) != 3 * self.k:
            found.append("elements not distinct")
            return found
        for d in sorted(self.diagonal_covers(), key=str):
            if not p.is_cover(*d):
                found.append(f"diagonal {d} is not a cover")
        keep = set(elems)
        induced = {(x, y) for x, y in p.lt if x in keep and y in keep}
        if induced != self.expected_relations():
            found.append("induced subposet is not a subdivided crown")
        return found

    def is_valid(self, p: Poset) -> bool:
        return not self.problems(p)


def _shortest_cycle(p: Poset, g: GrayGraph) -> list[Hashable]:
    """Directed cycle with fewest gray edges, then fewest cover edges."""
    n = len(p)
    heavy = n + 1
    succ = {v: [(u, 1) for u in p.upper_covers(v)] for v in p.elements}
    for x, y in g.gray_edges:
        succ[x].append((y, heavy))
    best: tuple[int, int, int, list[Hashable]] | None = None
    for x, y in g.gray_edges:
        dist = {y: 0}
        prev: dict[Hashable, Hashable] = {}
        heap = [(0, p.index(y), y)]
        while heap:
            d, _, v = heapq.heappop(heap)
            if d > dist[v] or v == x:
                continue
            for u, wgt in succ[v]:
                if u not in dist or d + wgt < dist[u]:
                    dist[u], prev[u] = d + wgt, v
                    heapq.heappush(heap, (d + wgt, p.index(u), u))
        if x not in dist:
            continue
        key = (heavy + dist[x], p.index(x), p.index(y))
        if best is None or key < best[:3]:
            path = [x]
            while path[-1] != y:
                path.append(prev[path[-1]])
            best = (*key, [x] + list(reversed(path))[:-1])
    assert best is not None
    return best[3]


def _reduce_cycle(p: Poset, g: GrayGraph, cycle: list[Hashable]) -> list[Hashable]:
    """Apply the gray-then-cover shortcut until the cycle consists of gray edges only."""
    gray = set(g.gray_edges)
    while True:
        m = len(cycle)
        for i in range(m):
            c1, c2, c3 = cycle[i], cycle[(i + 1) % m], cycle[(i + 2) % m]
            if (c1, c2) in gray and p.is_cover(c2, c3):
                break
        else:
            return cycle
        rest = [cycle[(i + 2 + j) % m] for j in range(m - 1)]  # c3 ... c1
        if p.incomparable(c1, c3):
            assert (c1, c3) in gray
            cycle = rest[-1:] + rest[:-1]
        else:
            path = _cover_path(p, c1, c3)
            walk = rest + path[1:-1]  # c3 ... c1, inner cover path, back to c3
            cycle = _simple_subcycle(walk, gray)


def _cover_path(p: Poset, a: Hashable, b: Hashable) -> list[Hashable]:
    path = [a]
    while path[-1] != b:
        path.append(next(u for u in p.upper_covers(path[-1]) if u == b or p.less(u, b)))
    return path


def _simple_subcycle(walk: list[Hashable], gray: set[Pair]) -> list[Hashable]:
    """Split a closed walk into simple cycles; return the one with fewest gray edges."""
    cycles, stack, seen = [], [], {}
    for v in walk + walk[:1]:
        if v in seen:
            k = seen[v]
            cycles.append(stack[k:])
            for u in stack[k:]:
                del seen[u]
            del stack[k:]
        seen[v] = len(stack)
        stack.append(v)
    def cost(cyc):
        edges = list(zip(cyc, cyc[1:] + cyc[:1]))
        return (sum(e in gray for e in edges), len(edges))
    return min((c for c in cycles if len(c) >= 2), key=cost)


def _crown_from_cycle(p: Poset, g: GrayGraph, cycle: list[Hashable]) -> CrownEmbedding:
    cycle = _reduce_cycle(p, g, cycle)
    while True:
        m = len(cycle)
        a = [g.witness[(cycle[i - 1], cycle[i])] for i in range(m)]
        chord = None
        for i in range(m):
            for j in range(m):
                if j in (i, (i - 1) % m) or not p.less(a[i], cycle[j]):
                    continue
                if p.is_cover(a[i], cycle[j]):
                    chord = [cycle[(i + t) % m] for t in range((j - i) % m + 1)]
                else:
                    chord = [cycle[(j + t) % m] for t in range((i - 1 - j) % m + 1)]
                break
            if chord:
                break
        if chord is None:
            break
        cycle = chord
    b = [min(p.above(a[i]), key=lambda e: (not p.less(e, cycle[i]), p.index(e))) for i in range(m)]
    crown = CrownEmbedding(m, tuple(a), tuple(b), tuple(cycle))
    if not crown.is_valid(p):
        raise RuntimeError(f"crown extraction produced an invalid certificate: {crown.problems(p)}")
    return crown


def crown_free_layout(p: Poset) -> QueueLayout | CrownEmbedding:
    """Layout along a topological order of the gray graph, or a crown certificate."""
    g = gray_graph(p)
    order = g.topological_order()
    if order is None:
        return _crown_from_cycle(p, g, _shortest_cycle(p, g))
    layout = assign_queues(p, order)
    layout.meta["strategy"] = "crownfree"
    return layout


# -- planar posets ---------------------------------------------------------


def leftmost_layout(p: Poset, diagram: UpwardDiagram | None = None) -> QueueLayout:
    """Order incomparable pairs by the conjugate order; at most height - 1 queues with a diagram."""
    if p.zero is None or p.one is None:
        raise MissingBounds("leftmost layout needs a 0 and a 1")
    star = conjugate(p, diagram)
    rank = {e: len(p.below(e)) + len(star.below(e)) for e in p.elements}
    order = sorted(p.elements, key=rank.__getitem__)
    layout = assign_queues(p, order)
    layout.meta.update(strategy="leftmost", conjugate="diagram" if diagram is not None else "forcing")
    return layout


def color_split_extension(
    p: Poset, cover_order: Sequence[Hashable], levels: Sequence[Sequence[Hashable]] | None = None
) -> LinearExtension:
    """Concatenate the minimal-removal levels, each ordered as in ``cover_order``."""
    expected = p.levels()
    if levels is None:
        levels = expected
    elif [set(lv) for lv in levels] != [set(lv) for lv in expected]:
        raise InvalidLevels("levels are not the partition obtained by removing minimal elements")
    pos = {e: i for i, e in enumerate(cover_order)}
    if set(pos) != set(p.elements):
        raise InvalidLevels("cover_order is not an ordering of the ground set")
    order = [e for level in levels for e in sorted(level, key=pos.__getitem__)]
    return check_extension(p, order)


def _augment_target(d: UpwardDiagram, x: Hashable, direction: int, rule: str) -> Hashable | None:
    """Element of x's reflex face that x gets related to.

    ``lowest``: the lowest boundary element (highest for a maximum).
    ``local``: the highest local minimum of the boundary below x (lowest
    local maximum above x for a maximum).  Ties go to the smaller id.
    """
    walk = d.faces[d.extremal_face(x)].walk
    y = {v: d.position[v][1] * direction for v in walk}  # larger = further beyond x
    m = len(walk)
    best = None
    for i, v in enumerate(walk):
        if v == x or y[v] <= y[x]:
            continue
        if rule == "lowest":
            key = (-y[v], d.poset.index(v))
        elif y[walk[i - 1]] < y[v] > y[walk[(i + 1) % m]]:
            key = (y[v], d.poset.index(v))
        else:
            continue
        if best is None or key < best[0]:
            best = (key, v)
    return None if best is None else best[1]


def _bypasses(q: Poset, edge: Pair, a: Hashable, b: Hashable) -> bool:
    lo, hi = edge
    return (lo == a and q.less(hi, b)) or (hi == b and q.less(a, lo))


PLANAR_RULES = ("lowest", "local", "ray")


def planar_width_layout(d: UpwardDiagram, rule: str | None = None) -> QueueLayout:
    """Augment to a poset with 0 and 1, lay it out, and park demoted covers in extra queues.

    An extremum whose reflex angle opens into an inner face gets a relation
    to an element of that face, chosen by ``rule``:

    * ``lowest``: the face's lowest (highest) boundary element;
    * ``local``: the nearest local extremum of the face boundary beyond x;
    * ``ray``: the lower (upper) end of the cover hit by a vertical ray.

    Without ``rule`` the three are tried in that order and the first result
    passing verification and the 3w - 2 bound is returned.
    """
    if rule is not None and rule not in PLANAR_RULES:
        raise ValueError(f"unknown augmentation rule {rule!r}")
    rules = PLANAR_RULES if rule is None else (rule,)
    first_error = None
    for r in rules:
        try:
            return _planar_attempt(d, r)
        except AugmentationFailed as exc:
            first_error = first_error or exc
    raise first_error


def _planar_attempt(d: UpwardDiagram, rule: str) -> QueueLayout:
    p = d.poset
    if len(p) == 0:
        return QueueLayout(LinearExtension(()), {}, 0, {"strategy": "planarw"})
    w = width(p).width
    comp_ids = d.components
    comps: dict[int, list[Hashable]] = {}
    for e in p.elements:
        comps.setdefault(comp_ids[e], []).append(e)

    order: list[Hashable] = []
    base: dict[Pair, int] = {}
    demoted: dict[Pair, int] = {}  # cover -> id of the inserted relation keying its queue
    inserted: list[tuple[Hashable, Hashable, int]] = []
    for comp in comps.values():
        if len(comp) == 1:
            order += comp
            continue
        sub = p.induced(comp)
        mine = []
        for x in comp:
            for is_min, direction in ((True, -1), (False, 1)):
                if p.lower_covers(x) if is_min else p.upper_covers(x):
                    continue
                if d.extremal_face(x) in d.outer_faces:
                    continue
                y = d.shoot(x, direction) if rule == "ray" else _augment_target(d, x, direction, rule)
                if y is None:
                    raise AugmentationFailed(f"no face boundary reachable from {x!r}")
                mine.append(len(inserted))
                inserted.append((y, x, d.extremal_face(x)) if is_min else (x, y, d.extremal_face(x)))
        q = Poset(comp, list(sub.covers) + [inserted[k][:2] for k in mine])
        q = with_bounds(q, q.zero is None, q.one is None, zero_label="_0", one_label="_1")
        res = crown_free_layout(q)
        if isinstance(res, CrownEmbedding):
            raise AugmentationFailed(f"augmented poset contains a {res.k}-crown")
        order += [e for e in res.order if e in p]
        for a, b in sub.covers:
            if q.is_cover(a, b):
                base[(a, b)] = res.queue_of[(a, b)]
                continue
            faces = {d.half_edge_face[(a, b)], d.half_edge_face[(b, a)]}
            # the inserted edge must start or finish the Q-path that bypasses the cover
            keys = [k for k in mine if inserted[k][2] in faces and _bypasses(q, inserted[k][:2], a, b)]
            if not keys:
                raise AugmentationFailed(f"no inserted relation next to demoted cover ({a!r}, {b!r})")
            demoted[(a, b)] = min(keys)

    base_count = max(base.values(), default=-1) + 1
    extra_ids = sorted(set(demoted.values()))
    queue_of = dict(base)
    for cover, k in demoted.items():
        queue_of[cover] = base_count + extra_ids.index(k)
    layout = QueueLayout(
        LinearExtension(tuple(order)),
        queue_of,
        base_count + len(extra_ids),
        {
            "strategy": "planarw",
            "rule": rule,
            "inserted": [(lo, hi) for lo, hi, _ in inserted],
            "extra_queues": {base_count + r: inserted[k][:2] for r, k in enumerate(extra_ids)},
        },
    )
    report = verify_layout(p, layout)
    if not report.ok:
        raise AugmentationFailed(f"augmented layout fails verification: {report.violations[:3]}")
    if layout.queue_count > max(3 * w - 2, 1):
        raise AugmentationFailed(f"{layout.queue_count} queues exceed 3w-2 = {3 * w - 2}")
    return layout
