"""Finite posets, linear extensions, chain partitions and the conjugate order.

Elements are arbitrary hashable identifiers.  Internally every element gets
an index (its position in the input sequence) and order relations are stored
as Python ints used as bitsets, which keeps closure, reduction and matching
cheap at the sizes this library targets.
"""

from __future__ import annotations

import heapq
from collections.abc import Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Any, NamedTuple

from .errors import CycleError, EmptyPosetError, InvalidDiagram, NotALinearExtension, NotTwoDimensional

if TYPE_CHECKING:
    from .diagram import UpwardDiagram

Element = Hashable
Pair = tuple[Any, Any]


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite strict partial order.

    ``lt`` is the transitive closure of the generating relations and
    ``covers`` its transitive reduction.  Element order is preserved from the
    input and used for every deterministic tie-break in the library.
    """

    __slots__ = ("elements", "_index", "_up", "_down", "_cover_up", "_cover_down", "__dict__")

    def __init__(self, elements: Iterable[Element], relations: Iterable[Pair] = ()) -> None:
        elems = tuple(elements)
        index = {e: i for i, e in enumerate(elems)}
        if len(index) != len(elems):
            raise ValueError("duplicate elements")
        n = len(elems)
        succ = [0] * n
        for a, b in relations:
            try:
                ia, ib = index[a], index[b]
            except KeyError as exc:
                raise ValueError(f"relation ({a!r}, {b!r}) mentions an unknown element") from exc
            if ia == ib:
                raise CycleError([a])
            succ[ia] |= 1 << ib

        order = _toposort(n, succ)
        if order is None:
            raise CycleError([elems[i] for i in _find_cycle(n, succ)])
        up = [0] * n
        for i in reversed(order):
            acc = succ[i]
            for j in bits(succ[i]):
                acc |= up[j]
            up[i] = acc
        down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                down[j] |= 1 << i
        cover_up = [0] * n
        cover_down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                if not up[i] & down[j]:
                    cover_up[i] |= 1 << j
                    cover_down[j] |= 1 << i

        self.elements: tuple[Element, ...] = elems
        self._index = index
        self._up = tuple(up)
        self._down = tuple(down)
        self._cover_up = tuple(cover_up)
        self._cover_down = tuple(cover_down)

    # -- basic protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, e: object) -> bool:
        return e in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.lt == other.lt

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), self.lt))

    def __repr__(self) -> str:
        return f"Poset(n={len(self)}, covers={list(self.covers)!r})"

    # -- relations ------------------------------------------------------

    def index(self, e: Element) -> int:
        return self._index[e]

    def less(self, a: Element, b: Element) -> bool:
        return bool(self._up[self._index[a]] >> self._index[b] & 1)

    def comparable(self, a: Element, b: Element) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def incomparable(self, a: Element, b: Element) -> bool:
        return not self.comparable(a, b)

    def is_cover(self, a: Element, b: Element) -> bool:
        return bool(self._cover_up[self._index[a]] >> self._index[b] & 1)

    @cached_property
    def lt(self) -> frozenset[Pair]:
        e = self.elements
        return frozenset((e[i], e[j]) for i in range(len(e)) for j in bits(self._up[i]))

    @cached_property
    def covers(self) -> tuple[Pair, ...]:
        e = self.elements
        return tuple((e[i], e[j]) for i in range(len(e)) for j in bits(self._cover_up[i]))

    def _names(self, mask: int) -> list[Element]:
        return [self.elements[i] for i in bits(mask)]

    def above(self, e: Element) -> list[Element]:
        return self._names(self._up[self._index[e]])

    def below(self, e: Element) -> list[Element]:
        return self._names(self._down[self._index[e]])

    def upper_covers(self, e: Element) -> list[Element]:
        return self._names(self._cover_up[self._index[e]])

    def lower_covers(self, e: Element) -> list[Element]:
        return self._names(self._cover_down[self._index[e]])

    def minimal(self) -> list[Element]:
        return [e for i, e in enumerate(self.elements) if not self._down[i]]

    def maximal(self) -> list[Element]:
        return [e for i, e in enumerate(self.elements) if not self._up[i]]

    @property
    def zero(self) -> Element | None:
        """The unique minimum, if there is one."""
        mins = self.minimal()
        return mins[0] if len(mins) == 1 else None

    @property
    def one(self) -> Element | None:
        maxs = self.maximal()
        return maxs[0] if len(maxs) == 1 else None

    def induced(self, subset: Iterable[Element]) -> Poset:
        keep = set(subset)
        elems = [e for e in self.elements if e in keep]
        return Poset(elems, [(a, b) for a, b in self.lt if a in keep and b in keep])

    @cached_property
    def topological_order(self) -> tuple[Element, ...]:
        """Linear extension taking the smallest-index minimal element first."""
        order = _toposort(len(self), self._cover_up)
        assert order is not None
        return tuple(self.elements[i] for i in order)

    def levels(self) -> list[list[Element]]:
        """Antichains obtained by repeatedly stripping all minimal elements."""
        rank = [0] * len(self)
        for e in self.topological_order:
            i = self._index[e]
            rank[i] = 1 + max((rank[j] for j in bits(self._cover_down[i])), default=-1)
        out: list[list[Element]] = [[] for _ in range(max(rank, default=-1) + 1)]
        for i, e in enumerate(self.elements):
            out[rank[i]].append(e)
        return out


def from_relations(elements: Iterable[Element], generating_pairs: Iterable[Pair] = ()) -> Poset:
    """Close ``generating_pairs`` transitively; raises CycleError on a cycle."""
    return Poset(elements, generating_pairs)


def _toposort(n: int, succ: Sequence[int]) -> list[int] | None:
    indeg = [0] * n
    for i in range(n):
        for j in bits(succ[i]):
            indeg[j] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in bits(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    return order if len(order) == n else None


def _find_cycle(n: int, succ: Sequence[int]) -> list[int]:
    state = [0] * n  # 0 new, 1 on stack, 2 done
    for root in range(n):
        if state[root]:
            continue
        path = [root]
        iters = [bits(succ[root])]
        state[root] = 1
        while path:
            nxt = next(iters[-1], None)
            if nxt is None:
                state[path.pop()] = 2
                iters.pop()
            elif state[nxt] == 1:
                return path[path.index(nxt):]
            elif state[nxt] == 0:
                state[nxt] = 1
                path.append(nxt)
                iters.append(bits(succ[nxt]))
    return []


# -- linear extensions and chain partitions ------------------------------


@dataclass(frozen=True)
class LinearExtension:
    order: tuple[Element, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))

    @cached_property
    def position(self) -> dict[Element, int]:
        return {e: i for i, e in enumerate(self.order)}

    def __iter__(self) -> Iterator[Element]:
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)


def check_extension(p: Poset, order: Iterable[Element] | LinearExtension) -> LinearExtension:
    """Return ``order`` as a LinearExtension of ``p`` or raise NotALinearExtension."""
    ext = order if isinstance(order, LinearExtension) else LinearExtension(tuple(order))
    pos = ext.position
    if len(pos) != len(ext.order) or set(pos) != set(p.elements):
        raise NotALinearExtension("order is not a permutation of the ground set")
    for a, b in p.lt:
        if pos[a] > pos[b]:
            raise NotALinearExtension(f"{a!r} < {b!r} but {b!r} comes first", (a, b))
    return ext


def linear_extensions(p: Poset) -> Iterator[tuple[Element, ...]]:
    """Every linear extension, generated depth first in index order."""
    n = len(p)
    down = p._down
    out: list[int] = []

    def rec(placed: int) -> Iterator[tuple[Element, ...]]:
        if len(out) == n:
            yield tuple(p.elements[i] for i in out)
            return
        for i in range(n):
            if not placed >> i & 1 and down[i] & ~placed == 0:
                out.append(i)
                yield from rec(placed | 1 << i)
                out.pop()

    yield from rec(0)


@dataclass(frozen=True)
class ChainPartition:
    chains: tuple[tuple[Element, ...], ...]

    @cached_property
    def chain_of(self) -> dict[Element, int]:
        return {e: k for k, chain in enumerate(self.chains) for e in chain}

    def __len__(self) -> int:
        return len(self.chains)


class WidthResult(NamedTuple):
    width: int
    antichain: frozenset
    partition: ChainPartition


class HeightResult(NamedTuple):
    height: int
    chain: tuple


def _max_matching(n: int, adj: Sequence[int]) -> list[int]:
    """Kuhn's augmenting paths; returns match_left (``-1`` when unmatched)."""
    match_l = [-1] * n
    match_r = [-1] * n

    def augment(u: int, seen: list[bool]) -> bool:
        for v in bits(adj[u]):
            if seen[v]:
                continue
            seen[v] = True
            if match_r[v] == -1 or augment(match_r[v], seen):
                match_l[u], match_r[v] = v, u
                return True
        return False

    for u in range(n):
        augment(u, [False] * n)
    return match_l


def width(p: Poset) -> WidthResult:
    """Dilworth: maximum antichain and a minimum chain partition."""
    n = len(p)
    if n == 0:
        raise EmptyPosetError("width of the empty poset is undefined")
    match_l = _max_matching(n, p._up)
    match_r = [-1] * n
    for u, v in enumerate(match_l):
        if v != -1:
            match_r[v] = u

    chains = []
    for head in range(n):
        if match_r[head] != -1:
            continue
        chain, cur = [], head
        while cur != -1:
            chain.append(p.elements[cur])
            cur = match_l[cur]
        chains.append(tuple(chain))

    # Koenig: alternate from unmatched left vertices.
    z_left = [match_l[u] == -1 for u in range(n)]
    z_right = [False] * n
    stack = [u for u in range(n) if z_left[u]]
    while stack:
        u = stack.pop()
        for v in bits(p._up[u]):
            if not z_right[v] and match_l[u] != v:
                z_right[v] = True
                w = match_r[v]
                if w != -1 and not z_left[w]:
                    z_left[w] = True
                    stack.append(w)
    antichain = frozenset(p.elements[i] for i in range(n) if z_left[i] and not z_right[i])
    assert len(antichain) == len(chains)
    return WidthResult(len(chains), antichain, ChainPartition(tuple(chains)))


def height(p: Poset) -> HeightResult:
    n = len(p)
    if n == 0:
        raise EmptyPosetError("height of the empty poset is undefined")
    best = [1] * n
    prev = [-1] * n
    for e in p.topological_order:
        i = p.index(e)
        for j in bits(p._cover_down[i]):
            if best[j] + 1 > best[i]:
                best[i], prev[i] = best[j] + 1, j
    top = max(range(n), key=lambda i: best[i])
    chain = []
    while top != -1:
        chain.append(p.elements[top])
        top = prev[top]
    return HeightResult(len(chain), tuple(reversed(chain)))


def _fresh(p: Poset, label: str) -> str:
    while label in p:
        label += "'"
    return label


def with_bounds(p: Poset, add_zero: bool = True, add_one: bool = True, *, zero_label: str = "0", one_label: str = "1") -> Poset:
    """Add a new global minimum and/or maximum (labels are primed on clashes)."""
    elements = list(p.elements)
    relations = list(p.covers)
    if add_zero:
        z = _fresh(p, zero_label)
        relations += [(z, e) for e in p.minimal()]
        elements.insert(0, z)
    if add_one:
        o = _fresh(p, one_label)
        relations += [(e, o) for e in p.maximal()]
        elements.append(o)
    return Poset(elements, relations)


# -- conjugate order -----------------------------------------------------


def conjugate(p: Poset, diagram: UpwardDiagram | None = None) -> Poset:
    """The conjugate order: comparable exactly on the incomparable pairs of ``p``.

    With a diagram, ``x < y`` in the result iff x lies strictly left of a
    maximal chain through y.  Without one, the incomparability graph is
    transitively oriented by implication classes.
    """
    n = len(p)
    if diagram is not None:
        pairs = _left_of_pairs(p, diagram)
    else:
        incomp = [((1 << n) - 1) & ~(p._up[i] | p._down[i] | 1 << i) for i in range(n)]
        oriented = _transitive_orientation(n, incomp)
        if oriented is None:
            raise NotTwoDimensional("incomparability graph is not a comparability graph")
        pairs = [(p.elements[i], p.elements[j]) for i in range(n) for j in bits(oriented[i])]
    try:
        star = Poset(p.elements, pairs)
    except CycleError as exc:
        raise (InvalidDiagram if diagram is not None else NotTwoDimensional)(str(exc)) from exc
    for i in range(n):
        if (star._up[i] | star._down[i]) & (p._up[i] | p._down[i]) or (
            (star._up[i] | star._down[i] | p._up[i] | p._down[i] | 1 << i) != (1 << n) - 1
        ):
            msg = "left-of relation is not a conjugate order"
            raise (InvalidDiagram if diagram is not None else NotTwoDimensional)(msg)
    return star


def _transitive_orientation(n: int, adj: Sequence[int]) -> list[int] | None:
    remaining = list(adj)
    out = [0] * n
    for i in range(n):
        while remaining[i] >> (i + 1):
            j = next(bits(remaining[i] >> (i + 1) << (i + 1)))
            cls = {(i, j)}
            stack = [(i, j)]
            while stack:
                a, b = stack.pop()
                for c in bits(remaining[a] & ~remaining[b] & ~(1 << b)):
                    if (a, c) not in cls:
                        cls.add((a, c))
                        stack.append((a, c))
                for c in bits(remaining[b] & ~remaining[a] & ~(1 << a)):
                    if (c, b) not in cls:
                        cls.add((c, b))
                        stack.append((c, b))
            if any((b, a) in cls for a, b in cls):
                return None
            for a, b in cls:
                out[a] |= 1 << b
                remaining[a] &= ~(1 << b)
                remaining[b] &= ~(1 << a)
    for a in range(n):
        for b in bits(out[a]):
            if out[b] & ~out[a]:
                return None
    return out


def _maximal_chain_through(p: Poset, y: Element) -> list[Element]:
    chain = [y]
    while lower := p.lower_covers(chain[0]):
        chain.insert(0, lower[0])
    while upper := p.upper_covers(chain[-1]):
        chain.append(upper[0])
    return chain


def _left_of_pairs(p: Poset, diagram: UpwardDiagram) -> list[Pair]:
    pos = diagram.position
    pairs = []
    for y in p.elements:
        chain = _maximal_chain_through(p, y)
        on_chain = set(chain)
        pts = [pos[c] for c in chain]
        for x in p.elements:
            if x in on_chain or p.comparable(x, y):
                continue
            px, py = pos[x]
            if px < _polyline_x(pts, py):
                pairs.append((x, y))
    return pairs


def _polyline_x(pts: Sequence[tuple[float, float]], y: float) -> float:
    """x-coordinate of a y-monotone polyline at height y, extended vertically past its ends."""
    if y <= pts[0][1]:
        return pts[0][0]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y <= y1:
            return x0 + (x1 - x0) * (y - y0) / (y1 - y0)
    return pts[-1][0]
