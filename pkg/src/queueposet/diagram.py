"""Straight-line upward drawings of posets and the face structure they induce."""

from __future__ import annotations

import math
from collections.abc import Hashable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .errors import InvalidDiagram
from .poset import Pair, Poset

Point = tuple[float, float]


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a: Point, b: Point, c: Point) -> bool:
    """c lies on the closed segment ab (given collinearity)."""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share a point."""
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if (o1 > 0) != (o2 > 0) and o1 and o2 and (o3 > 0) != (o4 > 0) and o3 and o4:
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
    )


@dataclass(frozen=True)
class Face:
    walk: tuple[Hashable, ...]
    area: float


@dataclass(frozen=True)
class UpwardDiagram:
    """A poset with coordinates; construction validates planarity and monotonicity."""

    poset: Poset
    position: Mapping[Hashable, Point]
    outer_face_hint: Any = field(default=None, compare=False)

    def __post_init__(self) -> None:
        pos = {e: (float(x), float(y)) for e, (x, y) in self.position.items()}
        object.__setattr__(self, "position", pos)
        self._validate()

    def _validate(self) -> None:
        p, pos = self.poset, self.position
        missing = [e for e in p.elements if e not in pos]
        if missing:
            raise InvalidDiagram(f"no coordinates for {missing[:5]!r}")
        if len(set(pos[e] for e in p.elements)) != len(p):
            raise InvalidDiagram("two elements share a position")
        for a, b in p.covers:
            if not pos[a][1] < pos[b][1]:
                raise InvalidDiagram(f"cover ({a!r}, {b!r}) does not point upwards")
        covers = p.covers
        for i, (a, b) in enumerate(covers):
            for e in p.elements:
                if e != a and e != b and _orient(pos[a], pos[b], pos[e]) == 0 and _on_segment(pos[a], pos[b], pos[e]):
                    raise InvalidDiagram(f"element {e!r} lies on cover ({a!r}, {b!r})")
            for c, d in covers[i + 1:]:
                shared = {a, b} & {c, d}
                if not shared:
                    if segments_cross(pos[a], pos[b], pos[c], pos[d]):
                        raise InvalidDiagram(f"covers ({a!r}, {b!r}) and ({c!r}, {d!r}) cross")
                elif len(shared) == 1:
                    s = shared.pop()
                    u = b if a == s else a
                    v = d if c == s else c
                    if _orient(pos[s], pos[u], pos[v]) == 0 and _angle(pos[s], pos[u]) == _angle(pos[s], pos[v]):
                        raise InvalidDiagram(f"covers ({a!r}, {b!r}) and ({c!r}, {d!r}) overlap")

    # -- rotation system and faces ------------------------------------

    @cached_property
    def rotation(self) -> dict[Hashable, list[Hashable]]:
        """Neighbours of each element sorted counter-clockwise from the positive x-axis."""
        nbrs: dict[Hashable, list[Hashable]] = {e: [] for e in self.poset.elements}
        for a, b in self.poset.covers:
            nbrs[a].append(b)
            nbrs[b].append(a)
        pos = self.position
        return {v: sorted(ns, key=lambda u: _angle(pos[v], pos[u])) for v, ns in nbrs.items()}

    def _next_half_edge(self, u: Hashable, v: Hashable) -> tuple[Hashable, Hashable]:
        ring = self.rotation[v]
        return v, ring[ring.index(u) - 1]

    @cached_property
    def half_edge_face(self) -> dict[Pair, int]:
        """Face id of every directed half-edge; the face lies to its left."""
        out: dict[Pair, int] = {}
        faces: list[Face] = []
        for a, b in self.poset.covers:
            for start in ((a, b), (b, a)):
                if start in out:
                    continue
                walk, he = [], start
                while he not in out:
                    out[he] = len(faces)
                    walk.append(he[0])
                    he = self._next_half_edge(*he)
                faces.append(Face(tuple(walk), _signed_area([self.position[v] for v in walk])))
        self.__dict__["faces"] = tuple(faces)
        return out

    @property
    def faces(self) -> tuple[Face, ...]:
        self.half_edge_face
        return self.__dict__["faces"]

    @cached_property
    def outer_faces(self) -> frozenset[int]:
        """The unbounded face of every connected component (minimum signed area)."""
        comp = self.components
        best: dict[int, int] = {}
        for (u, _v), f in self.half_edge_face.items():
            c = comp[u]
            if c not in best or self.faces[f].area < self.faces[best[c]].area:
                best[c] = f
        return frozenset(best.values())

    @cached_property
    def components(self) -> dict[Hashable, int]:
        label: dict[Hashable, int] = {}
        for root in self.poset.elements:
            if root in label:
                continue
            cid = len(set(label.values()))
            stack = [root]
            label[root] = cid
            while stack:
                v = stack.pop()
                for u in self.rotation[v]:
                    if u not in label:
                        label[u] = cid
                        stack.append(u)
        return label

    def on_outer_face(self, v: Hashable) -> bool:
        if not self.rotation[v]:
            return True
        return any(self.half_edge_face[(v, u)] in self.outer_faces for u in self.rotation[v])

    def extremal_face(self, v: Hashable) -> int:
        """Face holding the reflex angle at a minimum or maximum element."""
        first = self.rotation[v][0]
        return self.half_edge_face[(first, v)]

    def shoot(self, v: Hashable, direction: int) -> Hashable | None:
        """Follow a vertical ray from v (``-1`` down, ``+1`` up) to the first cover hit.

        Returns the element hit, or the far endpoint (lower for ``-1``, upper
        for ``+1``) of the cover whose interior is hit.
        """
        pos = self.position
        vx, vy = pos[v]
        comp = self.components
        best: tuple[float, Hashable] | None = None
        for a, b in self.poset.covers:
            if comp[a] != comp[v] or v in (a, b):
                continue
            (ax, ay), (bx, by) = pos[a], pos[b]
            if not min(ax, bx) <= vx <= max(ax, bx):
                continue
            if ax == bx:
                hy, target = (by, b) if direction < 0 else (ay, a)
            else:
                hy = ay + (by - ay) * (vx - ax) / (bx - ax)
                if vx == ax:
                    target = a
                elif vx == bx:
                    target = b
                else:
                    target = a if direction < 0 else b
            dist = (vy - hy) * -direction
            if dist <= 0:
                continue
            if best is None or dist < best[0]:
                best = (dist, target)
        return None if best is None else best[1]


def _angle(origin: Point, target: Point) -> float:
    ang = math.atan2(target[1] - origin[1], target[0] - origin[0])
    return ang + 2 * math.pi if ang < 0 else ang


def _signed_area(pts: list[Point]) -> float:
    return 0.5 * sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]))
