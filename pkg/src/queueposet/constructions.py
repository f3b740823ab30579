"""Generators for the poset families used as extremal examples."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from functools import lru_cache

from .diagram import UpwardDiagram
from .errors import NotBipartition
from .layout import Rainbow
from .poset import LinearExtension, Poset, check_extension


def subdivided_crown(k: int) -> Poset:
    """P_k on a1..ak, b1..bk, c1..ck with diagonal covers a_i < c_{i-1} and a_1 < c_k."""
    if k < 2:
        raise ValueError("subdivided crowns need k >= 2")
    a = [f"a{i}" for i in range(1, k + 1)]
    b = [f"b{i}" for i in range(1, k + 1)]
    c = [f"c{i}" for i in range(1, k + 1)]
    rel = [(a[i], b[i]) for i in range(k)] + [(b[i], c[i]) for i in range(k)]
    rel += [(a[i], c[i - 1]) for i in range(1, k)] + [(a[0], c[k - 1])]
    return Poset(a + b + c, rel)


def weak_order(level_sizes: Sequence[int]) -> Poset:
    """Chain of antichains; level i is named with the i-th letter (a1, a2, ..., b1, ...)."""
    if not level_sizes or any(s < 1 for s in level_sizes):
        raise ValueError("level sizes must be a nonempty list of positive integers")
    def name(i: int, j: int) -> str:
        return f"{chr(97 + i)}{j + 1}" if len(level_sizes) <= 26 else f"l{i}_{j + 1}"
    levels = [[name(i, j) for j in range(s)] for i, s in enumerate(level_sizes)]
    rel = [(x, y) for lo, hi in zip(levels, levels[1:]) for x in lo for y in hi]
    return Poset([e for lv in levels for e in lv], rel)


def q_width(w: int) -> tuple[Poset, UpwardDiagram]:
    """Planar poset with 0 and 1, width w and queue-number w, with a straight-line drawing.

    Q_1 is the two-element chain s < t.  Q_w stacks a lower copy (prefix ``L``)
    below an upper copy (prefix ``U``) of Q_{w-1} on the line x = 0, adds the
    0 ``a`` and the 1 ``c`` on that line, and puts ``b`` far to the right so
    that a-b-c passes around both copies.
    """
    if w < 1:
        raise ValueError("w must be positive")
    elements, rel, pos, span, top = _q_width(w)
    p = Poset(elements, rel)
    return p, UpwardDiagram(p, pos, outer_face_hint={"q1_chain_length": 2})


@lru_cache(maxsize=None)
def _q_width(w: int):
    if w == 1:
        return ("s", "t"), (("s", "t"),), {"s": (0.0, 0.0), "t": (0.0, 1.0)}, 0.0, 1.0
    elements, rel, pos, span, top = _q_width(w - 1)
    new_top = 2 * top + 3
    far = span * new_top + 1
    out_pos = {"a": (0.0, 0.0), "c": (0.0, new_top), "b": (far, new_top / 2)}
    for prefix, lift in (("L", 1.0), ("U", top + 2)):
        for e in elements:
            x, y = pos[e]
            out_pos[prefix + e] = (x, y + lift)
    zero, one = elements[0], elements[-1]  # a is listed first and c last at every level
    out_rel = [("L" + x, "L" + y) for x, y in rel] + [("U" + x, "U" + y) for x, y in rel]
    out_rel += [("a", "L" + zero), ("L" + one, "U" + zero), ("U" + one, "c"), ("a", "b"), ("b", "c")]
    out_elems = ("a", *("L" + e for e in elements), *("U" + e for e in elements), "b", "c")
    return out_elems, tuple(out_rel), out_pos, far, new_top


def height2_counterexample() -> tuple[Poset, tuple[str, ...], tuple[str, ...]]:
    """K_{2,10} plus four common neighbours for each consecutive pair b_i, b_{i+1}.

    Returns (poset, X, Y) with X = b1..b10 below Y = a1, a2, c{i}_{j}.
    """
    return _counterexample()


@lru_cache(maxsize=1)
def _counterexample():
    xs = tuple(f"b{i}" for i in range(1, 11))
    cs = tuple(f"c{i}_{j}" for i in range(1, 10) for j in range(1, 5))
    ys = ("a1", "a2") + cs
    edges = [(b, a) for a in ("a1", "a2") for b in xs]
    edges += [(f"b{k}", f"c{i}_{j}") for i in range(1, 10) for j in range(1, 5) for k in (i, i + 1)]
    return Poset(xs + ys, edges), xs, ys


def counterexample_witness(ext: Iterable[Hashable] | LinearExtension) -> Rainbow:
    """A 4-rainbow of the height-2 counterexample under any of its linear extensions."""
    p, xs, _ = _counterexample()
    ext = check_extension(p, ext)
    pos = ext.position
    first, second = sorted(("a1", "a2"), key=pos.__getitem__)
    bs = sorted(xs, key=pos.__getitem__)
    bi1, bi2, bj1, bj2 = bs[0], bs[1], bs[-2], bs[-1]
    taken = {int(b[1:]) for b in (bi1, bi2, bj1, bj2)}
    i = next(i for i in range(1, 10) if not {i, i + 1} & taken)
    p_, q_ = sorted((f"b{i}", f"b{i + 1}"), key=pos.__getitem__)

    def region(c: str) -> int:
        return (pos[c] > pos[first]) + (pos[c] > pos[second])

    groups: dict[int, list[str]] = {}
    for j in range(1, 5):
        c = f"c{i}_{j}"
        groups.setdefault(region(c), []).append(c)
    reg, pair = min((r, cs[:2]) for r, cs in groups.items() if len(cs) >= 2)
    r_, s_ = sorted(pair, key=pos.__getitem__)
    inner = ((p_, s_), (q_, r_))  # 2-rainbow inside the 4-cycle [c1, b_i, c2, b_{i+1}]
    if reg == 0:
        covers = ((bi1, second), (bi2, first)) + inner
    elif reg == 1:
        covers = ((bi1, second),) + inner + ((bj1, first),)
    else:
        covers = inner + ((bj1, second), (bj2, first))
    rainbow = Rainbow(covers)
    assert rainbow.is_valid(ext) and all(p.is_cover(*c) for c in covers)
    return rainbow


def q_height(h: int) -> tuple[Poset, list[tuple[str, str, str]]]:
    """Poset of height h and queue-number h - 1 with its marked V-posets (x, y, z).

    Every V-poset (x, y, z) is replaced by x, z and two new V-posets
    (x1, y1, z1), (x2, y2, z2) with covers y1 < x, x1 < z, z1 < z and
    y2 < z, x2 < x, z2 < x; the old minimum y disappears.  Covers y < o
    leaving the V-poset are inherited by both y1 and y2, so any rainbow
    through y survives with either new minimum in its place.
    """
    if h < 2:
        raise ValueError("h must be at least 2")
    counter = iter(range(10**9))

    def fresh() -> str:
        return f"q{next(counter)}"

    y, x, z = fresh(), fresh(), fresh()
    elements = [y, x, z]
    covers = {(y, x), (y, z)}
    vs = [(x, y, z)]
    for _ in range(h - 2):
        new_vs = []
        for x, y, z in vs:
            outer = {o for lo, o in covers if lo == y} - {x, z}
            covers = {c for c in covers if c[0] != y}
            at = elements.index(y)
            y1, x1, z1, y2, x2, z2 = (fresh() for _ in range(6))
            elements[at:at + 1] = [y1, x1, z1, y2, x2, z2]
            covers |= {(y1, x1), (y1, z1), (x1, z), (z1, z), (y1, x)}
            covers |= {(y2, x2), (y2, z2), (x2, x), (z2, x), (y2, z)}
            covers |= {(e, o) for o in outer for e in (y1, y2)}
            new_vs += [(x1, y1, z1), (x2, y2, z2)]
        vs = new_vs
    return Poset(elements, sorted(covers)), vs


def poset_from_bipartite(
    vertices: Iterable[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
    class_a: Iterable[Hashable],
    class_b: Iterable[Hashable],
) -> Poset:
    """Height-2 poset with x < y iff x in A, y in B and xy is an edge."""
    vertices = list(vertices)
    a, b = set(class_a), set(class_b)
    if a & b or a | b != set(vertices):
        raise NotBipartition("classes do not partition the vertex set")
    rel = []
    for u, v in edges:
        if u in a and v in b:
            rel.append((u, v))
        elif v in a and u in b:
            rel.append((v, u))
        else:
            raise NotBipartition(f"edge ({u!r}, {v!r}) does not join the two classes")
    return Poset(vertices, rel)


def small_patterns(name: str) -> Poset:
    if name == "2+2":
        return Poset("abcd", [("a", "b"), ("c", "d")])
    if name == "N":
        return Poset("abcd", [("a", "b"), ("c", "d"), ("c", "b")])
    raise ValueError(f"unknown pattern {name!r}")
