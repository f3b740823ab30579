"""JSON and DOT formats for posets, drawings and queue layouts.

Poset JSON::

    {"elements": ["a", "b"], "relations": [["a", "b"]], "pos": {"a": [0, 0], "b": [0, 1]}}

``relations`` may be any generating set; ``pos`` is optional and turns the
result into an :class:`UpwardDiagram` when it covers every element.

Layout JSON::

    {"order": ["a", "b"], "queues": [[["a", "b"], 0]]}
"""

from __future__ import annotations

import json
from typing import Any

from .diagram import UpwardDiagram
from .errors import CycleError, ParseError
from .layout import QueueLayout
from .poset import LinearExtension, Poset

PALETTE = ("black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gray")


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


def _element(value: Any, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError("elements must be strings or integers", where)
    return value


def parse_poset(text: str) -> Poset | UpwardDiagram:
    data = _load(text)
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", "top level")
    if "elements" not in data:
        raise ParseError("missing field", "elements")
    raw = data["elements"]
    if not isinstance(raw, list):
        raise ParseError("expected a list", "elements")
    elements = [_element(e, f"elements[{i}]") for i, e in enumerate(raw)]
    relations = []
    for i, pair in enumerate(data.get("relations", [])):
        where = f"relations[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("expected a pair [lower, upper]", where)
        relations.append((_element(pair[0], where), _element(pair[1], where)))
    try:
        p = Poset(elements, relations)
    except CycleError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), "relations") from None
    pos = data.get("pos")
    if pos is None:
        return p
    if not isinstance(pos, dict):
        raise ParseError("expected an object of coordinates", "pos")
    keys = {str(e): e for e in elements}
    coords = {}
    for name, xy in pos.items():
        if name not in keys:
            raise ParseError("coordinates for an unknown element", f"pos.{name}")
        if not isinstance(xy, list) or len(xy) != 2 or not all(isinstance(c, (int, float)) for c in xy):
            raise ParseError("expected [x, y]", f"pos.{name}")
        coords[keys[name]] = (xy[0], xy[1])
    if len(coords) < len(elements):
        return p
    return UpwardDiagram(p, coords)


def poset_to_json(obj: Poset | UpwardDiagram) -> str:
    p = obj.poset if isinstance(obj, UpwardDiagram) else obj
    data: dict[str, Any] = {"elements": list(p.elements), "relations": [list(c) for c in p.covers]}
    if isinstance(obj, UpwardDiagram):
        data["pos"] = {str(e): list(obj.position[e]) for e in p.elements}
    return json.dumps(data, indent=1)


def layout_to_json(layout: QueueLayout) -> str:
    queues = [[list(c), q] for c, q in layout.queue_of.items()]
    return json.dumps({"order": list(layout.order), "queues": queues}, indent=1)


def parse_layout(text: str) -> QueueLayout:
    """Read layout JSON; the queue count is one more than the largest index used."""
    data = _load(text)
    if not isinstance(data, dict) or "order" not in data or "queues" not in data:
        raise ParseError("expected an object with 'order' and 'queues'", "top level")
    order = tuple(_element(e, f"order[{i}]") for i, e in enumerate(data["order"]))
    queue_of = {}
    for i, item in enumerate(data["queues"]):
        where = f"queues[{i}]"
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not isinstance(item[0], list)
            or len(item[0]) != 2
            or isinstance(item[1], bool)
            or not isinstance(item[1], int)
        ):
            raise ParseError("expected [[lower, upper], queue]", where)
        queue_of[(_element(item[0][0], where), _element(item[0][1], where))] = item[1]
    count = max(queue_of.values(), default=-1) + 1
    # the extension is checked by verify_layout, not here, so broken layouts stay inspectable
    return QueueLayout(LinearExtension(order), queue_of, count)


def export(obj: Poset | UpwardDiagram | QueueLayout, fmt: str = "json", *, poset: Poset | None = None) -> str:
    """Serialise a poset, diagram or layout as ``json`` or ``dot``.

    DOT output of a layout needs ``poset`` only for isolated elements; covers
    are drawn bottom-up and coloured by queue.
    """
    if fmt == "json":
        return layout_to_json(obj) if isinstance(obj, QueueLayout) else poset_to_json(obj)
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["digraph poset {", "  rankdir=BT;"]
    if isinstance(obj, QueueLayout):
        names = list(obj.order)
        if poset is not None:
            names += [e for e in poset.elements if e not in set(names)]
        lines += [f"  {_q(e)};" for e in names]
        for (a, b), q in obj.queue_of.items():
            color = PALETTE[q % len(PALETTE)]
            lines.append(f'  {_q(a)} -> {_q(b)} [label="{q}", color="{color}"];')
    else:
        p = obj.poset if isinstance(obj, UpwardDiagram) else obj
        for e in p.elements:
            if isinstance(obj, UpwardDiagram):
                x, y = obj.position[e]
                lines.append(f'  {_q(e)} [pos="{x:g},{y:g}!"];')
            else:
                lines.append(f"  {_q(e)};")
        lines += [f"  {_q(a)} -> {_q(b)};" for a, b in p.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _q(e: Any) -> str:
    return json.dumps(str(e))
