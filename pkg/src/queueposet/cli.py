"""Command-line front end: ``queueposet COMMAND ...``.

Exit codes: 0 when the command succeeds and any requested bound holds,
1 for a violation or an exceeded bound, 2 for unreadable or unsuitable input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructions as cons
from .diagram import UpwardDiagram
from .errors import (
    AugmentationFailed,
    InvalidLevels,
    MissingBounds,
    NotTwoDimensional,
    QueuePosetError,
    WidthExceeded,
)
from .exact import exact_queue_number
from .io import export, parse_layout, parse_poset
from .layout import assign_queues, verify_layout
from .poset import Poset, height, width
from .strategies import (
    CrownEmbedding,
    any_extension_layout,
    color_split_extension,
    crown_free_layout,
    lazy_width2_layout,
    leftmost_layout,
    paired_chain_layout,
    planar_width_layout,
)

OK, VIOLATION, BAD_INPUT = 0, 1, 2


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> tuple[Poset, UpwardDiagram | None]:
    obj = parse_poset(_read(path))
    return (obj.poset, obj) if isinstance(obj, UpwardDiagram) else (obj, None)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _crown_text(c: CrownEmbedding) -> str:
    return f"{c.k}-crown a={list(c.a)} b={list(c.b)} c={list(c.c)}"


def cmd_analyze(args: argparse.Namespace) -> int:
    p, d = _load(args.file)
    info = {
        "elements": len(p),
        "covers": len(p.covers),
        "width": width(p).width if len(p) else 0,
        "height": height(p).height if len(p) else 0,
        "has_zero": p.zero is not None,
        "has_one": p.one is not None,
        "diagram": d is not None,
    }
    res = crown_free_layout(p) if len(p) else None
    info["crown"] = _crown_text(res) if isinstance(res, CrownEmbedding) else None
    for key, value in info.items():
        print(f"{key}: {value}")
    return OK


def _colorsplit(p: Poset, _d):
    return assign_queues(p, color_split_extension(p, p.elements))


STRATEGIES = {
    "any": lambda p, d: any_extension_layout(p),
    "lazy2": lambda p, d: lazy_width2_layout(p),
    "paired": lambda p, d: paired_chain_layout(p),
    "crownfree": lambda p, d: crown_free_layout(p),
    "leftmost": lambda p, d: leftmost_layout(p, d),
    "planarw": None,
    "colorsplit": _colorsplit,
}


def cmd_layout(args: argparse.Namespace) -> int:
    p, d = _load(args.file)
    if args.strategy == "planarw":
        if d is None:
            raise _InputError("strategy planarw needs coordinates for every element")
        result = planar_width_layout(d)
    else:
        result = STRATEGIES[args.strategy](p, d)
    if isinstance(result, CrownEmbedding):
        print(f"no layout: poset contains a {_crown_text(result)}", file=sys.stderr)
        return VIOLATION
    _emit(export(result, "json"), args.output)
    print(f"queues: {result.queue_count}", file=sys.stderr)
    if args.max_queues is not None and result.queue_count > args.max_queues:
        return VIOLATION
    return OK


def cmd_exact(args: argparse.Namespace) -> int:
    p, _ = _load(args.file)
    res = exact_queue_number(p, limit=args.limit, time_budget=args.budget)
    if res.status == "exact":
        print(f"queue-number: {res.k}")
        if args.output:
            _emit(export(res.layout, "json"), args.output)
        return OK
    if res.status == "lower_bound":
        print(f"queue-number > {args.limit}")
    else:
        print(f"timeout: {res.lower} <= queue-number <= {res.upper}")
    return VIOLATION


def _int_param(args: argparse.Namespace, default: int | None = None) -> int:
    raw = args.param if args.param is not None else default
    if raw is None:
        raise _InputError(f"generate {args.kind} needs --param")
    try:
        return int(raw)
    except ValueError:
        raise _InputError(f"--param must be an integer, got {raw!r}") from None


def cmd_generate(args: argparse.Namespace) -> int:
    kind = args.kind
    try:
        if kind == "crown":
            obj = cons.subdivided_crown(_int_param(args))
        elif kind == "weak":
            if args.param is None:
                raise _InputError("generate weak needs --param like 3,3")
            obj = cons.weak_order([int(s) for s in args.param.split(",")])
        elif kind == "qw":
            obj = cons.q_width(_int_param(args))[1]
        elif kind == "qh":
            obj = cons.q_height(_int_param(args))[0]
        elif kind == "counterexample":
            obj = cons.height2_counterexample()[0]
        else:
            obj = cons.small_patterns(args.param or "N")
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    _emit(export(obj, "json"), args.output)
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    p, _ = _load(args.poset)
    layout = parse_layout(_read(args.layout))
    report = verify_layout(p, layout)
    if report.ok:
        print(f"ok: {layout.queue_count} queues")
        return OK
    for v in report.violations:
        print("violation:", *v)
    return VIOLATION


def cmd_export(args: argparse.Namespace) -> int:
    p, d = _load(args.file)
    if args.layout:
        layout = parse_layout(_read(args.layout))
        text = export(layout, args.format, poset=p) if args.format == "dot" else export(layout, "json")
    else:
        text = export(d if d is not None else p, args.format)
    _emit(text, args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="queueposet", description="Queue layouts of posets.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="width, height, 0/1 and crown certificate")
    s.add_argument("file")
    s.set_defaults(run=cmd_analyze)

    s = sub.add_parser("layout", help="compute a queue layout with a strategy")
    s.add_argument("file")
    s.add_argument("--strategy", choices=list(STRATEGIES), default="any")
    s.add_argument("--max-queues", type=int, help="exit 1 if the layout uses more queues")
    s.add_argument("-o", "--output", help="write layout JSON here instead of stdout")
    s.set_defaults(run=cmd_layout)

    s = sub.add_parser("exact", help="exact queue-number by exhaustive search")
    s.add_argument("file")
    s.add_argument("--limit", type=int, help="give up once more than LIMIT queues are needed")
    s.add_argument("--budget", type=float, help="time budget in seconds")
    s.add_argument("-o", "--output", help="write an optimal layout here")
    s.set_defaults(run=cmd_exact)

    s = sub.add_parser("generate", help="emit a poset family as JSON")
    s.add_argument("kind", choices=["crown", "weak", "qw", "qh", "counterexample", "pattern"])
    s.add_argument("--param", help="k, w, h, level sizes like 3,3, or a pattern name (2+2, N)")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_generate)

    s = sub.add_parser("verify", help="check a layout against a poset")
    s.add_argument("poset")
    s.add_argument("layout")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("export", help="convert a poset (and optional layout) to DOT or JSON")
    s.add_argument("file")
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.add_argument("--layout", help="layout JSON to colour the covers by queue")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (WidthExceeded, MissingBounds, NotTwoDimensional, InvalidLevels) as exc:
        print(f"error: strategy not applicable: {exc}", file=sys.stderr)
        return BAD_INPUT
    except AugmentationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION
    except (_InputError, QueuePosetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
