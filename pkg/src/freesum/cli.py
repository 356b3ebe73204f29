"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 resource abort.  Errors are reported on stderr as JSON objects.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import configuration as cfg
from .census import PUBLISHED, ResourceAbort, count_up_to_symmetry
from .complex import ComplexError, Triangulation
from .configuration import ConfigurationError, PointConfiguration, free_sum
from .enumeration import EnumerationLimitError, brute_force_triangulations
from .io import (
    ParseError,
    format_points,
    format_triangulation,
    format_triangulations,
    format_web,
    parse_points,
    parse_triangulation,
    parse_triangulations,
    parse_web,
)
from .placing import placing_triangulation
from .regularity import is_regular
from .stabbing import StabbingError, build_stabbing_poset, stabbing_compare_lp, stabbing_compare_tree
from .starballs import enumerate_star_balls
from .sumtri import SumError, construct_sum_triangulation, decompose
from .verify import verify_triangulation
from .webs import WebContext, count_proper_psum_webs, enumerate_proper_psum_webs

OK, FAILED, USAGE, ABORT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("usage", message)
        sys.exit(USAGE)


def _emit_error(kind: str, message: str, **extra) -> None:
    print(json.dumps({"error": kind, "message": message, **extra}, sort_keys=True), file=sys.stderr)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _points(path: str) -> PointConfiguration:
    return parse_points(_read(path), name=Path(path).stem)


def _triangulation(config, path: str) -> Triangulation:
    return parse_triangulation(_read(path), config)


def _shape(spec: str) -> PointConfiguration:
    """``dp:2``, ``dp-minus:4``, ``cross:3`` or ``interval:-1,0,1``."""
    name, _, arg = spec.partition(":")
    if name == "interval":
        return cfg.interval([int(x) for x in arg.split(",")])
    makers = {"dp": cfg.dp, "dp-minus": cfg.dp_minus, "cross": cfg.cross}
    if name not in makers or not arg.isdigit():
        raise UsageError(f"unknown shape {spec!r}; use dp:D, dp-minus:D, cross:D or interval:a,b,...")
    return makers[name](int(arg))


def _summand(args, side: str) -> PointConfiguration:
    path = getattr(args, f"{side}_points")
    shape = getattr(args, side, None)
    if path:
        return _points(path)
    if shape:
        return _shape(shape)
    raise UsageError(f"give --{side}-points FILE or --{side} SHAPE")


# -- subcommands -------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.shape == "interval":
        if not args.values:
            raise UsageError("interval needs --values")
        c = cfg.interval([int(v) for v in args.values.split(",")])
    else:
        if args.dim is None:
            raise UsageError("--dim is required")
        c = {"dp": cfg.dp, "dp-minus": cfg.dp_minus, "cross": cfg.cross}[args.shape](args.dim)
    sys.stdout.write(format_points(c))
    return OK


def cmd_triangulate(args) -> int:
    c = _points(args.points)
    order = [int(x) for x in args.order.split(",")] if args.order else None
    print(format_triangulation(placing_triangulation(c, order)))
    return OK


def cmd_enumerate(args) -> int:
    c = _points(args.points)
    ts = brute_force_triangulations(
        c, max_points=args.max_points, max_dim=args.max_dim, mod_symmetry=args.mod_symmetry
    )
    sys.stdout.write(format_triangulations(ts))
    return OK


def cmd_stabbing(args) -> int:
    c = _points(args.points)
    t = _triangulation(c, args.triangulation)
    compare = stabbing_compare_lp if args.lp else stabbing_compare_tree
    _dump(build_stabbing_poset(t, compare=compare, closure=args.closure).to_dict())
    return OK


def cmd_star_balls(args) -> int:
    c = _points(args.points)
    t = _triangulation(c, args.triangulation)
    _dump(enumerate_star_balls(t, method=args.method).to_dict())
    return OK


def _pair(args):
    p, q = _summand(args, "p"), _summand(args, "q")
    return p, q, _triangulation(p, args.p_triangulation), _triangulation(q, args.q_triangulation)


def cmd_webs(args) -> int:
    p, q, tp, tq = _pair(args)
    ctx = WebContext.build(tp, tq)
    if args.count_only:
        _dump({"count": count_proper_psum_webs(tp, tq, ctx)})
        return OK
    for k, w in enumerate(enumerate_proper_psum_webs(tp, tq, ctx)):
        if args.limit is not None and k >= args.limit:
            break
        print(format_web(w))
    return OK


def cmd_sum(args) -> int:
    p, q, tp, tq = _pair(args)
    web = parse_web(_read(args.web), tp, tq)
    st = construct_sum_triangulation(tp, tq, web, side=args.side)
    report = verify_triangulation(st.triangulation)
    if args.output:
        Path(args.output).write_text(format_triangulation(st.triangulation) + "\n")
    _dump({
        "triangulation": format_triangulation(st.triangulation),
        "cells": len(st.triangulation.cells),
        "vertices": len(st.triangulation.vertices),
        "points": format_points(st.config),
        "provenance": {"side": st.side, "alpha": web.to_json()["images"], "beta": st.beta.to_json()["images"]},
        "verification": report.to_dict(),
    })
    return OK if report.ok else FAILED


def _split_sum(config: PointConfiguration, p_dim: int | None):
    """Recover summands of a free-sum configuration and map file indices to sum indices."""
    dim = config.dim
    choices = [p_dim] if p_dim else range(1, dim)
    for d in choices:
        left = [p for p in config.points if all(x == 0 for x in p[d:])]
        right = [p for p in config.points if all(x == 0 for x in p[:d])]
        if len(left) + len(right) - 1 != len(config):
            continue
        try:
            fs = free_sum(PointConfiguration([p[:d] for p in left], "P"), PointConfiguration([p[d:] for p in right], "Q"))
        except ConfigurationError:
            continue
        where = {pt: i for i, pt in enumerate(fs.points)}
        return fs, [where[pt] for pt in config.points]
    raise UsageError("the points do not form a free sum of two configurations with interior origins")


def cmd_decompose(args) -> int:
    c = _points(args.points)
    t_file = _triangulation(c, args.triangulation)
    fs, to_sum = _split_sum(c, args.p_dim)
    t = Triangulation(fs, [[to_sum[i] for i in cell] for cell in t_file.cells])
    res = decompose(t, prefer=args.prefer)
    from .sumtri import origin_part

    _dump({
        "side": origin_part(t),
        "pinned": res.side,
        "p_points": format_points(fs.p),
        "q_points": format_points(fs.q),
        "p_triangulation": format_triangulation(res.tp),
        "q_triangulation": format_triangulation(res.tq),
        "alpha": res.alpha.to_json(),
        "beta": res.beta.to_json(),
    })
    return OK


def cmd_verify(args) -> int:
    c = _points(args.points)
    t = parse_triangulation(_read(args.triangulation), c)
    report = verify_triangulation(t)
    _dump({"ok": report.ok, **report.to_dict()})
    return OK if report.ok else FAILED


def cmd_regular(args) -> int:
    c = _points(args.points)
    t = _triangulation(c, args.triangulation)
    r = is_regular(t)
    heights = [str(h) for h in r.heights] if r.heights is not None else None
    _dump({"regular": r.regular, "heights": heights})
    return OK


def _load_dir(config, path: str | None):
    if not path:
        return None
    p = Path(path)
    files = sorted(p.iterdir()) if p.is_dir() else [p]
    out = []
    for f in files:
        if f.is_file():
            out.extend(parse_triangulations(f.read_text(), config))
    return out


def cmd_census(args) -> int:
    p, q = _summand(args, "p"), _summand(args, "q")
    tps = _load_dir(p, args.p_triangulations)
    tqs = _load_dir(q, args.q_triangulations)
    if tps is None:
        tps = brute_force_triangulations(p, max_dim=args.max_dim)
    if tqs is None:
        tqs = brute_force_triangulations(q, max_dim=args.max_dim)
    report = count_up_to_symmetry(
        p,
        q,
        tps,
        tqs,
        materialize=not args.count_only,
        check_regular=not args.count_only and not args.no_regular,
        memory_budget=args.memory_budget,
        threads=args.threads,
        published=PUBLISHED.get((p.name, q.name)),
    )
    print(report.to_json())
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="freesum", description="Triangulations of free sums of point configurations.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a standard point configuration")
    g.add_argument("--shape", required=True, choices=["dp", "dp-minus", "cross", "interval"])
    g.add_argument("--dim", type=int)
    g.add_argument("--values", help="comma-separated coordinates for --shape interval")
    g.set_defaults(func=cmd_gen)

    g = sub.add_parser("triangulate", help="placing triangulation")
    g.add_argument("--points", required=True)
    g.add_argument("--order", help="comma-separated insertion order")
    g.set_defaults(func=cmd_triangulate)

    g = sub.add_parser("enumerate-triangulations", help="all triangulations of a tiny configuration")
    g.add_argument("--points", required=True)
    g.add_argument("--mod-symmetry", action="store_true")
    g.add_argument("--max-points", type=int, default=10)
    g.add_argument("--max-dim", type=int, default=2)
    g.set_defaults(func=cmd_enumerate)

    for name, func, helptext in (
        ("stabbing", cmd_stabbing, "stabbing order (Hasse diagram)"),
        ("star-balls", cmd_star_balls, "strictly star-shaped balls"),
        ("verify", cmd_verify, "check a triangulation"),
        ("regular", cmd_regular, "regularity test with lifting heights"),
    ):
        g = sub.add_parser(name, help=helptext)
        g.add_argument("--points", required=True)
        g.add_argument("--triangulation", required=True)
        g.set_defaults(func=func)
        if name == "stabbing":
            g.add_argument("--lp", action="store_true", help="use the separation-LP oracle")
            g.add_argument("--closure", action="store_true", help="close the relation transitively")
        if name == "star-balls":
            g.add_argument("--method", choices=["frontier", "brute"], default="frontier")

    def pair_args(g, shapes=False):
        for side in ("p", "q"):
            g.add_argument(f"--{side}-points")
            if shapes:
                g.add_argument(f"--{side}", help="generator such as dp:2 or cross:4")
        if not shapes:
            g.add_argument("--p-triangulation", required=True)
            g.add_argument("--q-triangulation", required=True)

    g = sub.add_parser("webs", help="proper webs of stars pinned on the P side")
    pair_args(g)
    g.add_argument("--count-only", action="store_true")
    g.add_argument("--limit", type=int)
    g.set_defaults(func=cmd_webs)

    g = sub.add_parser("sum", help="assemble the sum triangulation of a web")
    pair_args(g)
    g.add_argument("--web", required=True, help="JSON web from the P triangulation to the Q triangulation")
    g.add_argument("--side", choices=["P", "Q"], default="P")
    g.add_argument("--output", help="also write the triangulation file here")
    g.set_defaults(func=cmd_sum)

    g = sub.add_parser("decompose", help="summand triangulations and webs of a sum triangulation")
    g.add_argument("--points", required=True)
    g.add_argument("--triangulation", required=True)
    g.add_argument("--p-dim", type=int, help="dimension of the first summand (inferred if omitted)")
    g.add_argument("--prefer", choices=["P", "Q"], default="P")
    g.set_defaults(func=cmd_decompose)

    g = sub.add_parser("census", help="count webs and sum triangulations up to symmetry")
    pair_args(g, shapes=True)
    g.add_argument("--p-triangulations", help="file or directory of triangulation files")
    g.add_argument("--q-triangulations", help="file or directory of triangulation files")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--memory-budget", type=int, help="bytes; defaults to $FREESUM_MEMORY_BUDGET")
    g.add_argument("--count-only", action="store_true", help="count webs without building triangulations")
    g.add_argument("--no-regular", action="store_true", help="skip the regularity checks")
    g.add_argument("--max-dim", type=int, default=4, help="dimension limit for automatic summand enumeration")
    g.set_defaults(func=cmd_census)
    return ap


def _glue_values(argv):
    # argparse reads "-1,0,1" as an option; fold it into "--values=-1,0,1"
    out = []
    it = iter(argv)
    for a in it:
        if a == "--values":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--values={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        return args.func(args)
    except ResourceAbort as exc:
        _emit_error("resource", str(exc), checkpoint=exc.checkpoint)
        return ABORT
    except (UsageError, EnumerationLimitError) as exc:
        _emit_error("usage", str(exc))
        return USAGE
    except ParseError as exc:
        _emit_error("parse", str(exc), line=exc.line, column=exc.column)
        return USAGE
    except (ConfigurationError, ComplexError, SumError, StabbingError, ValueError) as exc:
        _emit_error("input", str(exc))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
