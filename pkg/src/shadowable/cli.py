"""Command-line interface.

Exit codes: 0 success, 1 negative verdict (certify), 2 input error,
3 IO error, 4 state cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from . import engine, report
from .certify import clopen_shadow_certificate
from .errors import BadParams, MetricError, StateCapExceeded
from .sysfile import ParseError, dumps, fmt, generate, load_system, parse_rational

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_IO, EXIT_CAP = 0, 1, 2, 3, 4


def _emit(doc, stream=None):
    stream = stream or _sys.stdout
    stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def _grid(text):
    if text is None:
        return None
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def cmd_validate(args):
    system = load_system(args.path)
    _emit({"valid": True, "name": system.name, "n": system.n})
    return EXIT_OK


def cmd_generate(args):
    doc = generate(args.kind, n=args.n, k=args.k, levels=args.levels, level=args.level,
                   grid=args.grid, seed=args.seed, metric_kind=args.metric_kind)
    text = dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)
    return EXIT_OK


def cmd_shadow(args):
    system = load_system(args.path)
    eps, delta = parse_rational(args.eps), parse_rational(args.delta)
    if eps < 0 or delta < 0:
        raise BadParams("eps and delta must be non-negative")
    labels = system.space.labels
    sh = engine.shadowable_points(system, eps, delta, args.state_cap)
    doc = {
        "system": system.name,
        "eps": fmt(eps),
        "delta": fmt(delta),
        "shadowable": [labels[i] for i in sorted(sh)],
    }
    if args.witness:
        doc["witnesses"] = {}
        for x in range(system.n):
            if x in sh:
                continue
            v = engine.is_shadowable(system, x, eps, delta, args.state_cap)
            doc["witnesses"][labels[x]] = {
                "window": [labels[w] for w in v.witness],
                "position": v.position,
            }
    _emit(doc)
    return EXIT_OK


def cmd_sweep(args):
    system = load_system(args.path)
    rows = report.sweep(system, _grid(args.eps_grid), _grid(args.delta_grid), args.state_cap, args.workers)
    text = report.rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.rows_to_json(system, rows))
    failed = [r for r in rows if r["status"] != "ok"]
    if failed:
        _sys.stderr.write(f"{len(failed)} cell(s) exceeded the state cap of {args.state_cap}\n")
        return EXIT_CAP
    return EXIT_OK


def cmd_classify(args):
    _emit(report.classify(load_system(args.path)))
    return EXIT_OK


def cmd_certify(args):
    system = load_system(args.path)
    try:
        p = system.space.index(args.point)
    except KeyError:
        _emit({"error": "UnknownPoint", "point": args.point}, _sys.stderr)
        return EXIT_INPUT
    eps = parse_rational(args.eps)
    cert = clopen_shadow_certificate(system, p, eps)
    if cert is None:
        _emit({"point": args.point, "eps": fmt(eps), "certificate": None})
        return EXIT_NEGATIVE
    verdict = engine.is_shadowable(system, p, eps, cert.delta, args.state_cap)
    labels = system.space.labels
    trace = {k: (fmt(v) if v is not None and not isinstance(v, bool) else v) for k, v in cert.trace.items()}
    _emit({
        "point": args.point,
        "eps": fmt(eps),
        "certificate": {"delta": fmt(cert.delta), "U": [labels[i] for i in sorted(cert.U)], "trace": trace},
        "verified_by_engine": verdict.shadowable,
    })
    return EXIT_OK if verdict.shadowable and cert.trace["holds"] else EXIT_NEGATIVE


def build_parser():
    p = argparse.ArgumentParser(prog="shadowable", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a system file")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("generate", help="write a gallery system as JSON")
    s.add_argument("kind", choices=["circle", "odometer", "cat_map", "cantor_plus_interval", "random"])
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--levels", type=int)
    s.add_argument("--level", type=int)
    s.add_argument("--grid", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--metric-kind", choices=["euclidean_square", "random_tree"])
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    for name, func, helptext in (
        ("shadow", cmd_shadow, "list the (eps, delta)-shadowable points"),
        ("sweep", cmd_sweep, "evaluate a grid of scales and write a CSV report"),
        ("classify", cmd_classify, "distality margin, equicontinuity curve, minimality"),
        ("certify", cmd_certify, "clopen shadowing certificate for one point"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("path")
        s.set_defaults(func=func)
        if name != "classify":
            s.add_argument("--state-cap", type=int, default=engine.DEFAULT_STATE_CAP)
        if name == "shadow":
            s.add_argument("--eps", required=True)
            s.add_argument("--delta", required=True)
            s.add_argument("--witness", action="store_true")
        elif name == "sweep":
            s.add_argument("--eps-grid", help="comma-separated rationals; default: all realized distances")
            s.add_argument("--delta-grid", help="comma-separated rationals; default: all realized distances")
            s.add_argument("--out", help="CSV path (default: stdout)")
            s.add_argument("--json", help="also write the report as JSON")
            s.add_argument("--workers", type=int, default=1)
        elif name == "certify":
            s.add_argument("--point", required=True)
            s.add_argument("--eps", required=True)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MetricError, ParseError) as exc:
        _emit(exc.report())
        return EXIT_INPUT
    except BadParams as exc:
        _emit({"error": "BadParams", "message": str(exc)})
        return EXIT_INPUT
    except OSError as exc:
        _emit({"error": "IOError", "message": str(exc)}, _sys.stderr)
        return EXIT_IO
    except StateCapExceeded as exc:
        _emit({"error": "StateCapExceeded", "cap": exc.cap, "states_reached": exc.reached,
               "eps": fmt(exc.eps) if exc.eps is not None else None,
               "delta": fmt(exc.delta) if exc.delta is not None else None}, _sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    raise SystemExit(main())
