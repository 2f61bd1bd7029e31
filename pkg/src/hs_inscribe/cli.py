"""hs-inscribe command line.

Exit status: 0 pass, 1 a condition fails, 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from fractions import Fraction
from importlib import resources

import numpy as np

from . import horocycle as hc
from . import reports
from .ideal_polyhedron import PolyhedronError, deform_toward_planes, generate_two_circle
from .minkowski import NotOnQuadric
from .serialize import (MalformedInput, graph_from_json, polygon_from_json, polyhedron_from_json,
                        polyhedron_to_json)

DEFAULT_TOL = 1e-9


class UsageError(Exception):
    pass


def _default_tol() -> float:
    raw = os.environ.get("HS_INSCRIBE_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"HS_INSCRIBE_TOL={raw!r} is not a number") from None


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator, "pi": True}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


def _text(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            lines += _text(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            lines += _text(v, f"{prefix}{i}.")
    else:
        lines.append(f"{prefix.rstrip('.')}: {json.dumps(_jsonable(obj))}")
    return lines


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "text":
        out.write("\n".join(_text(report)) + "\n")
    else:
        out.write(dumps(report) + "\n")
    out.flush()


def _load(path: str) -> tuple[object, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(raw), hashlib.sha256(raw).hexdigest()
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"{path}: not JSON ({exc})") from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_check_graph(args) -> tuple[dict, int]:
    obj, digest = _load(args.path)
    report, status = reports.check_graph(graph_from_json(obj))
    report["input_sha256"] = digest
    return report, status


def cmd_verify(args) -> tuple[dict, int]:
    obj, digest = _load(args.path)
    try:
        poly = polyhedron_from_json(obj, args.tol)
    except PolyhedronError as exc:
        return {"command": "verify", "input_sha256": digest, "pass": False,
                "error": type(exc).__name__, "message": str(exc)}, 1
    report, status = reports.verify_polyhedron(poly, args.tol)
    report["input_sha256"] = digest
    return report, status


def cmd_generate(args) -> tuple[dict, int]:
    p, q, t = args.p, args.q, args.t
    pp = pm = None
    if args.seed is not None:
        rng = np.random.default_rng(args.seed)
        pp = sorted(float(x) for x in rng.uniform(0, 2 * math.pi, size=p)) if p > 1 else None
        pm = sorted(float(x) for x in rng.uniform(0, 2 * math.pi, size=q)) if q > 1 else None
    try:
        poly = generate_two_circle(p, q, t, pp, pm, args.tol)
        if args.deform is not None:
            poly = deform_toward_planes(poly, args.deform, args.tol)
    except ValueError as exc:
        if isinstance(exc, PolyhedronError):
            return {"command": "generate", "error": type(exc).__name__, "message": str(exc)}, 1
        raise UsageError(str(exc)) from None
    meta = {"p": p, "q": q, "t": t, "seed": args.seed, "deform": args.deform}
    return polyhedron_to_json(poly, meta), 0


def cmd_horogon(args) -> tuple[dict, int]:
    obj, digest = _load(args.path)
    bases, sizes = polygon_from_json(obj)
    try:
        report, status = reports.horogon(bases, sizes, args.deform, args.tol)
    except (hc.NoIntersection, hc.RedundantHorodisk) as exc:
        return {"command": "horogon", "input_sha256": digest, "pass": False,
                "error": type(exc).__name__, "message": str(exc)}, 1
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    report["input_sha256"] = digest
    return report, status


def cmd_corpus(args) -> tuple[dict, int]:
    from .corpus_runner import run_corpus

    if not args.run_all:
        root = resources.files("hs_inscribe") / "corpus"
        names = sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))
        return {"command": "corpus", "files": names}, 0
    return run_corpus(args.tol, seed=args.seed if args.seed is not None else 0)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="numerical tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("json", "text"), default="json")

    ap = argparse.ArgumentParser(prog="hs-inscribe", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-graph", parents=[common], help="two-cycle cover and alternating cycles")
    s.add_argument("path")
    s.set_defaults(func=cmd_check_graph)

    s = sub.add_parser("verify", parents=[common], help="angles and shape parameters of a polyhedron")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("generate", parents=[common], help="two-circle polyhedron")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("t", type=float)
    s.add_argument("--deform", type=float, default=None, metavar="T",
                   help="flow vertices down to heights +-T")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("horogon", parents=[common], help="horocyclic polygon report")
    s.add_argument("path")
    s.add_argument("--cone-angle", action="store_true", help="accepted for compatibility; always reported")
    s.add_argument("--deform", type=float, default=None, metavar="K")
    s.set_defaults(func=cmd_horogon)

    s = sub.add_parser("corpus", parents=[common], help="bundled instances")
    s.add_argument("--run-all", action="store_true")
    s.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.tol is None:
            args.tol = _default_tol()
        report, status = args.func(args)
    except (UsageError, MalformedInput, NotOnQuadric) as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, args.format, sys.stderr)
        return 2
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            emit(report, args.format, fh)
    else:
        emit(report, args.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
