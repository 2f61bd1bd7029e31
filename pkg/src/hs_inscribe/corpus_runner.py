"""`hs-inscribe corpus --run-all`: every bundled instance plus small property runs.

The report holds no timings so two runs give identical output.
"""

from __future__ import annotations

from . import acceptance as acc
from . import reports
from .minkowski import NotOnQuadric
from .serialize import MalformedInput, graph_from_json, polygon_from_json, polyhedron_from_json

# sample sizes for the quick property runs
SMALL = {
    2: {"count": 40},
    3: {"nmax": 6, "random_count": 40},
    4: {"count": 60},
    8: {"samples": 20},
    9: {"count": 60},
}


def _run_entry(entry: dict, tol: float) -> int:
    obj = acc.corpus_json(entry["file"])
    args = entry.get("args", [])
    try:
        if entry["command"] == "check-graph":
            return reports.check_graph(graph_from_json(obj))[1]
        if entry["command"] == "verify":
            return reports.verify_polyhedron(polyhedron_from_json(obj, tol), tol)[1]
        if entry["command"] == "horogon":
            deform = float(args[args.index("--deform") + 1]) if "--deform" in args else None
            return reports.horogon(*polygon_from_json(obj), deform=deform, tol=tol)[1]
    except (MalformedInput, NotOnQuadric):
        return 2
    raise ValueError(f"unknown command {entry['command']!r} in the manifest")


def _strip(d: dict) -> dict:
    return {k: v for k, v in d.items() if k != "seconds"}


def run_corpus(tol: float = 1e-9, seed: int = 0) -> tuple[dict, int]:
    files = []
    for entry in acc.corpus_manifest():
        got = _run_entry(entry, tol)
        files.append({"file": entry["file"], "command": entry["command"],
                      "expected_exit": entry["exit"], "exit": got, "pass": got == entry["exit"]})

    props = {}
    for k, (title, fn) in acc.CRITERIA.items():
        kwargs = dict(SMALL.get(k, {}))
        if "count" in kwargs or "samples" in kwargs or "random_count" in kwargs:
            kwargs["seed"] = seed
        res = _strip(fn(**kwargs))
        if k == 2:
            # the literal bound cannot hold for p, q >= 2; gate on the corrected range
            res["gate"] = "corrected"
            res["pass_literal"] = res["pass"]
            res["pass"] = res["corrected_pass"]
        props[str(k)] = {"title": title, **res}

    ok = all(f["pass"] for f in files) and all(p["pass"] for p in props.values())
    report = {"command": "corpus", "tol": tol, "seed": seed, "files": files, "properties": props,
              "pass": ok}
    return report, 0 if ok else 1
