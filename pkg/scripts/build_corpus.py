"""Regenerate the bundled instances in src/hs_inscribe/corpus/.

Run from the repository root:  python3 scripts/build_corpus.py
Output is deterministic; rerunning leaves the files unchanged.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from hs_inscribe import reports
from hs_inscribe.ideal_polyhedron import (IdealVertex, PolyhedronError, build, deform_toward_planes,
                                          generate_two_circle)
from hs_inscribe.serialize import polyhedron_to_json

OUT = Path(__file__).resolve().parent.parent / "src" / "hs_inscribe" / "corpus"


def edges_json(pairs, colors=None):
    out = []
    for u, v in pairs:
        item = {"u": u, "v": v}
        if colors:
            item["color"] = colors[(u, v)]
        out.append(item)
    return out


def graphs() -> dict:
    rim = [(1, 2), (2, 3), (3, 4), (1, 4)]
    spokes = [(0, v) for v in range(1, 5)]
    wheel = {"n": 5, "edges": edges_json(rim + spokes), "cycles": [[0], [1, 2, 3, 4]]}

    top = [(0, 1), (1, 2), (2, 3), (0, 3)]
    bottom = [(4, 5), (5, 6), (6, 7), (4, 7)]
    rungs = [(0, 4), (1, 5), (2, 6), (3, 7)]
    cube = {"n": 8, "edges": edges_json(top + bottom + rungs),
            "cycles": [[0, 1, 2, 3], [4, 5, 6, 7]]}

    nested = {
        "n": 8,
        "edges": edges_json(top + bottom + rungs + [(0, 5), (2, 7)]),
        "cycles": [[0, 1, 2, 3], [4, 5, 6, 7]],
        "note": ("reconstructed instance: the cube with the two annulus diagonals 0-5 and 2-7. "
                 "The original figure could not be recovered exactly; this graph reproduces the "
                 "four stated inequalities and fails for the same reason."),
    }
    square = {"n": 4, "edges": edges_json(top)}
    return {"wheel4.json": wheel, "cube_matching.json": cube,
            "nested_squares_reconstruction.json": nested, "square_not_polyhedral.json": square}


def random_position(seed: int, p: int, q: int):
    """Random ideal points on both sheets, redrawn until the result verifies."""
    rng = np.random.default_rng(seed)
    for _ in range(500):
        verts = []
        for sheet, k in ((1, p), (-1, q)):
            for _ in range(k):
                r = rng.uniform(0.4, 2.5)
                a = rng.uniform(0, 2 * math.pi)
                verts.append(IdealVertex(sheet, r * math.cos(a), r * math.sin(a)))
        try:
            poly = build(verts)
        except PolyhedronError:
            continue
        if reports.verify_polyhedron(poly)[1] == 0 and poly.n == p + q:
            return poly
    raise RuntimeError(f"no valid random polyhedron for seed {seed}")


def seeded_phases(seed: int, p: int, q: int):
    rng = np.random.default_rng(seed)
    pp = sorted(float(x) for x in rng.uniform(0, 2 * math.pi, size=p)) if p > 1 else None
    pm = sorted(float(x) for x in rng.uniform(0, 2 * math.pi, size=q)) if q > 1 else None
    return pp, pm


def polyhedra() -> dict:
    out = {}
    for p, q, t in ((1, 4, 2.0), (1, 3, 2.0), (1, 6, 1.5), (2, 3, 2.0), (3, 4, 2.0),
                    (4, 4, 1.7), (4, 5, 2.5)):
        poly = generate_two_circle(p, q, t)
        out[f"poly_{p}_{q}.json"] = polyhedron_to_json(poly, {"p": p, "q": q, "t": t})
    # equal phases on both sheets would make the 2+2 case flat
    poly = generate_two_circle(2, 2, 2.0, None, [math.pi / 2, 3 * math.pi / 2])
    out["poly_2_2.json"] = polyhedron_to_json(poly, {"p": 2, "q": 2, "t": 2.0})
    poly = deform_toward_planes(generate_two_circle(2, 5, 3.0), 1.6)
    out["poly_2_5_deformed.json"] = polyhedron_to_json(poly, {"p": 2, "q": 5, "t": 3.0, "deform": 1.6})
    pp, pm = seeded_phases(7, 3, 3)
    poly = generate_two_circle(3, 3, 2.0, pp, pm)
    out["poly_3_3_seed7.json"] = polyhedron_to_json(poly, {"p": 3, "q": 3, "t": 2.0, "seed": 7})
    for seed, p, q in ((11, 3, 4), (12, 4, 3), (13, 2, 6)):
        poly = random_position(seed, p, q)
        out[f"poly_random_{seed}.json"] = polyhedron_to_json(poly, {"p": p, "q": q, "seed": seed})
    return out


def polygons() -> dict:
    return {
        # the half-plane picture with a = 0.5 and d = 2 as a disk configuration
        "two_gon.json": {"bases": [0.0, math.pi], "sizes": [2.0, 2.0]},
        "triangle.json": {"bases": [4.0, 2.0, 0.5], "sizes": [1.2, 1.5, 1.3]},
        "pentagon.json": {"bases": [5.5, 4.3, 3.0, 1.6, 0.4], "sizes": [1.1, 1.05, 1.2, 1.1, 1.15]},
    }


def off_quadric() -> dict:
    obj = polyhedron_to_json(generate_two_circle(2, 3, 2.0))
    obj["vertices"][0][0] += 1e-3
    return obj


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    files, entries = {}, []
    for name, obj in graphs().items():
        files[name] = obj
        exit_code = 0 if name in ("wheel4.json", "cube_matching.json") else 1
        entries.append({"file": name, "command": "check-graph", "args": [], "exit": exit_code})
    for name, obj in polyhedra().items():
        files[name] = obj
        entries.append({"file": name, "command": "verify", "args": [], "exit": 0})
    files["off_quadric.json"] = off_quadric()
    entries.append({"file": "off_quadric.json", "command": "verify", "args": [], "exit": 2})
    for name, obj in polygons().items():
        files[name] = obj
        entries.append({"file": name, "command": "horogon", "args": ["--deform", "0.9"], "exit": 0})
    files["index.json"] = {"entries": entries}
    for old in OUT.glob("*.json"):
        if old.name not in files:
            old.unlink()
    for name, obj in files.items():
        (OUT / name).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(files)} files to {OUT}")


if __name__ == "__main__":
    main()
