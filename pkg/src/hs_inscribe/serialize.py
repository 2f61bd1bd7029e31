"""JSON formats for graphs, polyhedra and horocyclic polygons."""

from __future__ import annotations

import math
from fractions import Fraction

from .admissible import ColoredGraph, WeightedGraph
from .colors import Color, edge_key
from .ideal_polyhedron import IdealPolyhedron, IdealVertex, build
from .minkowski import NotOnQuadric, q


class MalformedInput(ValueError):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise MalformedInput(msg)


# ---------------------------------------------------------------------------
# weights: {"num": int, "den": int, "pi": bool}; pi = true means a multiple of pi

def weight_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "pi": True}


def weight_from_json(d) -> Fraction | float:
    """pi-unit Fraction for pi weights; a float in pi units otherwise."""
    _need(isinstance(d, dict), "weight must be an object")
    num, den = d.get("num"), d.get("den", 1)
    _need(isinstance(num, int) and isinstance(den, int) and den != 0, "weight needs integer num/den")
    x = Fraction(num, den)
    return x if d.get("pi", False) else float(x) / math.pi


# ---------------------------------------------------------------------------
# graphs

def graph_from_json(obj) -> dict:
    _need(isinstance(obj, dict), "graph file must hold an object")
    n = obj.get("n")
    _need(isinstance(n, int) and n > 0, "n must be a positive integer")
    raw = obj.get("edges")
    _need(isinstance(raw, list), "edges must be a list")
    edges, colors, weights = [], {}, {}
    for item in raw:
        _need(isinstance(item, dict) and isinstance(item.get("u"), int) and isinstance(item.get("v"), int),
              "each edge needs integer u and v")
        u, v = item["u"], item["v"]
        _need(0 <= u < n and 0 <= v < n and u != v, f"bad edge {u}-{v}")
        e = edge_key(u, v)
        _need(e not in edges, f"duplicate edge {e}")
        edges.append(e)
        if "color" in item:
            _need(item["color"] in ("r", "b"), f"bad color {item['color']!r}")
            colors[e] = Color(item["color"])
        if "weight" in item:
            weights[e] = weight_from_json(item["weight"])
    _need(not colors or len(colors) == len(edges), "color either all edges or none")
    _need(not weights or len(weights) == len(edges), "weight either all edges or none")
    cycles = obj.get("cycles")
    if cycles is not None:
        _need(isinstance(cycles, list) and len(cycles) == 2
              and all(isinstance(c, list) and all(isinstance(v, int) for v in c) for c in cycles),
              "cycles must be two lists of vertex ids")
    return {"n": n, "edges": sorted(edges), "colors": colors or None, "weights": weights or None,
            "cycles": cycles, "note": obj.get("note")}


def graph_to_json(g: ColoredGraph, w: WeightedGraph | None = None) -> dict:
    edges = []
    for e in sorted(g.edges):
        item = {"u": e[0], "v": e[1], "color": g.color[e].value}
        if w is not None:
            item["weight"] = weight_to_json(w.w[e])
        edges.append(item)
    return {"n": g.n, "edges": edges, "cycles": [list(c) for c in g.cover]}


# ---------------------------------------------------------------------------
# polyhedra: {"vertices": [[x0, x1, x2(, x3)], ...]} in homogeneous coordinates

def polyhedron_to_json(poly: IdealPolyhedron, meta: dict | None = None) -> dict:
    out = {"vertices": [[float(c) for c in x] for x in poly.points()]}
    if poly.labels:
        out["labels"] = list(poly.labels)
    if meta:
        out["meta"] = meta
    return out


def polyhedron_from_json(obj, tol: float = 1e-9) -> IdealPolyhedron:
    _need(isinstance(obj, dict) and isinstance(obj.get("vertices"), list), "polyhedron needs a vertex list")
    verts = []
    for k, x in enumerate(obj["vertices"]):
        _need(isinstance(x, list) and len(x) in (3, 4) and all(isinstance(c, (int, float)) for c in x),
              f"vertex {k} must have 3 or 4 numeric coordinates")
        x = [float(c) for c in x] + ([1.0] if len(x) == 3 else [])
        _need(x[3] != 0, f"vertex {k} lies on the plane at infinity of the chart")
        x = [c / x[3] for c in x]
        if abs(q(x)) > tol * sum(c * c for c in x):
            raise NotOnQuadric(f"vertex {k}: q = {q(x):.3e}")
        verts.append(IdealVertex(1 if x[2] > 0 else -1, x[0], x[1]))
    return build(verts, tol)


# ---------------------------------------------------------------------------
# horocyclic polygons: {"bases": [angle], "sizes": [positive]}

def polygon_from_json(obj) -> tuple[list, list]:
    _need(isinstance(obj, dict), "polygon file must hold an object")
    bases, sizes = obj.get("bases"), obj.get("sizes")
    _need(isinstance(bases, list) and isinstance(sizes, list) and len(bases) == len(sizes) >= 2,
          "bases and sizes must be equal-length lists")
    _need(all(isinstance(b, (int, float)) for b in bases), "bases must be numbers")
    _need(all(isinstance(s, (int, float)) and s > 0 for s in sizes), "sizes must be positive numbers")
    return [float(b) for b in bases], [float(s) for s in sizes]
