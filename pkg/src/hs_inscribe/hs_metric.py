"""Shape parameters of the triangulated boundary of an ideal polyhedron.

Vertices go to the Riemann sphere through boundary_to_complex.  Each face is
fan-triangulated from its lowest-id vertex.  For an edge z1 z2 whose two
triangles are z1 z2 z3 and z2 z1 z4 the shape parameter is

    tau = -[z1, z2; z3, z4] = -(z1 - z3)(z2 - z4) / ((z2 - z3)(z1 - z4)),

so that a flat, unfolded pair of triangles has tau = 1 and tau = exp(sigma +
i phi) with phi the exterior angle.  Triangles are read clockwise as seen from
outside the chart polyhedron; with this orientation arg tau agrees with the
dihedral angle on red edges between interior triangles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .colors import edge_key
from .ideal_polyhedron import IdealPolyhedron, dihedral_angles
from .minkowski import boundary_to_complex

RESIDUAL_TOL = 1e-8


class CoincidentComplexPoints(ValueError):
    pass


def cross_ratio(z1: complex, z2: complex, z3: complex, z4: complex) -> complex:
    """[z1, z2; z3, z4] = (z1 - z3)(z2 - z4) / ((z2 - z3)(z1 - z4)), infinity allowed."""
    zs = (z1, z2, z3, z4)
    inf = [cmath.isinf(z) for z in zs]
    if sum(inf) > 1:
        raise CoincidentComplexPoints("two points at infinity")
    if len({z for z, i in zip(zs, inf) if not i}) < 4 - sum(inf):
        raise CoincidentComplexPoints("repeated point")
    num = [(0, 2), (1, 3)]
    den = [(1, 2), (0, 3)]

    def factor(pairs):
        out = 1 + 0j
        for a, b in pairs:
            if inf[a] or inf[b]:
                continue  # the infinite factors cancel between numerator and denominator
            out *= zs[a] - zs[b]
        return out

    return factor(num) / factor(den)


@dataclass
class ShapeParams:
    triangles: list            # clockwise from outside
    tau: dict                  # sorted edge -> complex
    apexes: dict               # sorted edge (u, v) -> (z3 vertex, z4 vertex) for u -> v
    star: dict                 # vertex -> neighbours, counter-clockwise from outside

    def sigma(self, e) -> float:
        return math.log(abs(self.tau[e]))

    def phi(self, e) -> float:
        return cmath.phase(self.tau[e])


def shape_parameters(poly: IdealPolyhedron) -> ShapeParams:
    zs = [boundary_to_complex(x) for x in poly.points()]
    tris = [(a, c, b) for a, b, c in poly.hull.fan_triangles()]
    third = {}
    for a, b, c in tris:
        third[(a, b)] = c
        third[(b, c)] = a
        third[(c, a)] = b
    tau = {}
    apexes = {}
    for (u, v), z3 in third.items():
        if u > v:
            continue
        z4 = third[(v, u)]
        tau[(u, v)] = -cross_ratio(zs[u], zs[v], zs[z3], zs[z4])
        apexes[(u, v)] = (z3, z4)
    star = {}
    for v in range(poly.n):
        nxt = {}
        for a, b, c in tris:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                if x == v:
                    nxt[z] = y
        order = [min(nxt)]
        while nxt[order[-1]] != order[0]:
            order.append(nxt[order[-1]])
        star[v] = order
    return ShapeParams(tris, tau, apexes, star)


def verify_vertex_relations(sp: ShapeParams) -> dict:
    """Per-vertex residuals |prod tau - 1| and |sum_j prod_{i<=j} tau_i|."""
    out = {}
    for v, nbrs in sp.star.items():
        prod = 1 + 0j
        acc = 0j
        scale = 0.0
        for w in nbrs:
            prod *= sp.tau[edge_key(v, w)]
            acc += prod
            scale = max(scale, abs(prod))
        out[v] = {"product": abs(prod - 1), "closure": abs(acc) / max(scale, 1.0)}
    worst1 = max(r["product"] for r in out.values())
    worst2 = max(r["closure"] for r in out.values())
    return {"vertices": out, "max_product_residual": worst1, "max_closure_residual": worst2,
            "pass": worst1 < RESIDUAL_TOL and worst2 < RESIDUAL_TOL}


def shearings(sp: ShapeParams) -> dict:
    """sigma_e = ln|tau_e| and the per-vertex sums, which vanish."""
    sig = {e: sp.sigma(e) for e in sp.tau}
    sums = {v: sum(sig[edge_key(v, w)] for w in nbrs) for v, nbrs in sp.star.items()}
    return {"sigma": sig, "vertex_sums": sums, "max_vertex_sum": max(abs(s) for s in sums.values())}


def angle_relation(poly: IdealPolyhedron, sp: ShapeParams | None = None) -> dict:
    """Compare arg tau with the dihedral angle theta on every hull edge.

    Red edges between interior (single-sheet) triangles must satisfy
    arg tau = theta mod 2 pi.  For the remaining edges the offset is reported;
    empirically it is pi exactly when the two flap apexes lie on different
    sheets and 0 otherwise, which `offset_rule_max_defect` measures.
    """
    sp = sp or shape_parameters(poly)
    g = dihedral_angles(poly)
    red_interior = []
    other = {}
    for e, th in g.weights.items():
        z3, z4 = sp.apexes[e]
        d = cmath.phase(sp.tau[e] * cmath.exp(-1j * th))
        sheets = {poly.sheet(x) for x in (e[0], e[1], z3, z4)}
        if len(sheets) == 1:
            red_interior.append(abs(d))
        else:
            other[e] = {"offset": d, "apex_sheets_differ": poly.sheet(z3) != poly.sheet(z4)}
    rule = [abs(abs(o["offset"]) - (math.pi if o["apex_sheets_differ"] else 0.0))
            for o in other.values()]
    return {
        "offset_rule_max_defect": max(rule) if rule else 0.0,
        "red_interior_max_defect": max(red_interior) if red_interior else 0.0,
        "red_interior_count": len(red_interior),
        "other_edges": other,
    }
