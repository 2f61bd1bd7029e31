"""Report builders shared by the command line and the bundled corpus runner.

Each builder returns (report dict, exit status) with status 0 = pass and
1 = some condition fails.  Malformed input raises and is mapped to status 2 by
the caller.
"""

from __future__ import annotations

import math

from . import admissible as adm
from . import horocycle as hc
from .admissible import ColoredGraph, WeightedGraph
from .hs_metric import RESIDUAL_TOL, angle_relation, shape_parameters, shearings, verify_vertex_relations
from .ideal_polyhedron import IdealPolyhedron, dihedral_angles, interior_complex, verify_admissible
from .serialize import MalformedInput, graph_to_json, weight_to_json

ANGLE_TOL = 1e-7


def _ekey(e) -> str:
    return f"{e[0]}-{e[1]}"


def _walk_json(g: ColoredGraph, walk: list) -> dict:
    edges = adm.walk_edges(walk)
    return {"vertices": walk, "colors": "".join(g.color[e].value for e in edges)}


# ---------------------------------------------------------------------------
# graphs

def check_graph(data: dict) -> tuple[dict, int]:
    n, edges = data["n"], data["edges"]
    report = {"command": "check-graph", "n": n, "edge_count": len(edges)}
    if data.get("note"):
        report["note"] = data["note"]
    if not adm.is_polyhedral(n, edges):
        report.update(polyhedral=False, admissible=False, reason="graph is not 3-connected and planar")
        return report, 1
    report["polyhedral"] = True
    if data["cycles"] is not None:
        try:
            g = ColoredGraph.from_cover(n, edges, data["cycles"])
        except adm.InvalidCover as exc:
            raise MalformedInput(f"invalid cover: {exc}") from exc
        if data["colors"] and any(g.color[e] is not c for e, c in data["colors"].items()):
            raise MalformedInput("colors disagree with the given cycles")
        candidates = [g]
    else:
        covers = sorted(adm.iter_two_cycle_covers(n, edges, data["colors"]), key=adm.cover_preference)
        candidates = [ColoredGraph.from_cover(n, edges, c) for c in covers]
    report["covers_considered"] = len(candidates)
    if not candidates:
        report.update(C1={"pass": False}, admissible=False, reason="no two-cycle cover")
        return report, 1
    chosen = next((g for g in candidates if adm.check_C2(g).ok), candidates[0])
    c2 = adm.check_C2(chosen)
    lp = adm.lp_feasible(chosen)
    report["C1"] = {"pass": True, "cycles": [list(c) for c in chosen.cover]}
    report["C2"] = {"pass": c2.ok, "reason": c2.reason,
                    "failing_edges": [list(e) for e in c2.failing_edges],
                    "witnesses": [_walk_json(chosen, w) for w in c2.witnesses]}
    lp_json = {"feasible": lp.feasible, "agrees_with_C2": lp.feasible == c2.ok}
    if lp.feasible:
        lp_json["margin"] = weight_to_json(lp.margin)
    else:
        y = lp.certificate["y"]
        lp_json["certificate"] = {
            "kind": lp.certificate["kind"],
            "vertex_multipliers": [weight_to_json(v) for v in y[:n]],
            "verified": adm.verify_certificate(chosen, lp.certificate),
        }
    report["LP"] = lp_json
    status = 0 if c2.ok and lp.feasible else 1
    if c2.ok:
        w = adm.synthesize_by_cycles(chosen)
        report["synthesized"] = graph_to_json(chosen, w)
        report["synthesized_check"] = adm.verify_W(w)
    if data["weights"] is not None:
        given = WeightedGraph(chosen, dict(data["weights"]))
        chk = adm.verify_W(given)
        report["given_weights_check"] = chk
        status = status or (0 if chk["ok"] else 1)
    if lp.feasible != c2.ok:
        status = 1
    report["admissible"] = status == 0
    return report, status


# ---------------------------------------------------------------------------
# polyhedra

def combinatorial_graph(poly: IdealPolyhedron) -> ColoredGraph:
    cover = interior_complex(poly)["cycles"]
    return ColoredGraph.from_cover(poly.n, poly.hull.edges, cover)


def verify_polyhedron(poly: IdealPolyhedron, tol: float = 1e-9) -> tuple[dict, int]:
    g = dihedral_angles(poly, tol)
    cond = verify_admissible(g, tol)
    cg = combinatorial_graph(poly)
    c2 = adm.check_C2(cg)
    sp = shape_parameters(poly)
    rel = verify_vertex_relations(sp)
    sh = shearings(sp)
    ar = angle_relation(poly, sp)
    report = {
        "command": "verify",
        "n": poly.n, "p": poly.p, "q": poly.q,
        "labels": list(poly.labels),
        "angles": {_ekey(e): w for e, w in sorted(g.weights.items())},
        "colors": {_ekey(e): c.value for e, c in sorted(g.colors.items())},
        "cover": [list(c) for c in g.cover],
        **cond,
        "C2": {"pass": c2.ok, "reason": c2.reason},
        "vertex_relations": {"pass": rel["pass"],
                             "max_product_residual": rel["max_product_residual"],
                             "max_closure_residual": rel["max_closure_residual"]},
        "shearings": {"pass": sh["max_vertex_sum"] < RESIDUAL_TOL,
                      "max_vertex_sum": sh["max_vertex_sum"],
                      "sigma": {_ekey(e): s for e, s in sorted(sh["sigma"].items())}},
        "shape_parameters": {_ekey(e): {"re": t.real, "im": t.imag, "sigma": math.log(abs(t)),
                                        "phi": math.atan2(t.imag, t.real)}
                             for e, t in sorted(sp.tau.items())},
        "arg_tau_vs_theta": {
            "pass": ar["red_interior_max_defect"] < ANGLE_TOL,
            "red_interior_edges": ar["red_interior_count"],
            "red_interior_max_defect": ar["red_interior_max_defect"],
            "other_edges_offset_rule_max_defect": ar["offset_rule_max_defect"],
        },
    }
    gates = ["C1", "A1", "A2", "A3", "C2", "vertex_relations", "shearings", "arg_tau_vs_theta"]
    report["pass"] = all(report[k]["pass"] for k in gates)
    return report, 0 if report["pass"] else 1


# ---------------------------------------------------------------------------
# horocyclic polygons

def _disk(x) -> list:
    w = hc.to_disk(x)
    return [w.real, w.imag]


def horogon(bases, sizes, deform: float | None = None, tol: float = 1e-9) -> tuple[dict, int]:
    poly = hc.horocyclic_polygon(bases, sizes)
    alphas = hc.vertex_angles(poly)
    ell = sum(alphas)
    ident = hc.angle_identity_residuals(poly)
    report = {
        "command": "horogon",
        "p": poly.p,
        "bases": poly.bases, "sizes": poly.sizes,
        "vertices_disk": [_disk(x) for x in poly.vertices],
        "angles": alphas,
        "distances": hc.distances(poly),
        "distances_halfplane": hc.distances_halfplane(poly),
        "identity_residuals": ident,
        "cone_angle": ell,
        "cone_angle_over_pi": ell / math.pi,
        "cone_angle_below_2pi": ell < 2 * math.pi,
        "clockwise_order": hc.order_ok(poly),
    }
    ok = ell < 2 * math.pi and max(ident) < tol and report["clockwise_order"]
    if deform is not None:
        try:
            out, resid = hc.deform_polygon(poly, deform)
            report["deform"] = {
                "k": deform, "common_horocycle_residual": resid, "pass": resid < tol,
                "sizes": out.sizes, "vertices_disk": [_disk(x) for x in out.vertices],
                "cone_angle": hc.cone_angle(out),
            }
            ok = ok and resid < tol
        except hc.VerticesMerge as exc:
            report["deform"] = {"k": deform, "pass": False, "error": f"VerticesMerge: {exc}"}
            ok = False
    report["pass"] = bool(ok)
    return report, 0 if ok else 1
