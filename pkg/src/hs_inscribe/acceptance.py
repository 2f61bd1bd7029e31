"""Property checks with quantitative thresholds, numbered 1 to 10.

Each function returns a dict with at least "pass" and the measured values.
Sample sizes are arguments so the corpus runner can use small ones.
"""

from __future__ import annotations

import json
import math
import time
from fractions import Fraction
from importlib import resources

import numpy as np

from . import admissible as adm
from . import horocycle as hc
from .graphs import colored_corpus, random_instances
from .hs_metric import shape_parameters, shearings, verify_vertex_relations
from .ideal_polyhedron import (PolyhedronError, angle_jacobian_rank, deform_toward_planes, dihedral_angles,
                               generate_two_circle, verify_admissible)
from .minkowski import chart_field, killing_generators, pogorelov, symmetrized_gradient_norm
from .reports import combinatorial_graph
from .serialize import graph_from_json, polyhedron_from_json


def corpus_json(name: str):
    return json.loads((resources.files("hs_inscribe") / "corpus" / name).read_text())


def corpus_manifest() -> list:
    return corpus_json("index.json")["entries"]


def corpus_polyhedra() -> list:
    out = []
    for entry in corpus_manifest():
        if entry["command"] == "verify" and entry["exit"] == 0:
            out.append((entry["file"], polyhedron_from_json(corpus_json(entry["file"]))))
    return out


def _timed(fn):
    def wrapper(*a, **k):
        t0 = time.perf_counter()
        out = fn(*a, **k)
        out["seconds"] = time.perf_counter() - t0
        return out
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------

@_timed
def c1_apex_sums(qs=range(3, 9), t: float = 2.0) -> dict:
    """Apex sum -2 pi and zero elsewhere for the (1, q) pyramids."""
    worst_apex = worst_other = 0.0
    for q in qs:
        poly = generate_two_circle(1, q, t)
        g = dihedral_angles(poly)
        apex = g.apexes()[0]
        for v in range(poly.n):
            s = g.vertex_weight(v)
            if v == apex:
                worst_apex = max(worst_apex, abs(s + 2 * math.pi))
            else:
                worst_other = max(worst_other, abs(s))
    return {"pass": worst_apex < 1e-9 and worst_other < 1e-9,
            "max_apex_residual": worst_apex, "max_other_residual": worst_other}


def random_two_circle(rng: np.random.Generator, pmax: int = 6):
    """Two-circle polyhedron with random sizes, height and phases; redraws degenerate ones."""
    while True:
        p, q = (int(x) for x in rng.integers(1, pmax + 1, size=2))
        if p + q < 4:
            continue
        t = float(rng.uniform(1.2, 3.0))
        pp = sorted(rng.uniform(0, 2 * math.pi, size=p)) if p > 1 else None
        pm = sorted(rng.uniform(0, 2 * math.pi, size=q)) if q > 1 else None
        try:
            poly = generate_two_circle(p, q, t, pp, pm)
            if rng.random() < 0.3:
                poly = deform_toward_planes(poly, float(rng.uniform(1.05, t)))
        except PolyhedronError:
            continue
        return poly


@_timed
def c2_blue_sum(count: int = 200, seed: int = 0) -> dict:
    """Blue sums: -2 pi iff a 1-cycle exists, else below -2 pi - 1e-6 (literal) /
    strictly inside (-2 pi, 0) (as the angle range forces)."""
    rng = np.random.default_rng(seed)
    literal_bad = corrected_bad = 0
    sample = []
    for _ in range(count):
        poly = random_two_circle(rng)
        b = dihedral_angles(poly).blue_sum()
        one = poly.p == 1 or poly.q == 1
        if one:
            ok_lit = ok_cor = abs(b + 2 * math.pi) <= 1e-8
        else:
            ok_lit = b < -2 * math.pi - 1e-6
            ok_cor = -2 * math.pi + 1e-6 < b < 0
        literal_bad += not ok_lit
        corrected_bad += not ok_cor
        if len(sample) < 5 and not one:
            sample.append({"p": poly.p, "q": poly.q, "blue_sum_over_pi": b / math.pi})
    return {"pass": literal_bad == 0, "literal_failures": literal_bad,
            "corrected_pass": corrected_bad == 0, "corrected_failures": corrected_bad,
            "count": count, "examples": sample}


@_timed
def c3_checker_vs_lp(nmax: int = 8, random_count: int = 500, seed: int = 0) -> dict:
    """check_C2 agrees with lp_feasible on the enumerated and random colored graphs."""
    dis = []
    total = feasible = 0
    graphs = list(colored_corpus(nmax))
    graphs += random_instances(np.random.default_rng(seed), random_count)
    for g in graphs:
        a = adm.check_C2(g).ok
        r = adm.lp_feasible(g)
        total += 1
        feasible += a
        ok_cert = r.feasible or adm.verify_certificate(g, r.certificate)
        if a != r.feasible or not ok_cert:
            dis.append({"n": g.n, "edges": sorted(g.edges), "cover": g.cover})
    return {"pass": not dis, "graphs": total, "feasible": feasible, "disagreements": len(dis),
            "first_disagreement": dis[0] if dis else None}


def random_belt_input(rng: np.random.Generator):
    p = int(rng.integers(2, 7))
    q = int(rng.integers(p, 8))
    omega = Fraction(int(rng.integers(1, 20)), 20)
    theta = {}
    for offset, k in ((0, p), (p, q)):
        if k == 2:
            theta[(offset, offset + 1)] = omega
            continue
        t = Fraction(int(rng.integers(0, 4)), 4) if k > 3 else Fraction(0)
        part = adm.sample_positive_part(k, t, seed=int(rng.integers(1 << 30)))
        for (u, v), x in part.weights.items():
            theta[adm.edge_key(u + offset, v + offset)] = x * omega
    cover = (list(range(p)), list(range(p, p + q)))
    g = adm.ColoredGraph.from_cover(p + q, theta, cover)
    vw = {v: sum((x for e, x in theta.items() if v in e), Fraction(0)) for v in range(p + q)}
    lo = min(vw[0], vw[p])
    s = -lo * Fraction(int(rng.integers(0, 9)), 8)
    sigma = int(rng.choice([1, -1]))
    return g, theta, s, sigma


@_timed
def c4_synthesis(count: int = 1000, seed: int = 0) -> dict:
    """greedy_belt and synthesize_by_cycles outputs pass the exact W1/W2 check."""
    rng = np.random.default_rng(seed)
    belt_bad = cyc_bad = belt_n = cyc_n = 0
    pool = [g for g in random_instances(rng, count) if adm.check_C2(g).ok]
    for k in range(count):
        if k % 2 == 0:
            g, theta, s, sigma = random_belt_input(rng)
            out = adm.greedy_belt(g, theta, s, sigma)
            belt_n += 1
            belt_bad += not adm.verify_W(out)["ok"]
        else:
            g = pool[(k // 2) % len(pool)]
            cyc_n += 1
            cyc_bad += not adm.verify_W(adm.synthesize_by_cycles(g))["ok"]
    return {"pass": belt_bad == 0 and cyc_bad == 0, "greedy_belt": belt_n, "greedy_belt_failures": belt_bad,
            "cycles": cyc_n, "cycles_failures": cyc_bad}


@_timed
def c5_forward(polys=None) -> dict:
    """Angles of every corpus polyhedron are admissible and its graph passes C2."""
    polys = corpus_polyhedra() if polys is None else polys
    failures = []
    for name, poly in polys:
        rep = verify_admissible(dihedral_angles(poly))
        ok = all(rep[k]["pass"] for k in ("C1", "A1", "A2", "A3")) and adm.check_C2(combinatorial_graph(poly)).ok
        if not ok:
            failures.append(name)
    return {"pass": not failures, "polyhedra": len(polys), "failures": failures}


@_timed
def c6_shape_identities(polys=None) -> dict:
    polys = corpus_polyhedra() if polys is None else polys
    w1 = w2 = ws = 0.0
    for _, poly in polys:
        sp = shape_parameters(poly)
        rel = verify_vertex_relations(sp)
        w1 = max(w1, rel["max_product_residual"])
        w2 = max(w2, rel["max_closure_residual"])
        ws = max(ws, shearings(sp)["max_vertex_sum"])
    return {"pass": max(w1, w2, ws) < 1e-8, "max_product_residual": w1,
            "max_closure_residual": w2, "max_shearing_sum": ws, "polyhedra": len(polys)}


@_timed
def c7_rank(polys=None) -> dict:
    """Jacobian of the angle map has rank 2n - 6."""
    polys = corpus_polyhedra() if polys is None else polys
    rows = []
    for name, poly in polys:
        if 4 <= poly.n <= 10:
            r = angle_jacobian_rank(poly)
            rows.append({"file": name, "n": poly.n, "rank": r, "expected": 2 * poly.n - 6})
    ok = len(rows) >= 10 and all(r["rank"] == r["expected"] for r in rows)
    return {"pass": ok, "checked": len(rows), "rows": rows}


@_timed
def c8_pogorelov(samples: int = 100, seed: int = 0) -> dict:
    """Images of the six Killing fields are Euclidean Killing fields."""
    rng = np.random.default_rng(seed)
    gens = killing_generators()
    worst = 0.0
    got = 0
    while got < samples:
        y = rng.uniform(-2.5, 2.5, size=3)
        m = y[0] ** 2 + y[1] ** 2 - y[2] ** 2
        if abs(m) < 0.2 * (y @ y) or abs(m + 1) < 0.2:
            continue   # stay away from the light cone and the quadric
        got += 1
        for a in gens:
            f = lambda z, a=a: pogorelov(z, chart_field(a, z))
            worst = max(worst, symmetrized_gradient_norm(f, y))
    return {"pass": worst < 1e-6, "max_symmetrized_gradient": worst, "samples": samples}


@_timed
def c9_horocycles(count: int = 1000, seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    worst_ell = 0.0
    worst_id = worst_def = 0.0
    deform_ok = deform_merge = 0
    for _ in range(count):
        poly = hc.random_polygon(rng, int(rng.integers(2, 9)))
        worst_ell = max(worst_ell, hc.cone_angle(poly))
        worst_id = max(worst_id, max(hc.angle_identity_residuals(poly)))
        for k in (0.5, 0.9, 1.1):
            try:
                _, r = hc.deform_polygon(poly, k)
                worst_def = max(worst_def, r)
                deform_ok += 1
            except hc.VerticesMerge:
                deform_merge += 1
    ok = worst_ell < 2 * math.pi and worst_id < 1e-9 and worst_def < 1e-9
    return {"pass": ok, "polygons": count, "max_cone_angle_over_pi": worst_ell / math.pi,
            "max_identity_residual": worst_id, "max_deform_residual": worst_def,
            "deformations": deform_ok, "deformations_merged": deform_merge}


@_timed
def c10_negative_control() -> dict:
    obj = corpus_json("nested_squares_reconstruction.json")
    d = graph_from_json(obj)
    g = adm.ColoredGraph.from_cover(d["n"], d["edges"], d["cycles"])
    c2 = adm.check_C2(g)
    lp = adm.lp_feasible(g)
    cert = adm.verify_certificate(g, lp.certificate) if not lp.feasible else False
    return {"pass": (not c2.ok) and (not lp.feasible) and cert,
            "C2": c2.ok, "LP": lp.feasible, "certificate_verified": cert,
            "failing_edges": [list(e) for e in c2.failing_edges], "caveat": d["note"]}


CRITERIA = {
    1: ("apex vertex sum", c1_apex_sums),
    2: ("blue-sum dichotomy", c2_blue_sum),
    3: ("checker agrees with LP", c3_checker_vs_lp),
    4: ("synthesis validity", c4_synthesis),
    5: ("forward map consistency", c5_forward),
    6: ("shape-parameter identities", c6_shape_identities),
    7: ("rigidity rank", c7_rank),
    8: ("Pogorelov property", c8_pogorelov),
    9: ("horocyclic geometry", c9_horocycles),
    10: ("negative control", c10_negative_control),
}

# wall-clock budgets in seconds at full sample size
BUDGET = {1: 1, 2: 30, 3: 600, 4: 60, 5: 60, 6: 60, 7: 60, 8: 10, 9: 30, 10: 60}
