import cmath
import math

import numpy as np
import pytest

from hs_inscribe import hs_metric
from hs_inscribe.colors import Color
from hs_inscribe.hs_metric import (CoincidentComplexPoints, angle_relation, cross_ratio, shape_parameters,
                                   shearings, verify_vertex_relations)
from hs_inscribe.ideal_polyhedron import IdealVertex, build, dihedral_angles, generate_two_circle
from hs_inscribe.acceptance import corpus_json
from hs_inscribe.serialize import polyhedron_from_json
from hs_inscribe.minkowski import boundary_to_complex, random_lorentz

INF = complex(math.inf, 0)


def test_cross_ratio_reference():
    assert cross_ratio(0, 1, INF, -1) == 2
    assert cross_ratio(2, 3, 5, 7) == pytest.approx((2 - 5) * (3 - 7) / ((3 - 5) * (2 - 7)))


def test_cross_ratio_coincident():
    with pytest.raises(CoincidentComplexPoints):
        cross_ratio(0, 1, 1, 2)
    with pytest.raises(CoincidentComplexPoints):
        cross_ratio(INF, 1, INF, 2)


def test_cross_ratio_mobius_invariant():
    rng = np.random.default_rng(0)
    for _ in range(50):
        zs = rng.normal(size=4) + 1j * rng.normal(size=4)
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        m = lambda z: (a * z + b) / (c * z + d)
        assert cross_ratio(*map(m, zs)) == pytest.approx(cross_ratio(*zs), rel=1e-9)


def test_cross_ratio_swap():
    z = (0.3 + 1j, -1, 2j, 1.5)
    assert cross_ratio(z[1], z[0], z[3], z[2]) == pytest.approx(cross_ratio(*z))


POLYS = [(1, 4, 2.0), (2, 3, 2.0), (3, 3, 2.0), (3, 4, 1.7), (4, 5, 2.5), (1, 6, 1.5)]


@pytest.mark.parametrize("p,q,t", POLYS)
def test_vertex_relations(p, q, t):
    rel = verify_vertex_relations(shape_parameters(generate_two_circle(p, q, t)))
    assert rel["pass"]
    assert rel["max_product_residual"] < 1e-8 and rel["max_closure_residual"] < 1e-8


@pytest.mark.parametrize("p,q,t", POLYS)
def test_shearings_sum_to_zero(p, q, t):
    sh = shearings(shape_parameters(generate_two_circle(p, q, t)))
    assert sh["max_vertex_sum"] < 1e-8


def test_symmetric_antiprism_shear_pattern(antiprism):
    # circle edges are unsheared; side edges alternate +c, -c around each circle
    sh = shearings(shape_parameters(antiprism))
    g = dihedral_angles(antiprism)
    red = [sh["sigma"][e] for e in g.weights if g.colors[e] is Color.RED]
    blue = sorted(sh["sigma"][e] for e in g.weights if g.colors[e] is Color.BLUE)
    assert max(map(abs, red)) < 1e-12
    c = blue[-1]
    assert c > 0.1
    assert blue == pytest.approx([-c] * 3 + [c] * 3, abs=1e-12)


def test_generic_instance_has_shear():
    rng = np.random.default_rng(2)
    poly = generate_two_circle(2, 3, 2.0, sorted(rng.uniform(0, 6, 2)), sorted(rng.uniform(0, 6, 3)))
    sh = shearings(shape_parameters(poly))
    assert max(abs(s) for s in sh["sigma"].values()) > 1e-3
    assert sh["max_vertex_sum"] < 1e-8


def test_star_is_cyclic_neighbour_order(antiprism):
    sp = shape_parameters(antiprism)
    for v, nbrs in sp.star.items():
        assert sorted(nbrs) == sorted(antiprism.hull.neighbors(v))


def test_triangles_cover_every_edge_twice(antiprism):
    sp = shape_parameters(antiprism)
    seen = {}
    for a, b, c in sp.triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            seen[(u, v)] = seen.get((u, v), 0) + 1
    assert all(seen.get((v, u)) == 1 for (u, v) in seen)


def test_arg_tau_matches_theta_on_red_interior_edges():
    # two-circle polyhedra have no edge between two single-sheet triangles;
    # the random-position corpus instances do
    for name in ("poly_random_11.json", "poly_random_12.json", "poly_random_13.json"):
        poly = polyhedron_from_json(corpus_json(name))
        ar = angle_relation(poly)
        assert ar["red_interior_count"] > 0
        assert ar["red_interior_max_defect"] < 1e-7


def test_offset_rule_on_other_edges():
    for p, q, t in [(1, 4, 2.0), (2, 3, 2.0), (3, 4, 2.0)]:
        ar = angle_relation(generate_two_circle(p, q, t))
        assert ar["offset_rule_max_defect"] < 1e-7


def test_tau_invariant_under_isometry():
    poly = generate_two_circle(3, 4, 2.0, [0.1, 2.0, 4.4], [0.5, 1.9, 3.3, 5.0])
    rng = np.random.default_rng(11)
    m = random_lorentz(rng, scale=0.05)
    verts = []
    for x in poly.points():
        y = m @ x
        y = y / y[3]
        verts.append(IdealVertex(1 if y[2] > 0 else -1, y[0], y[1]))
    moved = build(verts)
    assert moved.hull.faces == poly.hull.faces
    t0, t1 = shape_parameters(poly).tau, shape_parameters(moved).tau
    for e in t0:
        assert abs(t0[e] - t1[e]) < 1e-9 * max(1, abs(t0[e]))


def test_off_quadric_vertex(monkeypatch):
    """Both relations are identities in the vertex positions on the sphere.

    Moving a vertex off the quadric changes tau but leaves the residuals at
    rounding level; the load-time quadric check is what detects it.
    """
    poly = generate_two_circle(2, 3, 2.0)
    pts = poly.points().copy()
    pts[0, 0] += 1e-3

    class Perturbed(type(poly)):
        def points(self):
            return pts

    bad = Perturbed(poly.vertices, poly.hull, poly.p, poly.q, poly.labels)
    monkeypatch.setattr(hs_metric, "boundary_to_complex", lambda x: boundary_to_complex(x, tol=1e-1))
    sp, sp0 = shape_parameters(bad), shape_parameters(poly)
    assert max(abs(sp.tau[e] - sp0.tau[e]) for e in sp.tau) > 1e-5
    assert verify_vertex_relations(sp)["max_product_residual"] < 1e-12
    assert verify_vertex_relations(sp)["max_closure_residual"] < 1e-12


def test_relations_fail_for_wrong_star_order(antiprism):
    sp = shape_parameters(antiprism)
    v = 0
    sp.star[v] = sp.star[v][::-1]
    assert verify_vertex_relations(sp)["max_closure_residual"] > 1e-3 or \
        verify_vertex_relations(sp)["max_product_residual"] > 1e-3
