import math
from fractions import Fraction as F

import pytest

from hs_inscribe.ideal_polyhedron import generate_two_circle
from hs_inscribe.minkowski import NotOnQuadric
from hs_inscribe.serialize import (MalformedInput, graph_from_json, polygon_from_json, polyhedron_from_json,
                                   polyhedron_to_json, weight_from_json, weight_to_json)


def test_weight_round_trip():
    for x in (F(1, 3), F(-2), F(7, 8)):
        assert weight_from_json(weight_to_json(x)) == x
    assert weight_from_json({"num": 1, "den": 2, "pi": False}) == pytest.approx(0.5 / math.pi)
    with pytest.raises(MalformedInput):
        weight_from_json({"num": 1, "den": 0})


def test_graph_from_json():
    d = graph_from_json({"n": 3, "edges": [{"u": 0, "v": 1, "color": "r"}, {"u": 2, "v": 1, "color": "b"}]})
    assert d["edges"] == [(0, 1), (1, 2)]
    assert d["cycles"] is None and d["weights"] is None


@pytest.mark.parametrize("obj", [
    [],
    {"n": 0, "edges": []},
    {"n": 3, "edges": [{"u": 0, "v": 3}]},
    {"n": 3, "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 0}]},
    {"n": 3, "edges": [{"u": 0, "v": 1, "color": "g"}]},
    {"n": 3, "edges": [{"u": 0, "v": 1, "color": "r"}, {"u": 1, "v": 2}]},
    {"n": 3, "edges": [{"u": 0, "v": 1}], "cycles": [[0, 1]]},
])
def test_graph_malformed(obj):
    with pytest.raises(MalformedInput):
        graph_from_json(obj)


def test_polyhedron_round_trip():
    poly = generate_two_circle(3, 4, 2.0)
    back = polyhedron_from_json(polyhedron_to_json(poly))
    assert back.hull.faces == poly.hull.faces
    assert back.labels == poly.labels


def test_polyhedron_three_coordinates_and_scaling():
    poly = generate_two_circle(1, 4, 2.0)
    obj = polyhedron_to_json(poly)
    obj["vertices"] = [[2 * c for c in x] for x in obj["vertices"]]   # homogeneous rescale
    assert polyhedron_from_json(obj).n == 5
    obj["vertices"] = [x[:3] for x in polyhedron_to_json(poly)["vertices"]]
    assert polyhedron_from_json(obj).n == 5


def test_polyhedron_off_quadric():
    obj = polyhedron_to_json(generate_two_circle(2, 3, 2.0))
    obj["vertices"][0][0] += 1e-3
    with pytest.raises(NotOnQuadric):
        polyhedron_from_json(obj)


def test_polygon_malformed():
    with pytest.raises(MalformedInput):
        polygon_from_json({"bases": [0.0], "sizes": [1.0]})
    with pytest.raises(MalformedInput):
        polygon_from_json({"bases": [0.0, 1.0], "sizes": [1.0, -1.0]})
