import itertools
from fractions import Fraction as F

import networkx as nx
import numpy as np
import pytest

from hs_inscribe import admissible as adm
from hs_inscribe.admissible import ColoredGraph, WeightedGraph
from hs_inscribe.colors import Color, edge_key
from hs_inscribe.graphs import colored_corpus, random_instances

TOP = [(0, 1), (1, 2), (2, 3), (0, 3)]
BOTTOM = [(4, 5), (5, 6), (6, 7), (4, 7)]
RUNGS = [(0, 4), (1, 5), (2, 6), (3, 7)]
CUBE = TOP + BOTTOM + RUNGS
CUBE_COVER = ([0, 1, 2, 3], [4, 5, 6, 7])
WHEEL = [(1, 2), (2, 3), (3, 4), (1, 4)] + [(0, v) for v in range(1, 5)]
NESTED = CUBE + [(0, 5), (2, 7)]


@pytest.fixture
def cube():
    return ColoredGraph.from_cover(8, CUBE, CUBE_COVER)


@pytest.fixture
def wheel():
    return ColoredGraph.from_cover(5, WHEEL, ([0], [1, 2, 3, 4]))


# --- covers -----------------------------------------------------------------

def test_cover_cube():
    cov = adm.find_two_cycle_cover(8, CUBE)
    assert sorted(map(sorted, cov)) == [[0, 1, 2, 3], [4, 5, 6, 7]]


def test_cover_wheel():
    cov = adm.find_two_cycle_cover(5, WHEEL)
    assert sorted(map(len, cov)) == [1, 4] and [0] in map(list, cov)


def test_cover_rejects_non_polyhedral():
    assert adm.find_two_cycle_cover(4, TOP) is None
    assert not adm.is_polyhedral(4, TOP)


def test_cover_respects_colors():
    colors = {e: (Color.BLUE if e in RUNGS else Color.RED) for e in CUBE}
    covers = list(adm.iter_two_cycle_covers(8, CUBE, colors))
    assert len(covers) == 1


def test_cover_search_bound():
    with pytest.raises(adm.TooLarge):
        list(adm.iter_two_cycle_covers(15, [(i, (i + 1) % 15) for i in range(15)]))


def test_invalid_cover():
    with pytest.raises(adm.InvalidCover):
        ColoredGraph.from_cover(8, CUBE, ([0, 1, 2], [4, 5, 6, 7]))
    with pytest.raises(adm.InvalidCover):
        ColoredGraph.from_cover(8, CUBE, ([0, 2, 1, 3], [4, 5, 6, 7]))


# --- lift and C2 --------------------------------------------------------------

def test_lift_single_red_edge():
    g = ColoredGraph.from_cover(4, [(0, 1), (2, 3), (0, 2)], ([0, 1], [2, 3]))
    lf = adm.lift(g, [(0, 1)])
    assert sorted(lf.arcs) == sorted([(adm.minus(0), adm.plus(1), (0, 1)), (adm.minus(1), adm.plus(0), (0, 1))])


def test_lift_triangle_rbb_has_no_cycle():
    # an odd closed walk cannot alternate, and the lift has no directed cycle
    g = ColoredGraph.from_cover(3, [(0, 1), (0, 2), (1, 2)], ([0, 1], [2]))
    dg = nx.DiGraph([(t, h) for t, h, _ in adm.lift(g).arcs])
    assert list(nx.simple_cycles(dg)) == []
    assert not adm.is_alternating(g, [0, 1, 2])


def test_lift_cycles_project_to_alternating_walks(cube):
    dg = nx.DiGraph([(t, h) for t, h, _ in adm.lift(cube).arcs])
    cycles = list(nx.simple_cycles(dg, length_bound=8))
    assert cycles
    for c in cycles:
        assert adm.is_alternating(cube, adm.project(c))


def test_wheel_apex_dominates(wheel):
    res = adm.check_C2(wheel)
    assert res.ok and res.reason == "apex dominates"
    assert len(res.witnesses) == 4


def test_cube_passes_with_eight_cycle(cube):
    res = adm.check_C2(cube)
    assert res.ok
    for w in res.witnesses:
        assert adm.is_alternating(cube, w)
    assert all(len(w) == 4 for w in res.witnesses) or any(len(w) == 8 for w in res.witnesses)
    hand = [0, 1, 5, 6, 2, 3, 7, 4]      # u1u2, u2v2, v2v3, v3u3, u3u4, u4v4, v4v1, v1u1
    assert adm.is_alternating(cube, hand)


def test_red_edge_without_blue_fails():
    edges = TOP + BOTTOM + [(1, 5), (3, 7), (0, 2)]
    g = ColoredGraph.from_cover(8, edges, CUBE_COVER)
    res = adm.check_C2(g)
    assert not res.ok and (0, 2) in res.failing_edges


def test_nested_squares_fails():
    g = ColoredGraph.from_cover(8, NESTED, CUBE_COVER)
    res = adm.check_C2(g)
    assert not res.ok
    assert res.failing_edges == [(0, 5), (2, 7)]


def test_witnesses_are_alternating_on_corpus():
    for g in itertools.islice(colored_corpus(7), 0, None, 3):
        res = adm.check_C2(g)
        for w in res.witnesses:
            if res.reason != "apex dominates":
                assert adm.is_alternating(g, w)


# --- synthesis ----------------------------------------------------------------

def test_cube_synthesis(cube):
    w = adm.synthesize_by_cycles(cube)
    assert {w.w[e] for e in cube.red()} == {1}
    assert {w.w[e] for e in cube.blue()} == {-2}
    assert adm.verify_W(w)["ok"] and adm.verify_W(w)["exact"]


def test_wheel_synthesis(wheel):
    w = adm.normalize(adm.synthesize_by_cycles(wheel))
    assert {w.w[e] for e in wheel.red()} == {F(1, 4)}
    assert {w.w[e] for e in wheel.blue()} == {F(-1, 2)}
    assert w.vertex_sum(0) == -2


def test_normalize_cube(cube):
    w = adm.normalize(adm.synthesize_by_cycles(cube), F(1, 2))
    assert {w.w[e] for e in cube.red()} == {F(1, 8)}
    assert {w.w[e] for e in cube.blue()} == {F(-1, 4)}
    assert w.blue_sum() == -1
    assert all(x >= F(-1, 2) for x in w.w.values())
    assert all(w.vertex_sum(v) == 0 for v in range(8))


def test_normalize_apex_conflict(wheel):
    with pytest.raises(adm.ApexConflict):
        adm.normalize(adm.synthesize_by_cycles(wheel), F(1, 2))


def test_synthesis_refuses_infeasible():
    with pytest.raises(adm.NotAdmissible):
        adm.synthesize_by_cycles(ColoredGraph.from_cover(8, NESTED, CUBE_COVER))


def test_verify_w_catches_problems(cube):
    w = dict(adm.synthesize_by_cycles(cube).w)
    w[(0, 1)] = F(-1)
    rep = adm.verify_W(WeightedGraph(cube, w))
    assert not rep["ok"] and any("sign" in p for p in rep["problems"])
    w[(0, 1)] = F(2)
    assert any("vertex" in p for p in adm.verify_W(WeightedGraph(cube, w))["problems"])


def belt(p, q, theta_p, theta_q):
    cover = (list(range(p)), list(range(p, p + q)))
    theta = {**theta_p, **theta_q}
    return ColoredGraph.from_cover(p + q, theta, cover), theta


def test_greedy_belt_hand_example():
    g, theta = belt(2, 2, {(0, 1): F(1, 2)}, {(2, 3): F(1, 2)})
    out = adm.greedy_belt(g, theta, F(-1, 4), 1)
    blue = {e: x for e, x in out.w.items() if out.graph.color[e] is Color.BLUE}
    assert blue == {(0, 2): F(-1, 4), (1, 2): F(-1, 4), (1, 3): F(-1, 4), (0, 3): F(-1, 4)}
    assert adm.verify_W(out)["ok"]


def test_greedy_belt_s_zero_flags_edge():
    g, theta = belt(2, 2, {(0, 1): F(1, 2)}, {(2, 3): F(1, 2)})
    out = adm.greedy_belt(g, theta, 0, 1)
    assert (0, 2) in out.zero_edges and out.w[(0, 2)] == 0
    assert adm.verify_W(out)["ok"]
    assert sum(1 for x in out.w.values() if x != 0) < len(out.w)


def test_greedy_belt_blue_sum_and_inputs():
    rng = np.random.default_rng(0)
    from hs_inscribe.acceptance import random_belt_input
    for _ in range(100):
        g, theta, s, sigma = random_belt_input(rng)
        out = adm.greedy_belt(g, theta, s, sigma)
        assert adm.verify_W(out)["ok"]
        # the blue sum is minus twice the red weight of either component
        red_p = sum(x for e, x in theta.items() if e[0] in g.cover[0])
        assert out.blue_sum() == -2 * red_p


def test_greedy_belt_rejects_bad_input():
    g, theta = belt(2, 2, {(0, 1): F(1, 2)}, {(2, 3): F(1, 2)})
    with pytest.raises(adm.InfeasibleInput):
        adm.greedy_belt(g, theta, F(1, 10), 1)
    with pytest.raises(adm.InfeasibleInput):
        adm.greedy_belt(g, theta, F(-1, 4), 0)
    g2, theta2 = belt(2, 2, {(0, 1): F(1, 2)}, {(2, 3): F(1, 3)})
    with pytest.raises(adm.InfeasibleInput):
        adm.greedy_belt(g2, theta2, F(-1, 4), 1)


def test_greedy_belt_lipschitz_in_s():
    part_p = adm.sample_positive_part(5, F(1, 2), seed=3)
    part_q = adm.sample_positive_part(6, F(1, 4), seed=4)
    g, theta = belt(5, 6, part_p.weights, {edge_key(u + 5, v + 5): x for (u, v), x in part_q.weights.items()})
    lo = -min(sum(x for e, x in theta.items() if 0 in e), sum(x for e, x in theta.items() if 5 in e))
    for sigma in (1, -1):
        prev_s, prev = None, None
        for k in range(0, 41):
            s = lo * F(k, 40)
            w = adm.greedy_belt(g, theta, s, sigma).w
            if prev is not None:
                ds = abs(s - prev_s)
                for e in set(w) | set(prev):
                    assert abs(w.get(e, 0) - prev.get(e, 0)) <= 2 * ds
            prev_s, prev = s, w


# --- LP -----------------------------------------------------------------------

def test_lp_cube(cube):
    r = adm.lp_feasible(cube)
    assert r.feasible and r.margin > 0 and adm.verify_W(r.witness)["ok"]


def test_lp_wheel(wheel):
    r = adm.lp_feasible(wheel)
    assert r.feasible and r.witness.vertex_sum(0) == -2


def test_lp_nested_certificate():
    g = ColoredGraph.from_cover(8, NESTED, CUBE_COVER)
    r = adm.lp_feasible(g)
    assert not r.feasible
    assert adm.verify_certificate(g, r.certificate)
    y = r.certificate["y"][:8]
    assert {abs(v) for v in y} == {F(1, 4)}
    # tampering breaks the certificate
    bad = {"kind": r.certificate["kind"], "y": [-v for v in r.certificate["y"]]}
    assert not adm.verify_certificate(g, bad)


def test_nested_potentials():
    """The vertex potentials separate red from blue edge sums.

    For a dual certificate y_u + y_v >= 0 on red and <= 0 on blue edges (the
    signs flip for a Farkas ray); summing the weights against y then forces a
    contradiction.
    """
    g = ColoredGraph.from_cover(8, NESTED, CUBE_COVER)
    cert = adm.lp_feasible(g).certificate
    y = cert["y"]
    flip = 1 if cert["kind"] == "dual" else -1
    for e in g.edges:
        s = flip * (y[e[0]] + y[e[1]])
        assert (s >= 0) if g.color[e] is Color.RED else (s <= 0)


def test_checker_agrees_with_lp_small():
    for g in itertools.chain(colored_corpus(6), random_instances(np.random.default_rng(9), 40)):
        assert adm.check_C2(g).ok == adm.lp_feasible(g).feasible


# --- minimal cycles and peeling -------------------------------------------------

def test_minimal_cycles_cube(cube):
    cycles = adm.minimal_alternating_cycles(cube)
    assert cycles
    for w in cycles:
        vec = adm.cycle_vector(w, cube)
        assert all(sum(c for e, c in vec.items() if v in e) == 0 for v in range(8))
    assert any(len(w) == 8 for w in cycles)


def test_minimal_cycles_match_lp():
    for g in itertools.islice(colored_corpus(7), 0, None, 2):
        if g.apexes():
            continue
        covered = set()
        for w in adm.minimal_alternating_cycles(g):
            covered.update(adm.walk_edges(w))
        assert (covered == set(g.edges)) == adm.lp_feasible(g).feasible


def test_minimal_cycles_too_large():
    g = random_instances(np.random.default_rng(0), 1, nmin=13, nmax=13)[0]
    with pytest.raises(adm.TooLarge):
        adm.minimal_alternating_cycles(g)


def test_peel_terminates(cube):
    for g in [cube] + [h for h in random_instances(np.random.default_rng(2), 30) if adm.check_C2(h).ok]:
        if g.apexes():
            continue
        w = adm.lp_feasible(g).witness
        steps = adm.peel(w)
        assert len(steps) <= len(g.edges)
        total = {e: F(0) for e in g.edges}
        for alpha, walk in steps:
            assert alpha > 0 and adm.is_alternating(g, walk)
            for e, c in adm.cycle_vector(walk, g).items():
                total[e] += alpha * c
        assert total == w.w


# --- positive part sampler --------------------------------------------------------

def test_positive_part_t_zero():
    pp = adm.sample_positive_part(6, 0, seed=1)
    assert not pp.diagonals() and len(pp.weights) == 6


@pytest.mark.parametrize("seed", range(10))
def test_positive_part_total_and_outerplanar(seed):
    q = 4 + seed % 5
    pp = adm.sample_positive_part(q, F(seed % 4, 4), seed=seed)
    assert sum(pp.weights.values()) == 1
    assert all(x > 0 for x in pp.weights.values())
    assert adm.is_outerplanar_with_boundary(pp)


def test_outerplanar_detects_crossing():
    pp = adm.PositivePart(6, {(0, 3): F(1, 2), (1, 4): F(1, 2)})
    assert not adm.is_outerplanar_with_boundary(pp)
