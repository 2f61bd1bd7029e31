import networkx as nx
import numpy as np
import pytest

from hs_inscribe.admissible import check_C2, is_polyhedral
from hs_inscribe.graphs import colored_corpus, polyhedral_graphs, random_instances, triangulations

# OEIS A000109 and A000944
TRIANGULATIONS = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14}
POLYHEDRAL = {4: 1, 5: 2, 6: 7, 7: 34}


@pytest.mark.parametrize("n,count", TRIANGULATIONS.items())
def test_triangulation_counts(n, count):
    ts = triangulations(n)
    assert len(ts) == count
    assert all(t.number_of_edges() == 3 * n - 6 for t in ts)


@pytest.mark.parametrize("n,count", POLYHEDRAL.items())
def test_polyhedral_counts(n, count):
    gs = polyhedral_graphs(n)
    assert len(gs) == count
    assert all(is_polyhedral(n, g.edges()) for g in gs)
    for i, a in enumerate(gs):
        for b in gs[i + 1:]:
            assert not nx.is_isomorphic(a, b)


@pytest.mark.slow
def test_polyhedral_count_eight():
    assert len(polyhedral_graphs(8)) == 257


def test_colored_corpus_small():
    gs = list(colored_corpus(6))
    assert gs
    assert all(g.n <= 6 and is_polyhedral(g.n, g.edges) for g in gs)
    # the wheel on 5 vertices appears with its apex cover
    assert any(g.n == 5 and g.apexes() for g in gs)


def test_random_instances_valid():
    rng = np.random.default_rng(0)
    gs = random_instances(rng, 50)
    assert len(gs) == 50
    assert all(5 <= g.n <= 14 and is_polyhedral(g.n, g.edges) for g in gs)
    ok = sum(check_C2(g).ok for g in gs)
    assert 0 < ok < 50            # both outcomes are represented


def test_random_instances_reproducible():
    a = random_instances(np.random.default_rng(5), 10)
    b = random_instances(np.random.default_rng(5), 10)
    assert [(g.edges, g.cover) for g in a] == [(g.edges, g.cover) for g in b]
