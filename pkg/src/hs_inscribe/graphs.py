"""Enumeration and random generation of polyhedral graphs.

Every 3-connected planar graph on n vertices is a spanning subgraph of a
triangulation, and adding edges preserves 3-connectivity, so all of them are
reached from the triangulations by deleting one edge at a time while staying
3-connected.  Triangulations are connected under edge flips.
"""

from __future__ import annotations

from collections import deque

import networkx as nx
import numpy as np

from .admissible import ColoredGraph, iter_two_cycle_covers, is_polyhedral
from .colors import edge_key


def _faces(g: nx.Graph) -> list:
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise ValueError("graph is not planar")
    seen = set()
    faces = []
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        f = emb.traverse_face(u, v, mark_half_edges=seen)
        faces.append(f)
    return faces


class _IsoSet:
    """Graphs up to isomorphism, bucketed by Weisfeiler-Lehman hash."""

    def __init__(self):
        self.buckets = {}
        self.items = []

    def add(self, g: nx.Graph) -> bool:
        h = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
        bucket = self.buckets.setdefault(h, [])
        if any(nx.is_isomorphic(g, o) for o in bucket):
            return False
        bucket.append(g)
        self.items.append(g)
        return True


def _seed_triangulation(n: int) -> nx.Graph:
    if n == 4:
        return nx.complete_graph(4)
    g = nx.cycle_graph(n - 2)
    for v in range(n - 2):
        g.add_edge(n - 2, v)
        g.add_edge(n - 1, v)
    return g


def triangulations(n: int) -> list:
    """All triangulations of the sphere with n >= 4 vertices, up to isomorphism."""
    found = _IsoSet()
    start = _seed_triangulation(n)
    found.add(start)
    queue = deque([start])
    while queue:
        g = queue.popleft()
        faces = _faces(g)
        third = {}
        for f in faces:
            for i in range(3):
                a, b, c = f[i], f[(i + 1) % 3], f[(i + 2) % 3]
                third.setdefault(edge_key(a, b), []).append(c)
        for (u, v), (x, y) in ((e, t) for e, t in third.items() if len(t) == 2):
            if g.has_edge(x, y) or g.degree(u) <= 3 or g.degree(v) <= 3:
                continue
            h = g.copy()
            h.remove_edge(u, v)
            h.add_edge(x, y)
            if found.add(h):
                queue.append(h)
    return found.items


def polyhedral_graphs(n: int) -> list:
    """All 3-connected planar graphs on n vertices, up to isomorphism."""
    found = _IsoSet()
    queue = deque()
    for t in triangulations(n):
        if found.add(t):
            queue.append(t)
    while queue:
        g = queue.popleft()
        for u, v in list(g.edges()):
            if g.degree(u) <= 3 or g.degree(v) <= 3:
                continue
            h = g.copy()
            h.remove_edge(u, v)
            if nx.node_connectivity(h) >= 3 and found.add(h):
                queue.append(h)
    return found.items


def colored_corpus(nmax: int = 8):
    """Every (graph, two-cycle cover) pair for polyhedral graphs with 4 <= n <= nmax."""
    for n in range(4, nmax + 1):
        for g in polyhedral_graphs(n):
            g = nx.convert_node_labels_to_integers(g)
            edges = sorted(edge_key(u, v) for u, v in g.edges())
            for cover in iter_two_cycle_covers(n, edges):
                yield ColoredGraph.from_cover(n, edges, cover)


# ---------------------------------------------------------------------------
# random instances

def _noncrossing_diagonals(rng: np.random.Generator, cyc: list, keep: float) -> list:
    out = []

    def split(poly):
        if len(poly) < 4:
            return
        r = int(rng.integers(len(poly)))
        poly = poly[r:] + poly[:r]
        j = int(rng.integers(2, len(poly) - 1))
        if rng.random() < keep:
            out.append(edge_key(poly[0], poly[j]))
        split(poly[: j + 1])
        split(poly[j:] + poly[:1])

    split(list(cyc))
    return out


def nested_instance(rng: np.random.Generator, p: int, q: int, keep_diag: float = 0.5,
                    drop_blue: float = 0.0) -> ColoredGraph | None:
    """A cycle of p vertices nested inside a cycle of q vertices, joined through the annulus.

    The annulus is triangulated by a random interleaving of steps along the two
    cycles; diagonals are added inside the inner and outside the outer cycle.
    Some annulus edges are then dropped at random.  Returns None unless the
    result is 3-connected.
    """
    inner = list(range(p))
    outer = list(range(p, p + q))
    edges = set()
    for cyc in (inner, outer):
        if len(cyc) >= 2:
            edges.update(edge_key(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]) if a != b)
    moves = ["i"] * p + ["o"] * q
    rng.shuffle(moves)
    i = j = 0
    blue = {edge_key(inner[0], outer[0])}
    for m in moves:
        if m == "i":
            i += 1
        else:
            j += 1
        blue.add(edge_key(inner[i % p], outer[j % q]))
    blue = {e for e in blue if rng.random() >= drop_blue}
    edges |= blue
    edges.update(_noncrossing_diagonals(rng, inner, keep_diag))
    edges.update(_noncrossing_diagonals(rng, outer, keep_diag))
    n = p + q
    if not is_polyhedral(n, edges):
        return None
    perm = rng.permutation(n)
    edges = {edge_key(int(perm[u]), int(perm[v])) for u, v in edges}
    cover = ([int(perm[v]) for v in inner], [int(perm[v]) for v in outer])
    return ColoredGraph.from_cover(n, edges, cover)


def random_instances(rng: np.random.Generator, count: int, nmin: int = 5, nmax: int = 14) -> list:
    out = []
    while len(out) < count:
        n = int(rng.integers(nmin, nmax + 1))
        p = int(rng.integers(1, n // 2 + 1))
        g = nested_instance(rng, p, n - p, keep_diag=float(rng.uniform(0.2, 0.9)),
                            drop_blue=float(rng.choice([0.0, 0.15, 0.3])))
        if g is not None:
            out.append(g)
    return out
