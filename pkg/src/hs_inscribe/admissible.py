"""Two-cycle covers, alternating cycles and angle weights on polyhedral graphs.

All weights are exact Fractions measured in units of pi, so the apex constraint
"vertex sum = -2 pi" is the rational -2.  Red edges join vertices of the same
cover cycle, blue edges join the two cycles.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from . import kernels
from .colors import Color, edge_key
from .lp import maximize

COVER_BOUND = 14          # exhaustive cover search limit
CYCLE_ENUM_BOUND = 12     # minimal alternating cycle enumeration limit
APEX_SUM = Fraction(-2)   # -2 pi


class InvalidCover(ValueError):
    pass


class TooLarge(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class InfeasibleInput(ValueError):
    pass


class ApexConflict(ValueError):
    pass


class NotPolyhedral(ValueError):
    pass


# ---------------------------------------------------------------------------
# graphs

@dataclass(frozen=True)
class ColoredGraph:
    n: int
    edges: frozenset
    color: dict = field(hash=False, compare=False)
    cover: tuple = ((), ())

    def __post_init__(self):
        edges = frozenset(edge_key(u, v) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "cover", tuple(tuple(c) for c in self.cover))
        _validate_cover(self)

    @classmethod
    def from_cover(cls, n: int, edges, cover) -> "ColoredGraph":
        side = _side_map(n, cover)
        color = {edge_key(u, v): Color.RED if side[u] == side[v] else Color.BLUE for u, v in edges}
        return cls(n, frozenset(color), color, cover)

    def red(self) -> list:
        return sorted(e for e in self.edges if self.color[e] is Color.RED)

    def blue(self) -> list:
        return sorted(e for e in self.edges if self.color[e] is Color.BLUE)

    def apexes(self) -> list[int]:
        return [c[0] for c in self.cover if len(c) == 1]

    def adjacency(self) -> dict:
        adj = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def _side_map(n: int, cover) -> dict:
    side = {}
    for k, cyc in enumerate(cover):
        for v in cyc:
            if v in side:
                raise InvalidCover(f"vertex {v} appears twice in the cover")
            side[v] = k
    if len(cover) != 2 or set(side) != set(range(n)) or any(len(c) == 0 for c in cover):
        raise InvalidCover("cover must split the vertices into two nonempty cycles")
    return side


def _validate_cover(g: ColoredGraph) -> None:
    side = _side_map(g.n, g.cover)
    for e in g.edges:
        u, v = e
        if u == v or not (0 <= u < g.n and 0 <= v < g.n):
            raise InvalidCover(f"bad edge {e}")
        want = Color.RED if side[u] == side[v] else Color.BLUE
        if g.color.get(e) is not want:
            raise InvalidCover(f"edge {e} colored {g.color.get(e)} but the cover requires {want}")
    for cyc in g.cover:
        if len(cyc) == 2 and edge_key(*cyc) not in g.edges:
            raise InvalidCover(f"2-cycle {cyc} needs its edge")
        if len(cyc) >= 3:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if edge_key(a, b) not in g.edges:
                    raise InvalidCover(f"cover cycle misses edge {(a, b)}")


def is_polyhedral(n: int, edges) -> bool:
    """3-connected and planar (Steinitz)."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    if n < 4 or not nx.check_planarity(g)[0]:
        return False
    return nx.node_connectivity(g) >= 3


# ---------------------------------------------------------------------------
# cover search

def _hamiltonian_cycle(vs: list, adj: dict) -> list | None:
    k = len(vs)
    if k == 1:
        return list(vs)
    if k == 2:
        return list(vs) if vs[1] in adj[vs[0]] else None
    allowed = set(vs)
    nb = {v: sorted(adj[v] & allowed) for v in vs}
    if any(len(nb[v]) < 2 for v in vs):
        return None
    start = vs[0]
    path = [start]
    used = {start}

    def extend() -> bool:
        if len(path) == k:
            return start in adj[path[-1]]
        for w in nb[path[-1]]:
            if w not in used:
                path.append(w)
                used.add(w)
                if extend():
                    return True
                path.pop()
                used.discard(w)
        return False

    return path if extend() else None


def _canonical_cycle(cyc: list) -> tuple:
    if len(cyc) <= 2:
        return tuple(sorted(cyc))
    i = cyc.index(min(cyc))
    c = cyc[i:] + cyc[:i]
    if c[-1] < c[1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def iter_two_cycle_covers(n: int, edges, colors: dict | None = None, bound: int = COVER_BOUND):
    """All two-cycle covers (one Hamiltonian cycle per side), vertex 0 on the first side."""
    if n > bound:
        raise TooLarge(f"cover search is exhaustive up to n = {bound}")
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if colors is not None:
        red = nx.Graph()
        red.add_nodes_from(range(n))
        red.add_edges_from(e for e, c in colors.items() if Color(c) is Color.RED)
        comps = list(nx.connected_components(red))
        if len(comps) != 2:
            return
        a = sorted(next(c for c in comps if 0 in c))
        b = sorted(next(c for c in comps if 0 not in c))
        ca, cb = _hamiltonian_cycle(a, adj), _hamiltonian_cycle(b, adj)
        if ca is not None and cb is not None:
            cover = (tuple(_canonical_cycle(ca)), tuple(_canonical_cycle(cb)))
            g = ColoredGraph.from_cover(n, edges, cover)
            if all(g.color[edge_key(*e)] is Color(c) for e, c in colors.items()):
                yield cover
        return
    rest = list(range(1, n))
    for r in range(0, n - 1):
        for extra in itertools.combinations(rest, r):
            a = [0, *extra]
            b = [v for v in rest if v not in extra]
            ca = _hamiltonian_cycle(a, adj)
            if ca is None:
                continue
            cb = _hamiltonian_cycle(b, adj)
            if cb is None:
                continue
            yield (tuple(_canonical_cycle(ca)), tuple(_canonical_cycle(cb)))


def cover_preference(cover) -> tuple:
    """Sort key: a 1-cycle first (the dominance test applies), then the most balanced split."""
    a, b = cover
    return (min(len(a), len(b)) != 1, abs(len(a) - len(b)))


def find_two_cycle_cover(n: int, edges, colors: dict | None = None, bound: int = COVER_BOUND,
                         require_polyhedral: bool = True):
    """Preferred two-cycle cover (see cover_preference), or None.

    Graphs that are not 3-connected and planar get None unless
    require_polyhedral is switched off.
    """
    if require_polyhedral and not is_polyhedral(n, edges):
        return None
    covers = list(iter_two_cycle_covers(n, edges, colors, bound))
    return min(covers, key=cover_preference) if covers else None


# ---------------------------------------------------------------------------
# directed lift and alternating cycles

def plus(v: int) -> int:
    return 2 * v


def minus(v: int) -> int:
    return 2 * v + 1


@dataclass
class DirectedLift:
    n: int                      # vertices of the base graph; the lift has 2n
    arcs: list                  # (tail, head, edge)

    def successors(self) -> dict:
        out = {i: [] for i in range(2 * self.n)}
        for t, h, e in self.arcs:
            out[t].append((h, e))
        return out

    def csr(self):
        order = sorted(range(len(self.arcs)), key=lambda i: self.arcs[i][:2])
        indptr = np.zeros(2 * self.n + 1, dtype=np.int64)
        indices = np.empty(len(self.arcs), dtype=np.int64)
        for k, i in enumerate(order):
            t, h, _ = self.arcs[i]
            indptr[t + 1] += 1
            indices[k] = h
        np.cumsum(indptr, out=indptr)
        return indptr, indices


def lift(g: ColoredGraph, support=None) -> DirectedLift:
    """v_+ is entered by red arcs and left by blue ones; v_- the other way round."""
    arcs = []
    for e in sorted(g.edges if support is None else support):
        u, v = e
        if g.color[e] is Color.RED:
            arcs += [(minus(u), plus(v), e), (minus(v), plus(u), e)]
        else:
            arcs += [(plus(u), minus(v), e), (plus(v), minus(u), e)]
    return DirectedLift(g.n, arcs)


def project(nodes: list) -> list:
    """Directed cycle in the lift (node list, closed implicitly) to a vertex walk."""
    return [x // 2 for x in nodes]


def walk_edges(walk: list) -> list:
    return [edge_key(a, b) for a, b in zip(walk, walk[1:] + walk[:1])]


def is_alternating(g: ColoredGraph, walk: list) -> bool:
    cols = [g.color.get(e) for e in walk_edges(walk)]
    if None in cols or len(cols) % 2:
        return False
    return all(a is not b for a, b in zip(cols, cols[1:] + cols[:1]))


def _shortest_cycle_through(succ: dict, tail: int, head: int) -> list | None:
    """Shortest directed path head -> tail, closed by the arc tail -> head."""
    prev = {head: None}
    dq = deque([head])
    while dq:
        x = dq.popleft()
        if x == tail:
            break
        for y, _ in succ[x]:
            if y not in prev:
                prev[y] = x
                dq.append(y)
    if tail not in prev:
        return None
    path = []
    x = tail
    while x is not None:
        path.append(x)
        x = prev[x]
    return path[::-1]           # head ... tail


@dataclass
class C2Result:
    ok: bool
    witnesses: list             # vertex walks
    failing_edges: list
    reason: str


def check_C2(g: ColoredGraph) -> C2Result:
    apex = g.apexes()
    if apex:
        a = apex[0]
        adj = g.adjacency()
        missing = sorted(v for v in range(g.n) if v != a and v not in adj[a])
        if missing:
            failing = sorted(e for e in g.edges if a not in e and (e[0] in missing or e[1] in missing))
            return C2Result(False, [], failing, f"apex {a} misses vertices {missing}")
        wit = [[a, u, v] for u, v in g.red()]
        return C2Result(True, wit, [], "apex dominates")
    lf = lift(g)
    indptr, indices = lf.csr()
    comp = kernels.scc_labels(2 * g.n, indptr, indices)
    on_cycle = {}
    for t, h, e in lf.arcs:
        on_cycle[e] = on_cycle.get(e, False) or comp[t] == comp[h]
    failing = sorted(e for e, ok in on_cycle.items() if not ok)
    if failing:
        return C2Result(False, [], failing, "edges on no alternating cycle")
    succ = lf.successors()
    witnesses, covered, seen = [], set(), set()
    for t, h, e in lf.arcs:
        if e in covered:
            continue
        walk = project(_shortest_cycle_through(succ, t, h))
        key = tuple(sorted(walk_edges(walk)))
        if key not in seen:
            seen.add(key)
            witnesses.append(walk)
        covered.update(walk_edges(walk))
    return C2Result(True, witnesses, [], "every edge lies on an alternating cycle")


def cycle_vector(walk: list, g: ColoredGraph) -> dict:
    """Visit counts, + on red and - on blue."""
    out = {}
    for e in walk_edges(walk):
        s = 1 if g.color[e] is Color.RED else -1
        out[e] = out.get(e, 0) + s
    return out


# ---------------------------------------------------------------------------
# weights

@dataclass
class WeightedGraph:
    graph: ColoredGraph
    w: dict                             # edge -> Fraction (pi units)
    zero_edges: frozenset = frozenset()  # edges explicitly allowed to carry weight 0

    def vertex_sum(self, v: int) -> Fraction:
        return sum((x for e, x in self.w.items() if v in e), Fraction(0))

    def blue_sum(self) -> Fraction:
        return sum((x for e, x in self.w.items() if self.graph.color[e] is Color.BLUE), Fraction(0))

    def scaled(self, t) -> "WeightedGraph":
        t = Fraction(t)
        return WeightedGraph(self.graph, {e: t * x for e, x in self.w.items()}, self.zero_edges)


def verify_W(wg: WeightedGraph, tol: float = 1e-9) -> dict:
    """Check the sign condition (W1) and the vertex sums (W2).

    Exact when every weight is rational; float weights are compared with tol.
    """
    g = wg.graph
    problems = []
    if set(wg.w) != set(g.edges):
        problems.append("weights not defined on exactly the edge set")
    exact = all(isinstance(x, (int, Fraction)) for x in wg.w.values())
    eps = 0 if exact else tol
    for e, x in wg.w.items():
        if abs(x) <= eps:
            if e not in wg.zero_edges:
                problems.append(f"{e}: zero weight not flagged")
        elif (x > 0) != (g.color[e] is Color.RED):
            problems.append(f"{e}: sign does not match color")
    apex = set(g.apexes())
    for v in range(g.n):
        want = APEX_SUM if v in apex else 0
        got = sum(x for e, x in wg.w.items() if v in e)
        if abs(got - want) > eps:
            problems.append(f"vertex {v}: sum {got} != {want}")
    return {"ok": not problems, "exact": exact, "problems": problems}


def synthesize_by_cycles(g: ColoredGraph) -> WeightedGraph:
    res = check_C2(g)
    if not res.ok:
        raise NotAdmissible(res.reason)
    w = {e: Fraction(0) for e in g.edges}
    if g.apexes():
        a = g.apexes()[0]
        red = g.red()
        # one bbr triangle per red edge, then fix the apex sum at -2
        for u, v in red:
            w[edge_key(u, v)] += 1
            w[edge_key(a, u)] -= 1
            w[edge_key(a, v)] -= 1
        t = Fraction(1, len(red))
        return WeightedGraph(g, {e: t * x for e, x in w.items()})
    for walk in res.witnesses:
        for e, c in cycle_vector(walk, g).items():
            w[e] += c
    return WeightedGraph(g, w)


def greedy_belt(g: ColoredGraph, theta_plus: dict, s, sigma: int) -> WeightedGraph:
    """Blue weights in the belt between the two cover cycles by the greedy walk.

    theta_plus gives positive weights on the red edges of g; blue edges of g
    are ignored and replaced by the edges the walk creates.  The first blue
    edge joins the first vertices of the two cycles with weight s; sigma = +1
    then advances along the first cycle, sigma = -1 along the second.
    """
    cp, cm = (list(c) for c in g.cover)
    if len(cp) < 2 or len(cm) < 2:
        raise InfeasibleInput("both cover cycles need at least two vertices")
    if sigma not in (1, -1):
        raise InfeasibleInput("sigma must be +1 or -1")
    theta = {edge_key(*e): Fraction(x) for e, x in theta_plus.items()}
    if set(theta) != set(g.red()):
        raise InfeasibleInput("theta_plus must cover exactly the red edges")
    if any(x <= 0 for x in theta.values()):
        raise InfeasibleInput("red weights must be positive")
    vw = {v: sum((x for e, x in theta.items() if v in e), Fraction(0)) for v in range(g.n)}
    sp, sm = sum(vw[v] for v in cp), sum(vw[v] for v in cm)
    if sp != sm:
        raise InfeasibleInput("components carry different total weight")
    s = Fraction(s)
    if not -min(vw[cp[0]], vw[cm[0]]) <= s <= 0:
        raise InfeasibleInput("s outside [-min(w1+, w1-), 0]")

    blue = {}
    zero = set()

    def put(u, v, x):
        e = edge_key(u, v)
        blue[e] = blue.get(e, Fraction(0)) + x

    res = dict(vw)
    i = j = 0
    put(cp[0], cm[0], s)
    res[cp[0]] += s
    res[cm[0]] += s
    # sigma decides even at the ends of the s segment; a zero residual then
    # gives a zero-weight edge next, which keeps the output continuous in s
    if sigma == 1:
        i += 1
    else:
        j += 1
    limit = 4 * (len(cp) + len(cm))
    for _ in range(limit):
        if all(res[v] == 0 for v in cp + cm):
            break
        u, v = cp[i % len(cp)], cm[j % len(cm)]
        x = min(res[u], res[v])
        put(u, v, -x)
        res[u] -= x
        res[v] -= x
        if res[u] == 0:
            i += 1
        if res[v] == 0:
            j += 1
    else:
        raise InfeasibleInput("greedy walk did not terminate")
    for e, x in blue.items():
        if x == 0:
            zero.add(e)
    edges = set(theta) | set(blue)
    out = ColoredGraph.from_cover(g.n, edges, g.cover)
    return WeightedGraph(out, {**theta, **blue}, frozenset(zero))


def normalize(wg: WeightedGraph, omega0=None) -> WeightedGraph:
    """Scale so the blue sum is -2 omega0 (pi units), or the apex sum is -2."""
    g = wg.graph
    if g.apexes():
        if omega0 is not None:
            raise ApexConflict("a 1-cycle fixes the scale; omega0 cannot be imposed")
        a = g.apexes()[0]
        return wg.scaled(APEX_SUM / wg.vertex_sum(a))
    if omega0 is None:
        raise ValueError("omega0 required without a 1-cycle")
    omega0 = Fraction(omega0)
    if not 0 < omega0 < 1:
        raise ValueError("omega0 must lie in (0, 1) pi units")
    b = wg.blue_sum()
    if b >= 0:
        raise ValueError("no negative weight to scale")
    return wg.scaled(-2 * omega0 / b)


# ---------------------------------------------------------------------------
# LP oracle

@dataclass
class LPFeasibility:
    feasible: bool
    margin: Fraction | None
    witness: WeightedGraph | None
    certificate: dict | None       # vertex potentials y and the bound row multiplier


def _lp_system(g: ColoredGraph):
    edges = sorted(g.edges)
    ne, n = len(edges), g.n
    # columns: m, slack of m <= 1, then one excess variable per edge
    rows = [[Fraction(0)] * (ne + 2) for _ in range(n + 1)]
    rhs = [Fraction(0)] * (n + 1)
    apex = set(g.apexes())
    for v in range(n):
        rhs[v] = APEX_SUM if v in apex else Fraction(0)
    for k, (u, v) in enumerate(edges):
        s = 1 if g.color[(u, v)] is Color.RED else -1
        for x in (u, v):
            rows[x][0] += s
            rows[x][2 + k] += s
    rows[n][0] = Fraction(1)
    rows[n][1] = Fraction(1)
    rhs[n] = Fraction(1)
    c = [Fraction(1)] + [Fraction(0)] * (ne + 1)
    return edges, rows, rhs, c


def lp_feasible(g: ColoredGraph) -> LPFeasibility:
    """Decide W1 + W2 exactly: maximize a margin m with red >= m, blue <= -m, m <= 1."""
    edges, rows, rhs, c = _lp_system(g)
    res = maximize(c, rows, rhs)
    if res.status == "infeasible":
        return LPFeasibility(False, None, None, {"y": res.dual, "kind": "farkas"})
    m = res.value
    if m > 0:
        w = {}
        for k, e in enumerate(edges):
            s = 1 if g.color[e] is Color.RED else -1
            w[e] = s * (m + res.x[2 + k])
        return LPFeasibility(True, m, WeightedGraph(g, w), None)
    return LPFeasibility(False, m, None, {"y": res.dual, "kind": "dual"})


def verify_certificate(g: ColoredGraph, cert: dict) -> bool:
    """Check an infeasibility certificate exactly against the LP data."""
    _, rows, rhs, c = _lp_system(g)
    y = cert["y"]
    ya = [sum(y[i] * rows[i][j] for i in range(len(rows))) for j in range(len(c))]
    yb = sum(yi * bi for yi, bi in zip(y, rhs))
    if cert["kind"] == "farkas":
        return all(v <= 0 for v in ya) and yb > 0
    # weak duality: max margin <= y.b <= 0
    return all(a >= ci for a, ci in zip(ya, c)) and yb <= 0


# ---------------------------------------------------------------------------
# minimal alternating cycles and peeling

def minimal_alternating_cycles(g: ColoredGraph, max_len: int | None = None,
                               bound: int = CYCLE_ENUM_BOUND) -> list:
    """Alternating closed walks (simple in the lift) with inclusion-minimal support."""
    if g.n > bound:
        raise TooLarge(f"cycle enumeration is limited to n = {bound}")
    max_len = 2 * g.n if max_len is None else max_len
    dg = nx.DiGraph()
    dg.add_nodes_from(range(2 * g.n))
    dg.add_edges_from((t, h) for t, h, _ in lift(g).arcs)
    vecs = {}
    for cyc in nx.simple_cycles(dg, length_bound=max_len):
        walk = project(cyc)
        vec = cycle_vector(walk, g)
        key = tuple(sorted(vec.items()))
        if key not in vecs:
            vecs[key] = walk
    supports = {k: frozenset(e for e, _ in k) for k in vecs}
    out = []
    for k, walk in vecs.items():
        if not any(supports[o] < supports[k] for o in vecs):
            out.append(walk)
    out.sort(key=lambda w: (len(w), walk_edges(w)))
    return out


def peel(wg: WeightedGraph, max_steps: int | None = None) -> list:
    """Write a W-feasible weight function as a positive sum of alternating cycles.

    Returns [(alpha, walk), ...]; each step zeroes at least one edge.
    """
    g = wg.graph
    if g.apexes():
        raise ValueError("peeling applies to covers without a 1-cycle")
    w = dict(wg.w)
    steps = []
    max_steps = len(w) if max_steps is None else max_steps
    for _ in range(max_steps + 1):
        support = [e for e, x in w.items() if x != 0]
        if not support:
            return steps
        dg = nx.DiGraph()
        dg.add_edges_from((t, h) for t, h, _ in lift(g, support).arcs)
        cyc = [a for a, _ in nx.find_cycle(dg)]
        walk = project(cyc)
        vec = cycle_vector(walk, g)
        alpha = min(Fraction(w[e]) / c for e, c in vec.items())
        for e, c in vec.items():
            w[e] -= alpha * c
        steps.append((alpha, walk))
    raise RuntimeError("peeling did not terminate")


# ---------------------------------------------------------------------------
# positive part sampler

@dataclass
class PositivePart:
    q: int
    weights: dict       # edge -> Fraction (pi units); boundary cycle 0..q-1 plus diagonals

    def diagonals(self) -> list:
        return sorted(e for e in self.weights if (e[1] - e[0]) % self.q not in (1, self.q - 1))


def _random_triangulation(rng: np.random.Generator, poly: list) -> list:
    if len(poly) < 4:
        return []
    r = int(rng.integers(len(poly)))
    poly = poly[r:] + poly[:r]
    j = int(rng.integers(2, len(poly) - 1))
    return ([edge_key(poly[0], poly[j])]
            + _random_triangulation(rng, poly[: j + 1])
            + _random_triangulation(rng, poly[j:] + poly[:1]))


def _positive_fractions(rng: np.random.Generator, k: int, total: Fraction) -> list:
    ks = [int(x) for x in rng.integers(1, 11, size=k)]
    s = sum(ks)
    return [total * Fraction(x, s) for x in ks]


def sample_positive_part(q: int, t, seed: int | None = None) -> PositivePart:
    """(1 - t) theta0 + t theta1 with theta0 on the q-cycle, theta1 on non-crossing diagonals."""
    t = Fraction(t)
    if q < 3 or not 0 <= t < 1:
        raise ValueError("need q >= 3 and 0 <= t < 1")
    rng = np.random.default_rng(seed)
    cyc = [edge_key(i, (i + 1) % q) for i in range(q)]
    w = dict(zip(cyc, (x * (1 - t) for x in _positive_fractions(rng, q, Fraction(1)))))
    if t > 0:
        diags = _random_triangulation(rng, list(range(q)))
        if not diags:
            raise ValueError("a triangle has no diagonals; t must be 0")
        keep = [d for d in diags if rng.random() < 0.6] or diags[:1]
        for d, x in zip(keep, _positive_fractions(rng, len(keep), Fraction(1))):
            w[d] = t * x
    return PositivePart(q, w)


def is_outerplanar_with_boundary(pp: PositivePart) -> bool:
    """Diagonals pairwise non-crossing with respect to the boundary cycle 0..q-1."""
    ds = pp.diagonals()
    for (a, b), (c, d) in itertools.combinations(ds, 2):
        if len({a, b, c, d}) == 4 and (a < c < b) != (a < d < b):
            return False
    return True
