"""Weakly ideal polyhedra: vertices on both sheets of the boundary quadric.

A vertex is given by its sheet (+1 or -1) and chart coordinates (u0, u1); the
height x2 is always recomputed from the quadric.  The polyhedron is the convex
hull in the chart x3 = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import hull3d
from .colors import Color, edge_key
from .minkowski import boundary_to_complex, ideal_point, inner

TOL = 1e-9
JACOBIAN_STEP = 1e-5
RANK_RTOL = 1e-6


class PolyhedronError(ValueError):
    """Base class for degenerate or out-of-scope polyhedra."""


class FlatPolyhedron(PolyhedronError):
    pass


class NonExtremeVertex(PolyhedronError):
    def __init__(self, index: int, kind: hull3d.VertexKind):
        super().__init__(f"vertex {index} is not extreme ({kind.value})")
        self.index = index
        self.kind = kind


class StronglyIdeal(PolyhedronError):
    pass


class ClassificationMismatch(PolyhedronError):
    pass


class NormalNotSpacelike(PolyhedronError):
    pass


class AngleDomain(PolyhedronError):
    pass


class StructureViolation(PolyhedronError):
    pass


class InteriorConditionUnmet(PolyhedronError):
    pass


@dataclass(frozen=True)
class IdealVertex:
    sheet: int
    u0: float
    u1: float
    label: str | None = None

    def point(self) -> tuple:
        return ideal_point(self.sheet, self.u0, self.u1)


@dataclass(frozen=True)
class IdealPolyhedron:
    vertices: tuple
    hull: hull3d.HullCombinatorics
    p: int
    q: int
    labels: tuple = ()

    @property
    def n(self) -> int:
        return len(self.vertices)

    def points(self) -> np.ndarray:
        """Homogeneous representatives with x3 = 1, one row per vertex."""
        return np.array([v.point() for v in self.vertices], dtype=float)

    def sheet(self, i: int) -> int:
        return self.vertices[i].sheet


@dataclass
class AngleGraph:
    """Signed exterior dihedral angles on the edges of a polyhedron."""

    n: int
    weights: dict
    colors: dict
    cover: tuple = ()

    def vertex_weight(self, v: int) -> float:
        return sum(w for e, w in self.weights.items() if v in e)

    def blue_sum(self) -> float:
        return sum(w for e, w in self.weights.items() if self.colors[e] is Color.BLUE)

    def red_sum(self) -> float:
        return sum(w for e, w in self.weights.items() if self.colors[e] is Color.RED)

    def apexes(self) -> list[int]:
        return [c[0] for c in self.cover if len(c) == 1]


# ---------------------------------------------------------------------------
# construction

def build(vertices: Sequence[IdealVertex], tol: float = TOL) -> IdealPolyhedron:
    verts = tuple(vertices)
    if len(verts) < 4:
        raise FlatPolyhedron("need at least four vertices")
    for v in verts:
        if v.sheet not in (1, -1):
            raise ValueError(f"bad sheet {v.sheet!r}")
    p = sum(1 for v in verts if v.sheet == 1)
    q = len(verts) - p
    if p == 0 or q == 0:
        raise StronglyIdeal("all vertices lie on one sheet")
    pts = [v.point()[:3] for v in verts]
    try:
        hull = hull3d.convex_hull(pts, tol)
    except hull3d.DegenerateInput as exc:
        raise FlatPolyhedron(str(exc)) from exc
    except hull3d.DuplicatePoint as exc:
        raise NonExtremeVertex(exc.pair[1], hull3d.VertexKind.IN_VERTEX) from exc
    if hull.non_extreme:
        i = min(hull.non_extreme)
        raise NonExtremeVertex(i, hull.non_extreme[i])
    if hull.euler_characteristic() != 2:
        raise StructureViolation("Euler characteristic is not 2")
    poly = IdealPolyhedron(verts, hull, p, q)
    classify_edges(poly, tol)
    comp = interior_complex(poly)
    labels = _labels(poly, comp["cycles"])
    return IdealPolyhedron(verts, hull, p, q, labels)


def _labels(poly: IdealPolyhedron, cycles) -> tuple:
    """1+, 2+, ... by increasing phase on sheet +, decreasing on sheet -."""
    labels = [""] * poly.n
    for cyc in cycles:
        sheet = poly.sheet(cyc[0])
        uv = np.array([[poly.vertices[i].u0, poly.vertices[i].u1] for i in cyc])
        if len(cyc) >= 3:
            x, y = uv[:, 0], uv[:, 1]
            area = float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
            if (area > 0) != (sheet == 1):
                cyc = [cyc[0]] + cyc[1:][::-1]
        centre = uv.mean(axis=0)
        phase = {i: math.atan2(poly.vertices[i].u1 - centre[1], poly.vertices[i].u0 - centre[0]) % (2 * math.pi)
                 for i in cyc}
        k = min(range(len(cyc)), key=lambda j: phase[cyc[j]])
        cyc = cyc[k:] + cyc[:k]
        if len(cyc) == 2 and sheet == -1:
            cyc = cyc[:1] + cyc[1:][::-1]
        for j, i in enumerate(cyc):
            labels[i] = f"{j + 1}{'+' if sheet == 1 else '-'}"
    return tuple(labels)


def classify_edges(poly: IdealPolyhedron, tol: float = TOL) -> dict:
    """Red for same-sheet edges, blue otherwise, cross-checked by the midpoint.

    With x3 = 1 representatives q(midpoint) = <X_u, X_v> / 2, which is <= 0 for
    chords inside one sheet's convex side and > 0 for chords through de Sitter
    space.
    """
    pts = poly.points()
    colors = {}
    for u, v in poly.hull.edges:
        red = poly.sheet(u) == poly.sheet(v)
        m = inner(pts[u], pts[v]) / 2
        scale = float(np.dot(pts[u], pts[v]))
        mid_red = m <= tol * abs(scale)
        if red != mid_red:
            raise ClassificationMismatch(f"edge {(u, v)}: sheet rule and midpoint sign disagree")
        colors[(u, v)] = Color.RED if red else Color.BLUE
    return colors


def face_normals(poly: IdealPolyhedron, tol: float = TOL) -> list[np.ndarray]:
    """Unit space-like polar vectors of the faces, with <n, c> < 0 at the centroid."""
    pts = poly.points()
    centroid = pts.mean(axis=0)
    jm = np.diag([1.0, 1.0, -1.0, 1.0])
    normals = []
    for f in poly.hull.faces:
        m = pts[list(f)] @ jm
        _, _, vt = np.linalg.svd(m)
        n = vt[-1]
        nn = inner(n, n)
        if nn <= tol * float(n @ n):
            raise NormalNotSpacelike(f"face {f} is not time-like")
        n = n / math.sqrt(nn)
        if inner(n, centroid) > 0:
            n = -n
        normals.append(n)
    return normals


def dihedral_angles(poly: IdealPolyhedron, tol: float = TOL) -> AngleGraph:
    """theta = arccos<n1, n2> on red edges and -arccos<n1, n2> on blue ones."""
    colors = classify_edges(poly, tol)
    normals = face_normals(poly, tol)
    weights = {}
    for e, (f1, f2) in poly.hull.edge_faces.items():
        c = inner(normals[f1], normals[f2])
        if abs(c) > 1 + 1e-7:
            raise AngleDomain(f"edge {e}: |<n1,n2>| = {abs(c):.12f}")
        th = math.acos(max(-1.0, min(1.0, c)))
        weights[e] = th if colors[e] is Color.RED else -th
    cover = tuple(interior_complex(poly)["cycles"])
    return AngleGraph(poly.n, weights, colors, cover)


# ---------------------------------------------------------------------------
# admissibility of an angle graph

def verify_admissible(g: AngleGraph, tol: float = TOL) -> dict:
    """Report on the range, vertex-sum and blue-sum conditions.

    Blue-sum condition as checked here: the sum is -2*pi at a 1-cycle apex
    and strictly between -2*pi and 0 otherwise (it equals minus twice the red
    weight of either cover component, and every red weight lies in (0, pi)).
    The literal reading "<= -2*pi" is reported separately as A3_literal.
    """
    bad_range = []
    for e, w in g.weights.items():
        if g.colors[e] is Color.RED and not (tol < w < math.pi - tol):
            bad_range.append(e)
        if g.colors[e] is Color.BLUE and not (-math.pi + tol < w < -tol):
            bad_range.append(e)
    apexes = set(g.apexes())
    sums = {v: g.vertex_weight(v) for v in range(g.n)}
    resid = {v: abs(s - (-2 * math.pi if v in apexes else 0.0)) for v, s in sums.items()}
    worst = max(resid.values()) if resid else 0.0
    bsum = g.blue_sum()
    if apexes:
        a3 = abs(bsum + 2 * math.pi) <= tol * 10
    else:
        a3 = -2 * math.pi + tol < bsum < -tol
    sizes = sorted(len(c) for c in g.cover)
    c1 = len(g.cover) == 2 and sum(sizes) == g.n
    return {
        "C1": {"pass": c1, "cycle_lengths": sizes},
        "A1": {"pass": not bad_range, "failing_edges": [list(e) for e in sorted(bad_range)]},
        "A2": {"pass": worst <= tol * 10, "max_residual": worst,
               "vertex_sums": {str(v): s for v, s in sums.items()}},
        "A3": {"pass": a3, "blue_sum": bsum, "apex": bool(apexes)},
        "A3_literal": {"pass": bsum <= -2 * math.pi + tol and (abs(bsum + 2 * math.pi) > tol) == (not apexes),
                       "blue_sum": bsum},
    }


# ---------------------------------------------------------------------------
# structure of the interior faces

def interior_complex(poly: IdealPolyhedron) -> dict:
    """Red components and their boundary Hamiltonian cycles.

    The red subgraph has one component per sheet; its boundary is traced
    through red edges that border a face meeting the other sheet.
    """
    n = poly.n
    red = [e for e in poly.hull.edges if poly.sheet(e[0]) == poly.sheet(e[1])]
    comps = []
    for sheet in (1, -1):
        comp = sorted(i for i in range(n) if poly.sheet(i) == sheet)
        comps.append(comp)
        # connectivity of the red subgraph on this sheet
        adj = {i: set() for i in comp}
        for u, v in red:
            if u in adj:
                adj[u].add(v)
                adj[v].add(u)
        seen, stack = {comp[0]}, [comp[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(comp):
            raise StructureViolation(f"red subgraph on sheet {sheet:+d} is disconnected")
    mixed = [len({poly.sheet(v) for v in f}) == 2 for f in poly.hull.faces]
    for f, is_mixed in zip(poly.hull.faces, mixed):
        k = len(f)
        if all(poly.sheet(f[i]) != poly.sheet(f[(i + 1) % k]) for i in range(k)):
            raise StructureViolation(f"face {f} has no red edge")
    cycles = []
    for comp in comps:
        if len(comp) <= 2:
            cycles.append(list(comp))
            continue
        nxt = {}
        for f, is_mixed in zip(poly.hull.faces, mixed):
            if not is_mixed:
                continue
            k = len(f)
            for i in range(k):
                a, b = f[i], f[(i + 1) % k]
                if a in comp and b in comp:
                    # direction taken from the interior face on the other side
                    nxt[b] = a
        if not nxt:
            raise StructureViolation("component has no boundary")
        start = min(nxt)
        cyc = [start]
        while nxt.get(cyc[-1], start) != start:
            cyc.append(nxt[cyc[-1]])
            if len(cyc) > len(comp):
                break
        if sorted(cyc) != comp or len(nxt) != len(comp):
            raise StructureViolation("boundary of a red component is not a Hamiltonian cycle")
        cycles.append(cyc)
    return {"components": comps, "cycles": cycles}


# ---------------------------------------------------------------------------
# vertex figures

def _complex_points(poly: IdealPolyhedron) -> list[complex]:
    return [boundary_to_complex(x) for x in poly.points()]


def vertex_figure(poly: IdealPolyhedron, v: int, angles: AngleGraph | None = None) -> dict:
    """Vertex figure at v in the horosphere chart where v sits at infinity.

    Neighbours w_1..w_k are walked counter-clockwise as seen from outside.
    The piece of face trace between w_i and w_(i+1) is the bounded segment
    when both lie on one sheet and the complementary ray pair through
    infinity otherwise; with that reading the turning angle at w_i is
    theta(v, w_i).  closure_defect rebuilds the curve from the edge lengths and
    the angles theta alone and measures how far it misses its start.
    """
    if angles is None:
        angles = dihedral_angles(poly)
    zs = _complex_points(poly)
    zv = zs[v]
    nbrs = poly.hull.neighbors(v)
    if cmath.isinf(zv):
        pts = [zs[w] for w in nbrs]
    else:
        pts = [1.0 / (zs[w] - zv) for w in nbrs]
    k = len(pts)
    through_inf = [poly.sheet(nbrs[i]) != poly.sheet(nbrs[(i + 1) % k]) for i in range(k)]
    # unit tangent of the curve along each piece
    tangents = []
    for i in range(k):
        d = pts[(i + 1) % k] - pts[i]
        d = d / abs(d)
        tangents.append(-d if through_inf[i] else d)
    turns = [cmath.phase(tangents[i] / tangents[i - 1]) for i in range(k)]
    thetas = [angles.weights[edge_key(v, w)] for w in nbrs]
    lengths = [abs(pts[(i + 1) % k] - pts[i]) for i in range(k)]
    pos = 0j
    tangent = tangents[0]
    for i in range(k):
        step = lengths[i] * tangent
        pos += -step if through_inf[i] else step
        tangent = tangent * cmath.exp(1j * thetas[(i + 1) % k])
    defect = abs(pos) / sum(lengths)
    mismatch = max(abs(cmath.phase(cmath.exp(1j * (t - th)))) for t, th in zip(turns, thetas))
    return {
        "vertex": v,
        "turns": [(edge_key(v, w), t) for w, t in zip(nbrs, turns)],
        "turn_sum": sum(thetas),
        "closure_defect": defect,
        "max_turn_mismatch": mismatch,
    }


# ---------------------------------------------------------------------------
# generators and deformations

def generate_two_circle(p: int, q: int, t: float, phases_plus=None, phases_minus=None,
                        tol: float = TOL) -> IdealPolyhedron:
    """Vertices on the circles at heights t and -t of the quadric.

    A single vertex on a sheet is placed at the pole (0, 0, +-1).  Phases
    default to equally spaced angles.
    """
    if p < 1 or q < 1 or p + q < 4:
        raise ValueError("need p, q >= 1 and p + q >= 4")
    if not t > 1:
        raise ValueError("t must exceed 1")
    r = math.sqrt(t * t - 1)
    verts = []
    for sheet, k, phases in ((1, p, phases_plus), (-1, q, phases_minus)):
        if phases is None:
            phases = [2 * math.pi * j / k for j in range(k)]
        if len(phases) != k:
            raise ValueError("wrong number of phases")
        if k == 1:
            verts.append(IdealVertex(sheet, 0.0, 0.0))
            continue
        for ph in phases:
            verts.append(IdealVertex(sheet, r * math.cos(ph), r * math.sin(ph)))
    return build(verts, tol)


def contains_poles(poly: IdealPolyhedron, tol: float = TOL) -> bool:
    """Are the chart points (0, 0, +1) and (0, 0, -1) interior to P?"""
    pts = poly.points()[:, :3]
    centroid = pts.mean(axis=0)
    for pole in (np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -1.0])):
        for f in poly.hull.faces:
            a, b, c = pts[f[0]], pts[f[1]], pts[f[2]]
            n = np.cross(b - a, c - a)
            n /= np.linalg.norm(n)
            if np.dot(n, centroid - a) > 0:
                n = -n
            if np.dot(n, pole - a) >= -tol:
                return False
    return True


def deform_toward_planes(poly: IdealPolyhedron, t: float, tol: float = TOL) -> IdealPolyhedron:
    """Flow vertices above height t down the gradient of f to height +-t.

    f(u) = sqrt(|u|^2 + 1) is radial, so the flow moves u straight toward
    the axis; a vertex stops once |x2| = t.
    """
    if not t > 1:
        raise ValueError("t must exceed 1")
    if not contains_poles(poly, tol):
        raise InteriorConditionUnmet("(0, 0, +-1) must lie in the interior")
    r = math.sqrt(t * t - 1)
    verts = []
    for v in poly.vertices:
        rho = math.hypot(v.u0, v.u1)
        if rho > r:
            verts.append(IdealVertex(v.sheet, v.u0 * r / rho, v.u1 * r / rho, v.label))
        else:
            verts.append(v)
    return build(verts, tol)


# ---------------------------------------------------------------------------
# rigidity

def _triangle_normal(x1, x2, x3) -> np.ndarray:
    jm = np.diag([1.0, 1.0, -1.0, 1.0])
    # 4D generalized cross product: covector vanishing on x1, x2, x3
    m = np.array([x1, x2, x3])
    cof = np.array([(-1) ** k * np.linalg.det(np.delete(m, k, axis=1)) for k in range(4)])
    n = jm @ cof
    return n / math.sqrt(inner(n, n))


def _signed_angle(n1, n2, opposite) -> float:
    """Angle between unit normals, negative when the edge is reflex."""
    sig = (1, 1, -1, 1)
    wedge2 = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            wedge2 += sig[i] * sig[j] * (n1[i] * n2[j] - n1[j] * n2[i]) ** 2
    s = math.sqrt(max(wedge2, 0.0))
    if inner(n1, opposite) > 0:
        s = -s
    return math.atan2(s, inner(n1, n2))


def triangulated_angles(poly: IdealPolyhedron, coords: np.ndarray | None = None) -> np.ndarray:
    """Signed angles on the edges of the fan triangulation, in a fixed order.

    Flat diagonals get angle 0.  coords optionally replaces the (u0, u1) of
    every vertex, keeping the combinatorics, which is what the Jacobian needs.
    """
    if coords is None:
        coords = np.array([[v.u0, v.u1] for v in poly.vertices])
    pts = np.array([ideal_point(v.sheet, coords[i, 0], coords[i, 1])
                    for i, v in enumerate(poly.vertices)], dtype=float)
    tris = poly.hull.fan_triangles()
    owner = {}
    for ti, (a, b, c) in enumerate(tris):
        for e in ((a, b), (b, c), (c, a)):
            owner[e] = ti
    centroid = pts.mean(axis=0)
    normals = []
    for a, b, c in tris:
        n = _triangle_normal(pts[a], pts[b], pts[c])
        # orientation fixed by the reference polyhedron, then carried along
        normals.append(n)
    ref = np.array([ideal_point(v.sheet, v.u0, v.u1) for v in poly.vertices], dtype=float)
    ref_c = ref.mean(axis=0)
    for ti, (a, b, c) in enumerate(tris):
        n0 = _triangle_normal(ref[a], ref[b], ref[c])
        if inner(n0, ref_c) > 0:
            normals[ti] = -normals[ti]
    del centroid
    out = []
    for u, v in sorted({edge_key(*e) for e in owner}):
        t1, t2 = owner[(u, v)], owner[(v, u)]
        opp = [x for x in tris[t2] if x not in (u, v)][0]
        th = _signed_angle(normals[t1], normals[t2], pts[opp])
        out.append(th if poly.sheet(u) == poly.sheet(v) else -th)
    return np.array(out)


def angle_jacobian(poly: IdealPolyhedron, h: float = JACOBIAN_STEP) -> np.ndarray:
    base = np.array([[v.u0, v.u1] for v in poly.vertices], dtype=float)
    cols = []
    for i in range(poly.n):
        for k in range(2):
            plus, minus = base.copy(), base.copy()
            plus[i, k] += h
            minus[i, k] -= h
            cols.append((triangulated_angles(poly, plus) - triangulated_angles(poly, minus)) / (2 * h))
    return np.array(cols).T


def angle_jacobian_rank(poly: IdealPolyhedron, h: float = JACOBIAN_STEP, rtol: float = RANK_RTOL) -> int:
    """Numerical rank of d(angles)/d(u0, u1); 2n - 6 for rigid polyhedra."""
    s = np.linalg.svd(angle_jacobian(poly, h), compute_uv=False)
    return int(np.sum(s > s.max() * rtol))
