"""Convex hull of points in the affine chart x3 = 1.

Incremental beneath-beyond construction.  Integer and Fraction inputs use
exact arithmetic; anything else is converted to float and compared against a
tolerance scaled by the bounding-box diagonal.  Coplanar triangles are merged
into maximal faces at the end, so faces are cyclic vertex lists oriented
counter-clockwise when seen from outside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels

TAU_COPLANAR = 1e-9


class DegenerateInput(ValueError):
    """All points are coplanar (or fewer than four were given)."""


class DuplicatePoint(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"points {i} and {j} coincide")
        self.pair = (i, j)


class Orientation(Enum):
    POSITIVE = 1
    NEGATIVE = -1
    COPLANAR = 0


class VertexKind(Enum):
    EXTREME = "extreme"
    IN_FACET_INTERIOR = "in_facet_interior"
    IN_EDGE_INTERIOR = "in_edge_interior"
    IN_VERTEX = "in_vertex"
    INTERIOR = "interior"


@dataclass(frozen=True)
class HullCombinatorics:
    """Face lattice of a 3-polytope.

    faces are outward oriented cycles starting at their smallest id;
    edge_faces maps a sorted edge (u, v) to (face left of u->v, face right).
    """

    vertices: tuple
    faces: tuple
    edges: tuple
    edge_faces: dict = field(compare=False)
    non_extreme: dict = field(default_factory=dict)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def neighbors(self, v: int) -> list[int]:
        """Neighbours of v in counter-clockwise order seen from outside."""
        nxt = {}
        for f in self.faces:
            k = len(f)
            for i in range(k):
                if f[i] == v:
                    # incoming u -> v and outgoing v -> w within this face
                    nxt[f[(i + 1) % k]] = f[i - 1]
        if not nxt:
            raise KeyError(v)
        start = min(nxt)
        order = [start]
        while True:
            w = nxt[order[-1]]
            if w == start:
                break
            order.append(w)
        return order

    def faces_at(self, v: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if v in f]

    def fan_triangles(self) -> list[tuple[int, int, int]]:
        """Fan triangulation of every face from its lowest-id vertex."""
        tris = []
        for f in self.faces:
            a = f[0]  # faces start at their minimum id
            for i in range(1, len(f) - 1):
                tris.append((a, f[i], f[i + 1]))
        return tris


def _is_exact(points) -> bool:
    return all(isinstance(c, (int, Fraction)) and not isinstance(c, bool)
               for p in points for c in p)


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def orientation(a, b, c, d, tol: float = 0.0) -> Orientation:
    """Sign of det[b-a, c-a, d-a]; exact for int/Fraction coordinates."""
    if _is_exact((a, b, c, d)):
        det = _dot(_cross(_sub(b, a), _sub(c, a)), _sub(d, a))
    else:
        det = kernels.orient3d(a, b, c, d)
        if abs(det) <= tol:
            det = 0
    return Orientation((det > 0) - (det < 0))


class _Hull:
    """Mutable working state of the incremental construction."""

    def __init__(self, pts, exact: bool, tol: float):
        self.pts = pts
        self.exact = exact
        self.tol = tol
        self.tris: dict[int, tuple[int, int, int]] = {}
        self.planes: dict[int, tuple] = {}
        self.owner: dict[tuple[int, int], int] = {}
        self.next_id = 0

    def plane(self, a, b, c):
        pa, pb, pc = self.pts[a], self.pts[b], self.pts[c]
        n = _cross(_sub(pb, pa), _sub(pc, pa))
        if not self.exact:
            norm = float(np.sqrt(_dot(n, n)))
            n = (n[0] / norm, n[1] / norm, n[2] / norm)
        return n, _dot(n, pa)

    def add(self, a, b, c):
        fid = self.next_id
        self.next_id += 1
        self.tris[fid] = (a, b, c)
        self.planes[fid] = self.plane(a, b, c)
        for e in ((a, b), (b, c), (c, a)):
            self.owner[e] = fid
        return fid

    def remove(self, fid):
        a, b, c = self.tris.pop(fid)
        del self.planes[fid]
        for e in ((a, b), (b, c), (c, a)):
            if self.owner.get(e) == fid:
                del self.owner[e]

    def distances(self, p) -> dict[int, object]:
        ids = list(self.tris)
        if self.exact:
            return {f: _dot(self.planes[f][0], p) - self.planes[f][1] for f in ids}
        normals = np.array([self.planes[f][0] for f in ids])
        offsets = np.array([self.planes[f][1] for f in ids])
        d = kernels.plane_distances(normals, offsets, p)
        return dict(zip(ids, d.tolist()))

    def insert(self, i) -> bool:
        """Add point i; returns False when it is not beyond any face."""
        dist = self.distances(self.pts[i])
        visible = {f for f, d in dist.items() if d > self.tol}
        if not visible:
            return False
        horizon = []
        for f in visible:
            a, b, c = self.tris[f]
            for e in ((a, b), (b, c), (c, a)):
                if self.owner.get((e[1], e[0])) not in visible:
                    horizon.append(e)
        for f in visible:
            self.remove(f)
        for a, b in horizon:
            self.add(a, b, i)
        return True


def _scale(pts) -> float:
    arr = np.array([[float(c) for c in p] for p in pts])
    ext = arr.max(axis=0) - arr.min(axis=0)
    return float(np.linalg.norm(ext)) or 1.0


def _prepare(points, tol):
    if len(points) < 4:
        raise DegenerateInput("need at least four points")
    exact = _is_exact(points)
    if exact:
        pts = [tuple(Fraction(c) for c in p) for p in points]
        seen = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePoint(seen[p], i)
            seen[p] = i
        return pts, True, 0, 0.0
    pts = [tuple(float(c) for c in p) for p in points]
    scale = _scale(pts)
    arr = np.array(pts)
    for i in range(len(pts)):
        d = np.linalg.norm(arr[i + 1:] - arr[i], axis=1)
        close = np.nonzero(d <= tol * scale)[0]
        if close.size:
            raise DuplicatePoint(i, i + 1 + int(close[0]))
    return pts, False, tol * scale, scale


def _initial_simplex(pts, exact, dtol, scale):
    n = len(pts)
    f = [np.array([float(c) for c in p]) for p in pts]
    i0 = 0
    i1 = max(range(n), key=lambda k: float(np.linalg.norm(f[k] - f[i0])))
    i2 = max(range(n), key=lambda k: float(np.linalg.norm(np.cross(f[i1] - f[i0], f[k] - f[i0]))))

    def vol(k):
        if exact:
            return _dot(_cross(_sub(pts[i1], pts[i0]), _sub(pts[i2], pts[i0])), _sub(pts[k], pts[i0]))
        return kernels.orient3d(f[i0], f[i1], f[i2], f[k])

    i3 = max(range(n), key=lambda k: abs(float(vol(k))))
    v = vol(i3)
    if exact:
        flat = v == 0
    else:
        area = float(np.linalg.norm(np.cross(f[i1] - f[i0], f[i2] - f[i0])))
        flat = area <= dtol * scale or abs(v) <= dtol * area
    if flat:
        raise DegenerateInput("all points are coplanar")
    if v > 0:  # i3 is on the positive side of (i0, i1, i2): flip base
        i1, i2 = i2, i1
    return i0, i1, i2, i3


def _build(pts, exact, dtol, scale, order):
    i0, i1, i2, i3 = _initial_simplex([pts[k] for k in order], exact, dtol, scale)
    i0, i1, i2, i3 = order[i0], order[i1], order[i2], order[i3]
    h = _Hull(pts, exact, dtol)
    h.add(i0, i1, i2)
    h.add(i0, i3, i1)
    h.add(i1, i3, i2)
    h.add(i2, i3, i0)
    inside = []
    for k in order:
        if k in (i0, i1, i2, i3):
            continue
        if not h.insert(k):
            inside.append(k)
    return h


def _merge(h: _Hull):
    """Group coplanar adjacent triangles and trace each group's boundary."""
    parent = {f: f for f in h.tris}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f, (a, b, c) in h.tris.items():
        n, off = h.planes[f]
        for e in ((a, b), (b, c), (c, a)):
            g = h.owner[(e[1], e[0])]
            other = [v for v in h.tris[g] if v not in e][0]
            d = _dot(n, h.pts[other]) - off
            if (d == 0) if h.exact else abs(d) <= h.tol:
                parent[find(f)] = find(g)
    groups: dict[int, list[int]] = {}
    for f in h.tris:
        groups.setdefault(find(f), []).append(f)
    faces = []
    interior_vertices = set()
    for members in groups.values():
        mset = set(members)
        nxt = {}
        used = set()
        for f in members:
            a, b, c = h.tris[f]
            used.update((a, b, c))
            for e in ((a, b), (b, c), (c, a)):
                if h.owner[(e[1], e[0])] not in mset:
                    nxt[e[0]] = e[1]
        start = min(nxt)
        cyc = [start]
        while nxt[cyc[-1]] != start:
            cyc.append(nxt[cyc[-1]])
        interior_vertices.update(used - set(cyc))
        faces.append(cyc)
    return faces, interior_vertices


def _collinear(pts, a, b, c, exact, dtol) -> bool:
    cr = _cross(_sub(pts[b], pts[a]), _sub(pts[c], pts[a]))
    if exact:
        return cr == (0, 0, 0)
    ab = _sub(pts[c], pts[a])
    return float(np.sqrt(_dot(cr, cr))) <= dtol * float(np.sqrt(_dot(ab, ab)))


def _classify_against(pts, faces, p, exact, dtol) -> VertexKind:
    on = 0
    for f in faces:
        a, b, c = (pts[v] for v in f[:3])
        n = _cross(_sub(b, a), _sub(c, a))
        if not exact:
            norm = float(np.sqrt(_dot(n, n)))
            n = tuple(x / norm for x in n)
        d = _dot(n, _sub(p, a))
        if (d > 0) if exact else d > dtol:
            return VertexKind.EXTREME
        if (d == 0) if exact else abs(d) <= dtol:
            on += 1
    if on == 0:
        return VertexKind.INTERIOR
    if on == 1:
        return VertexKind.IN_FACET_INTERIOR
    if on == 2:
        return VertexKind.IN_EDGE_INTERIOR
    return VertexKind.IN_VERTEX


def _assemble(pts, faces, non_extreme) -> HullCombinatorics:
    canon = []
    for f in faces:
        k = f.index(min(f))
        canon.append(tuple(f[k:] + f[:k]))
    canon.sort()
    directed = {}
    for fi, f in enumerate(canon):
        for i in range(len(f)):
            directed[(f[i], f[(i + 1) % len(f)])] = fi
    edges = sorted({(min(a, b), max(a, b)) for a, b in directed})
    edge_faces = {(u, v): (directed[(u, v)], directed[(v, u)]) for u, v in edges}
    verts = tuple(sorted({v for f in canon for v in f}))
    return HullCombinatorics(verts, tuple(canon), tuple(edges), edge_faces, dict(non_extreme))


def convex_hull(points: Sequence[Sequence], tol: float = TAU_COPLANAR) -> HullCombinatorics:
    """Hull of 3-points; non-extreme input points are listed, not dropped silently.

    Raises DegenerateInput for coplanar input and DuplicatePoint for repeats.
    """
    pts, exact, dtol, scale = _prepare(points, tol)
    order = list(range(len(pts)))
    if exact:  # canonical insertion order makes the output order independent
        order.sort(key=lambda k: pts[k])
    h = _build(pts, exact, dtol, scale, order)
    faces, buried = _merge(h)
    on_hull = {v for f in faces for v in f}
    non_extreme = {}
    # boundary vertices with collinear neighbours lie inside an edge
    for f in faces:
        k = len(f)
        for i in range(k):
            if _collinear(pts, f[i - 1], f[i], f[(i + 1) % k], exact, dtol):
                non_extreme[f[i]] = VertexKind.IN_EDGE_INTERIOR
    for v in buried:
        non_extreme.setdefault(v, VertexKind.IN_FACET_INTERIOR)
    extreme = sorted(on_hull - set(non_extreme))
    if non_extreme or len(on_hull) < len(pts):
        # rebuild on the extreme points alone so faces carry no spurious vertices
        h = _build(pts, exact, dtol, scale, extreme if not exact else sorted(extreme, key=lambda k: pts[k]))
        faces, _ = _merge(h)
        for k in range(len(pts)):
            if k not in extreme and k not in non_extreme:
                non_extreme[k] = _classify_against(pts, faces, pts[k], exact, dtol)
    return _assemble(pts, faces, non_extreme)


def is_vertex_extreme(points: Sequence[Sequence], index: int, tol: float = TAU_COPLANAR) -> VertexKind:
    """Is points[index] a vertex of the hull of all points?

    A repeated point is IN_VERTEX; otherwise the point is tested against the
    hull of the remaining points.
    """
    exact = _is_exact(points)
    if exact:
        pts = [tuple(Fraction(c) for c in p) for p in points]
        dtol = 0.0
    else:
        pts = [tuple(float(c) for c in p) for p in points]
        dtol = tol * _scale(pts)
    p = pts[index]
    for k, other in enumerate(pts):
        if k == index:
            continue
        if exact and other == p:
            return VertexKind.IN_VERTEX
        if not exact and float(np.linalg.norm(np.subtract(other, p))) <= dtol:
            return VertexKind.IN_VERTEX
    rest = []
    for k, other in enumerate(pts):
        if k != index and other not in rest:
            rest.append(other)
    try:
        hull = convex_hull(rest, tol) if not exact else convex_hull(rest)
    except DegenerateInput:
        return VertexKind.EXTREME
    faces = [list(f) for f in hull.faces]
    return _classify_against(rest, faces, p, exact, dtol)
