"""Horocyclic polygons in the hyperbolic plane.

Computations use the hyperboloid {X : <X, X> = -1, X0 > 0} with the form
<X, Y> = -X0 Y0 + X1 Y1 + X2 Y2.  The ideal point at angle beta of the unit
disk is the light-like vector B = (1, cos beta, sin beta).

A horocycle based at B of size d is {X : -<X, B> = d}; its horodisk is the side
where -<X, B> < d.  This size equals the Euclidean diameter of the horocycle in
the upper half-plane after the disk is mapped there by w -> K(-exp(-i beta) w),
K(w) = i (1 + w) / (1 - w), which sends the base to 0 and the disk centre to i.

Bases are listed clockwise, i.e. with decreasing angle.  The polygon is the
intersection of the horodisks; vertex s_i is the point of h_i and h_{i+1} that
comes later when h_i is traversed clockwise starting at its base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TOL = 1e-9


class NoIntersection(ValueError):
    pass


class RedundantHorodisk(ValueError):
    pass


class VerticesMerge(ValueError):
    pass


def _mink(x, y) -> float:
    return float(-x[0] * y[0] + x[1] * y[1] + x[2] * y[2])


def ideal(beta: float) -> np.ndarray:
    return np.array([1.0, math.cos(beta), math.sin(beta)])


def to_disk(x) -> complex:
    return complex(x[1], x[2]) / (1.0 + x[0])


def from_disk(w: complex) -> np.ndarray:
    r2 = abs(w) ** 2
    return np.array([1 + r2, 2 * w.real, 2 * w.imag]) / (1 - r2)


def to_halfplane(w: complex, beta: float) -> complex:
    """Disk point to the upper half-plane with the ideal point beta sent to 0."""
    u = -complex(math.cos(beta), -math.sin(beta)) * w
    return 1j * (1 + u) / (1 - u)


@dataclass(frozen=True)
class Horocycle:
    base: float
    size: float

    def __post_init__(self):
        if not self.size > 0:
            raise ValueError("horocycle size must be positive")

    def level(self, x) -> float:
        return -_mink(x, ideal(self.base))

    def clockwise_parameter(self, x) -> float:
        """Angle in [0, 2 pi) swept clockwise about the Euclidean centre from the base."""
        b = complex(math.cos(self.base), math.sin(self.base))
        rho = math.tanh(-math.log(self.size) / 2)   # closest point to the centre sits at rho * b
        centre = (1 + rho) / 2 * b
        a0 = math.atan2((b - centre).imag, (b - centre).real)
        z = to_disk(x) - centre
        return (a0 - math.atan2(z.imag, z.real)) % (2 * math.pi)


@dataclass
class HorocyclicPolygon:
    horocycles: list
    vertices: list         # s_i on h_i and h_{i+1}, as hyperboloid points

    @property
    def p(self) -> int:
        return len(self.horocycles)

    @property
    def bases(self) -> list:
        return [h.base for h in self.horocycles]

    @property
    def sizes(self) -> list:
        return [h.size for h in self.horocycles]


def _normal(bi, bj) -> np.ndarray:
    """Unit space-like normal of the geodesic with ideal ends bi, bj."""
    c = np.cross(bi, bj)
    n = np.array([-c[0], c[1], c[2]])   # Lorentz cross product
    return n / math.sqrt(_mink(n, n))


def _kappa(bi, bj) -> float:
    return -_mink(bi, bj)


def intersections(hi: Horocycle, hj: Horocycle) -> tuple:
    """Both intersection points of two horocycles with distinct bases."""
    bi, bj = ideal(hi.base), ideal(hj.base)
    k = _kappa(bi, bj)
    if k <= TOL:
        raise ValueError("coincident bases")
    g2 = 2 * hi.size * hj.size / k - 1
    if g2 < -TOL:
        raise NoIntersection(f"horocycles at {hi.base:.6g} and {hj.base:.6g} are disjoint")
    g = math.sqrt(max(g2, 0.0))
    foot = (hj.size * bi + hi.size * bj) / k
    n = _normal(bi, bj)
    return foot + g * n, foot - g * n


def _check_bases(bases) -> None:
    p = len(bases)
    if p < 2:
        raise ValueError("need at least two horocycles")
    gaps = [(bases[i] - bases[(i + 1) % p]) % (2 * math.pi) for i in range(p)]
    if min(gaps) <= TOL or abs(sum(gaps) - 2 * math.pi) > 1e-7:
        raise ValueError("bases must be distinct and listed clockwise")


def horocyclic_polygon(bases, sizes, tol: float = TOL) -> HorocyclicPolygon:
    _check_bases(bases)
    if len(sizes) != len(bases):
        raise ValueError("bases and sizes differ in length")
    hs = [Horocycle(float(b), float(s)) for b, s in zip(bases, sizes)]
    p = len(hs)
    verts = []
    for i in range(p):
        a, b = intersections(hs[i], hs[(i + 1) % p])
        h = hs[i]
        verts.append(a if h.clockwise_parameter(a) > h.clockwise_parameter(b) else b)
    poly = HorocyclicPolygon(hs, verts)
    _validate(poly, tol)
    return poly


def _validate(poly: HorocyclicPolygon, tol: float) -> None:
    p = poly.p
    for i, h in enumerate(poly.horocycles):
        prev, cur = poly.vertices[i - 1], poly.vertices[i]
        if p > 2 and not h.clockwise_parameter(prev) < h.clockwise_parameter(cur):
            raise RedundantHorodisk(f"horocycle {i} contributes no boundary arc")
        for j, other in enumerate(poly.horocycles):
            if j in (i, (i + 1) % p):
                continue
            if other.level(cur) > other.size * (1 + tol):
                raise RedundantHorodisk(f"vertex {i} lies outside horodisk {j}")


def order_ok(poly: HorocyclicPolygon) -> bool:
    """b_i, s_{i-1}, s_i clockwise on every h_i."""
    return all(
        h.clockwise_parameter(poly.vertices[i - 1]) < h.clockwise_parameter(poly.vertices[i])
        for i, h in enumerate(poly.horocycles)
    )


def _angle_at(x, b1, b2) -> float:
    # with u_k = b_k + <x, b_k> x the unit tangents toward b_k, expanding <u1, u2>
    # gives 2 sin^2(alpha / 2) = -<b1, b2> / (<x, b1> <x, b2>), which avoids the
    # cancellation in forming u_k far from the origin
    s2 = -_mink(b1, b2) / (2 * _mink(x, b1) * _mink(x, b2))
    return 2 * math.asin(math.sqrt(min(max(s2, 0.0), 1.0)))


def vertex_angles(poly: HorocyclicPolygon) -> list[float]:
    """Angle at s_i between the geodesic rays to b_i and b_{i+1}."""
    p = poly.p
    return [
        _angle_at(poly.vertices[i], ideal(poly.bases[i]), ideal(poly.bases[(i + 1) % p]))
        for i in range(p)
    ]


def cone_angle(poly: HorocyclicPolygon) -> float:
    return sum(vertex_angles(poly))


def distances(poly: HorocyclicPolygon) -> list[float]:
    """delta_i: distance from s_i to the geodesic b_i b_{i+1}."""
    p = poly.p
    out = []
    for i in range(p):
        n = _normal(ideal(poly.bases[i]), ideal(poly.bases[(i + 1) % p]))
        out.append(math.asinh(abs(_mink(poly.vertices[i], n))))
    return out


def distances_halfplane(poly: HorocyclicPolygon) -> list[float]:
    """Same distances through arccosh(csc psi) in the half-plane.

    b_i goes to 0, then a real Mobius map sends b_{i+1} to infinity; psi is the
    argument of the image of s_i.
    """
    p = poly.p
    out = []
    for i in range(p):
        bi, bj = poly.bases[i], poly.bases[(i + 1) % p]
        z = to_halfplane(to_disk(poly.vertices[i]), bi)
        u = -complex(math.cos(bj - bi), math.sin(bj - bi))
        if abs(1 - u) > 1e-12:
            wj = (1j * (1 + u) / (1 - u)).real
            # z -> z / (wj - z) fixes 0 and sends wj to infinity; keep the upper half-plane
            z = z / (wj - z) if wj > 0 else -z / (wj - z)
        psi = math.atan2(z.imag, z.real)
        out.append(math.acosh(1 / math.sin(psi)))
    return out


def angle_identity_residuals(poly: HorocyclicPolygon) -> list[float]:
    """|cosh(delta_i) sin(alpha_i / 2) - 1| per vertex."""
    return [abs(math.cosh(d) * math.sin(a / 2) - 1)
            for d, a in zip(distances(poly), vertex_angles(poly))]


def deform_polygon(poly: HorocyclicPolygon, k: float, tol: float = TOL) -> tuple:
    """Move every s_i along the perpendicular to b_i b_{i+1} so cosh delta becomes cosh delta / k.

    Returns (new polygon, max common-horocycle residual).
    """
    if not k > 0:
        raise ValueError("k must be positive")
    p = poly.p
    moved = []
    for i in range(p):
        bi, bj = ideal(poly.bases[i]), ideal(poly.bases[(i + 1) % p])
        x = poly.vertices[i]
        n = _normal(bi, bj)
        sh = _mink(x, n)
        ch = math.sqrt(1 + sh * sh)
        foot = (x - sh * n) / ch
        ch2 = ch / k
        if ch2 < 1 - tol:
            raise VerticesMerge(f"vertex {i} would cross the geodesic")
        sh2 = math.copysign(math.sqrt(max(ch2 * ch2 - 1, 0.0)), sh)
        moved.append(ch2 * foot + sh2 * n)
    residual = 0.0
    sizes = []
    for i in range(p):
        b = ideal(poly.bases[i])
        a, c = -_mink(moved[i - 1], b), -_mink(moved[i], b)
        residual = max(residual, abs(a - c) / max(a, c))
        sizes.append(c)
    hs = [Horocycle(h.base, s) for h, s in zip(poly.horocycles, sizes)]
    out = HorocyclicPolygon(hs, moved)
    if p > 2 and not order_ok(out):
        raise VerticesMerge("adjacent vertices merge")
    try:
        _validate(out, tol)
    except RedundantHorodisk as e:
        raise VerticesMerge(str(e)) from None
    return out, residual


def truncation_threshold(poly: HorocyclicPolygon, i: int, base: float) -> float:
    """Largest size of a horocycle at `base` (between b_i and b_{i+1}) that cuts off s_i."""
    return Horocycle(base, 1.0).level(poly.vertices[i])


def truncate(poly: HorocyclicPolygon, i: int, base: float, size: float) -> HorocyclicPolygon:
    """Insert a horocycle between b_i and b_{i+1}; p grows by one."""
    bases = poly.bases[: i + 1] + [base] + poly.bases[i + 1:]
    sizes = poly.sizes[: i + 1] + [size] + poly.sizes[i + 1:]
    return horocyclic_polygon(bases, sizes)


def random_polygon(rng: np.random.Generator, p: int, restarts: int = 100) -> HorocyclicPolygon:
    """Random polygon with p sides, grown from a 2-gon by successive truncation."""
    for _ in range(restarts):
        try:
            return _grow(rng, p)
        except RuntimeError:
            continue
    raise RuntimeError("no valid polygon found")


def _grow(rng: np.random.Generator, p: int, max_tries: int = 50) -> HorocyclicPolygon:
    b0 = rng.uniform(0, 2 * math.pi)
    b1 = b0 - rng.uniform(0.5, 2 * math.pi - 0.5)
    d = np.exp(rng.normal(0.7, 0.4, size=2))
    k = 1 - math.cos(b0 - b1)
    d *= max(1.0, math.sqrt(1.5 * k / (2 * d[0] * d[1])))   # make the two horocycles meet
    poly = horocyclic_polygon([b0 % (2 * math.pi), b1 % (2 * math.pi)], [float(x) for x in d])
    while poly.p < p:
        for _ in range(max_tries):
            i = int(rng.integers(poly.p))
            lo, hi = poly.bases[i], poly.bases[(i + 1) % poly.p]
            gap = (lo - hi) % (2 * math.pi)
            base = (lo - gap * rng.uniform(0.2, 0.8)) % (2 * math.pi)
            cut = truncation_threshold(poly, i, base) * rng.uniform(0.85, 0.999)
            try:
                poly = truncate(poly, i, base, cut)
                break
            except (NoIntersection, RedundantHorodisk):
                continue
        else:
            raise RuntimeError("no valid truncation found")
    return poly
