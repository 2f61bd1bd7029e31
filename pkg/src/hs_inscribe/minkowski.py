"""Lorentzian linear algebra on R^4 with the form x0^2 + x1^2 - x2^2 + x3^2.

x2 is the time coordinate. In the affine chart x3 = 1 the ideal boundary of
hyperbolic space is the two-sheeted hyperboloid x2 = +-sqrt(x0^2 + x1^2 + 1).
Points with q < 0 are hyperbolic, q > 0 de Sitter, q = 0 on the boundary.

Functions accept plain sequences so that Fraction inputs stay exact; the
numpy helpers at the bottom are for batch work.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from numbers import Real
from typing import Sequence

import numpy as np

# diagonal of the form
SIGNATURE = (1, 1, -1, 1)
J = np.diag(np.array(SIGNATURE, dtype=float))

TAU_LIGHT = 1e-9
KILLING_STEP = 1e-5


class ZeroVector(ValueError):
    """A projective representative was the zero vector."""


class NotOnQuadric(ValueError):
    """A point expected on the ideal boundary has q(x) != 0."""


class OnLightCone(ValueError):
    """The Pogorelov map is undefined at the given chart point."""


class SpaceClass(Enum):
    SPACE = "space"
    TIME = "time"
    LIGHT = "light"


Vec4 = Sequence[Real]


@dataclass(frozen=True)
class ProjPlane:
    """Projective plane {x : <x, n> = 0}, stored by its polar vector n."""

    n: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(self.n))
        if len(self.n) != 4:
            raise ValueError("plane normal must have 4 coordinates")


@dataclass(frozen=True)
class ProjLine:
    """Projective line spanned by two representatives."""

    a: tuple
    b: tuple


def inner(x: Vec4, y: Vec4):
    """Bilinear form <x, y> with signature (+, +, -, +)."""
    return x[0] * y[0] + x[1] * y[1] - x[2] * y[2] + x[3] * y[3]


def q(x: Vec4):
    return inner(x, x)


def _euclid_sq(x) -> float:
    return float(sum(float(c) * float(c) for c in x))


def _sign_with_tol(value, scale: float, tol: float) -> int:
    # exact zero test for exact inputs, relative test otherwise
    if isinstance(value, float) or isinstance(value, np.floating):
        if abs(value) <= tol * scale:
            return 0
    if value == 0:
        return 0
    return 1 if value > 0 else -1


def classify(obj, tol: float = TAU_LIGHT) -> SpaceClass:
    """Causal type of a point, a line or a plane.

    Points: q > 0 space-like, q < 0 time-like.  Lines: the restricted form is
    definite (space-like), of signature (1, 1) (time-like, the line crosses
    H^3) or degenerate (light-like, tangent to the quadric).  Planes are
    classified through their polar vector n: <n, n> < 0 space-like,
    <n, n> > 0 time-like.
    """
    if isinstance(obj, ProjPlane):
        n = obj.n
        if _euclid_sq(n) == 0:
            raise ZeroVector("zero plane normal")
        s = _sign_with_tol(q(n), _euclid_sq(n), tol)
        return {0: SpaceClass.LIGHT, 1: SpaceClass.TIME, -1: SpaceClass.SPACE}[s]
    if isinstance(obj, ProjLine):
        a, b = obj.a, obj.b
        na, nb = _euclid_sq(a), _euclid_sq(b)
        if na == 0 or nb == 0:
            raise ZeroVector("zero line representative")
        det = q(a) * q(b) - inner(a, b) ** 2
        s = _sign_with_tol(det, na * nb, tol)
        if s == 0:
            return SpaceClass.LIGHT
        return SpaceClass.SPACE if s > 0 else SpaceClass.TIME
    x = tuple(obj)
    nx = _euclid_sq(x)
    if nx == 0:
        raise ZeroVector("zero vector")
    s = _sign_with_tol(q(x), nx, tol)
    return {0: SpaceClass.LIGHT, 1: SpaceClass.SPACE, -1: SpaceClass.TIME}[s]


def polar(obj):
    """Polarity with respect to the form.

    A point maps to the plane of vectors orthogonal to it, a plane maps to its
    normal vector.  polar(polar(x)) == x.
    """
    if isinstance(obj, ProjPlane):
        if _euclid_sq(obj.n) == 0:
            raise ZeroVector("zero plane normal")
        return tuple(obj.n)
    x = tuple(obj)
    if _euclid_sq(x) == 0:
        raise ZeroVector("zero vector")
    return ProjPlane(x)


def plane_through(points: Sequence[Vec4]) -> ProjPlane:
    """Plane through three or more points (least squares for extra points)."""
    m = np.array([[float(c) for c in p] for p in points]) @ J
    _, s, vt = np.linalg.svd(m)
    n = vt[-1]
    return ProjPlane(tuple(float(c) for c in n / np.linalg.norm(n)))


def ideal_point(sheet: int, u0, u1):
    """Point of the quadric over (u0, u1) on the sheet with sign `sheet`."""
    if sheet not in (1, -1):
        raise ValueError("sheet must be +1 or -1")
    return (u0, u1, sheet * math.sqrt(u0 * u0 + u1 * u1 + 1), 1)


def on_quadric(x: Vec4, tol: float = 1e-9) -> bool:
    return abs(float(q(x))) <= tol * _euclid_sq(x)


def boundary_to_complex(x: Vec4, tol: float = 1e-9) -> complex:
    """Identify a quadric point with a point of the Riemann sphere.

    zeta = (x0 + i x1) / (x2 + x3), or (x2 - x3) / (x0 - i x1) when the first
    denominator vanishes.  Returns complex infinity as cmath.inf.
    """
    x = [float(c) for c in x]
    scale = _euclid_sq(x)
    if scale == 0:
        raise ZeroVector("zero vector")
    if abs(q(x)) > tol * scale:
        raise NotOnQuadric(f"q(x) = {q(x):.3e}")
    den = x[2] + x[3]
    if abs(den) > tol * math.sqrt(scale):
        return complex(x[0], x[1]) / den
    alt = complex(x[0], -x[1])
    if abs(alt) <= tol * math.sqrt(scale):
        return complex(cmath.inf, 0)
    return (x[2] - x[3]) / alt


def chordal_distance(z: complex, w: complex) -> float:
    """Chordal metric on the Riemann sphere; handles infinity."""
    zi, wi = cmath.isinf(z), cmath.isinf(w)
    if zi and wi:
        return 0.0
    if zi:
        return 2.0 / math.sqrt(1 + abs(w) ** 2)
    if wi:
        return 2.0 / math.sqrt(1 + abs(z) ** 2)
    return 2 * abs(z - w) / math.sqrt((1 + abs(z) ** 2) * (1 + abs(w) ** 2))


# ---------------------------------------------------------------------------
# isometries and the infinitesimal Pogorelov map

def killing_generators() -> list[np.ndarray]:
    """Basis of the Lie algebra o(3,1) for the form J (A^T J + J A = 0)."""
    gens = []
    for i in range(4):
        for j in range(i + 1, 4):
            a = np.zeros((4, 4))
            # A = E_ij * s_j - E_ji * s_i keeps J A antisymmetric
            a[i, j] = SIGNATURE[j]
            a[j, i] = -SIGNATURE[i]
            gens.append(a)
    return gens


def random_lorentz(rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """exp of a random element of o(3,1); preserves the form."""
    from scipy.linalg import expm

    a = sum(rng.normal(scale=scale) * g for g in killing_generators())
    return expm(a)


def chart_field(a: np.ndarray, y: Sequence[float]) -> np.ndarray:
    """Projective vector field of a generator, in chart coordinates."""
    x = np.array([y[0], y[1], y[2], 1.0])
    ax = a @ x
    return ax[:3] - np.asarray(y, dtype=float) * ax[3]


def _mink3(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]


def pogorelov(y: Sequence[float], v: Sequence[float], tol: float = 1e-9) -> np.ndarray:
    """Pi = Xi o Upsilon at chart point y applied to the tangent vector v.

    The chart centre is the origin, polar to the plane at infinity.  v splits
    into a radial part and a part orthogonal to the radius (the HS and the
    Minkowski orthogonality agree here).  The radial part is scaled by 1/q(y, 1),
    the signed square root of the ratio of the squared HS and Minkowski norms of
    the unit radial vector.  Xi then flips the time coordinate.
    """
    y = np.asarray(y, dtype=float)[:3]
    v = np.asarray(v, dtype=float)
    m = _mink3(y, y)
    scale = float(y @ y)
    if scale == 0.0:
        out = v.copy()
    else:
        if abs(m) <= tol * scale:
            raise OnLightCone("point lies on the light cone of the chart centre")
        qx = m + 1.0
        if abs(qx) <= tol * (scale + 1.0):
            raise OnLightCone("radial factor blows up on the quadric")
        vr = (_mink3(v, y) / m) * y
        out = vr / qx + (v - vr)
    out = out.copy()
    out[2] = -out[2]
    return out


def symmetrized_gradient_norm(field, y: Sequence[float], h: float = KILLING_STEP) -> float:
    """Frobenius norm of the symmetric part of the Jacobian of `field` at y.

    Central differences with step h; zero for Euclidean Killing fields.
    """
    y = np.asarray(y, dtype=float)
    jac = np.empty((3, 3))
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        jac[:, k] = (field(y + e) - field(y - e)) / (2 * h)
    return float(np.linalg.norm(jac + jac.T) / 2)
