"""Small exact linear programming over Fractions.

Two-phase dense tableau simplex with Bland's rule, for problems of the form

    maximize c.x  subject to  A x = b,  x >= 0.

Desk-scale only (a few hundred columns).  The optimal dual vector is read from
the final tableau so callers can check optimality or infeasibility by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LPResult:
    status: str                 # "optimal", "infeasible" or "unbounded"
    x: list | None = None
    value: Fraction | None = None
    dual: list | None = None    # y.A >= c at an optimum; y.A <= 0 < y.b if infeasible


def _pivot(t: list[list[Fraction]], r: int, c: int) -> None:
    pr = t[r]
    inv = 1 / pr[c]
    if inv != 1:
        t[r] = pr = [v * inv for v in pr]
    for i, row in enumerate(t):
        if i != r:
            f = row[c]
            if f:
                t[i] = [a - f * b for a, b in zip(row, pr)]


def _simplex(t, basis, cost_row: int, ncols: int, allowed) -> str:
    """Optimize in place; the objective row holds reduced costs (minimization form)."""
    while True:
        obj = t[cost_row]
        enter = next((j for j in range(ncols) if allowed(j) and obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(len(basis)):
            a = t[i][enter]
            if a > 0:
                ratio = t[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(t, best[1], enter)
        basis[best[1]] = enter


def maximize(c, a_rows, b) -> LPResult:
    m, n = len(a_rows), len(c)
    c = [Fraction(v) for v in c]
    rows = []
    rhs = []
    for row, bi in zip(a_rows, b):
        row = [Fraction(v) for v in row]
        bi = Fraction(bi)
        if bi < 0:
            row, bi = [-v for v in row], -bi
        rows.append(row)
        rhs.append(bi)
    sign = [1 if Fraction(bi) >= 0 else -1 for bi in b]
    # columns: x (n), artificials (m), rhs
    t = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        t.append(rows[i] + art + [rhs[i]])
    basis = [n + i for i in range(m)]
    phase1 = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        phase1 = [p - v for p, v in zip(phase1, t[i])]
    for j in range(n, n + m):
        phase1[j] = Fraction(0)
    t.append(phase1)
    _simplex(t, basis, m, n + m, lambda j: True)
    if t[m][-1] != 0:
        # phase-one duals y_i = 1 - (reduced cost of artificial i) satisfy
        # y.A <= 0 and y.b > 0 once mapped back to the original row signs
        y = [(1 - t[m][n + i]) * sign[i] for i in range(m)]
        return LPResult("infeasible", dual=y)
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if t[i][j] != 0), None)
            if j is not None:
                _pivot(t, i, j)
                basis[i] = j
    t.pop()
    obj = [-v for v in c] + [Fraction(0)] * m + [Fraction(0)]
    for i, bcol in enumerate(basis):
        if bcol < n and obj[bcol]:
            f = obj[bcol]
            obj = [o - f * v for o, v in zip(obj, t[i])]
    t.append(obj)
    status = _simplex(t, basis, m, n + m, lambda j: j < n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        if bcol < n:
            x[bcol] = t[i][-1]
    # reduced cost of artificial i equals y_i (for the sign-normalized row)
    y = [t[m][n + i] * sign[i] for i in range(m)]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult("optimal", x=x, value=value, dual=y)
