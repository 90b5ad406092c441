"""Exact two-phase simplex over the rationals.

Small dense tableau, Bland's rule for anti-cycling. Intended for desk-scale
feasibility questions where a floating-point LP is not trustworthy enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        piv = row[c]
        if piv != ONE:
            row = [v / piv for v in row]
            self.rows[r] = row
            self.rhs[r] /= piv
        nz = [j for j, v in enumerate(row) if v]
        b = self.rhs[r]
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[k] -= f * b
        self.basis[r] = c

    def reduced_costs(self, cost):
        red = list(cost)
        for r, bvar in enumerate(self.basis):
            cb = cost[bvar]
            if cb:
                for j, v in enumerate(self.rows[r]):
                    if v:
                        red[j] -= cb * v
        return red

    def optimize(self, cost, allowed):
        """Minimize ``cost`` over columns in ``allowed``; returns status."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in allowed if red[j] < 0), None)
            if entering is None:
                return "optimal"
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)


def solve_lp(c, A_eq=(), b_eq=(), A_ub=(), b_ub=()) -> LPResult:
    """Minimize ``c @ x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``x >= 0``.

    All coefficients are converted to Fractions; the returned point is an
    exact basic solution.
    """
    n = len(c)
    cost = [Fraction(v) for v in c]
    eq_rows = [[Fraction(v) for v in row] for row in A_eq]
    ub_rows = [[Fraction(v) for v in row] for row in A_ub]
    n_slack = len(ub_rows)
    m = len(eq_rows) + n_slack
    width = n + n_slack + m  # structural, slack, artificial

    rows, rhs = [], []
    for row, b in zip(eq_rows, b_eq):
        rows.append(row + [ZERO] * n_slack)
        rhs.append(Fraction(b))
    for k, (row, b) in enumerate(zip(ub_rows, b_ub)):
        slack = [ZERO] * n_slack
        slack[k] = ONE
        rows.append(row + slack)
        rhs.append(Fraction(b))
    for r in range(m):
        if len(rows[r]) != n + n_slack:
            raise ValueError("constraint row has the wrong length")
        if rhs[r] < 0:
            rows[r] = [-v for v in rows[r]]
            rhs[r] = -rhs[r]
        art = [ZERO] * m
        art[r] = ONE
        rows[r] = rows[r] + art

    tab = _Tableau(rows, rhs, [n + n_slack + r for r in range(m)])
    n_real = n + n_slack
    phase1 = [ZERO] * n_real + [ONE] * m
    tab.optimize(phase1, range(width))
    if sum(tab.rhs[r] for r, b in enumerate(tab.basis) if b >= n_real) != 0:
        return LPResult("infeasible")

    # drive zero-valued artificials out of the basis; drop redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n_real:
            col = next((j for j in range(n_real) if tab.rows[r][j]), None)
            if col is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1

    phase2 = cost + [ZERO] * (width - n)
    status = tab.optimize(phase2, range(n_real))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [ZERO] * n_real
    for r, b in enumerate(tab.basis):
        x[b] = tab.rhs[r]
    x = tuple(x[:n])
    return LPResult("optimal", x, sum(ci * xi for ci, xi in zip(cost, x)))
