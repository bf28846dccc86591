"""Dense two-phase simplex over exact rationals.

Solves  max c.v  subject to  A v = b, v >= 0  with Fraction arithmetic and
Bland's anti-cycling rule.  Sized for the small systems that arise from
edge-polytope membership (tens of rows/columns), where exactness matters
more than speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    solution: tuple[Fraction, ...] | None = None
    # present when infeasible: y with y.(column j) <= 0 for every column of A
    # and y.b > 0, certifying that A v = b, v >= 0 has no solution
    farkas: tuple[Fraction, ...] | None = None


class _Tableau:
    """Row-reduced tableau T = B^-1 [A | b] with an explicit basis."""

    def __init__(self, matrix: list[list[Fraction]], basis: list[int]):
        self.rows = matrix          # m rows, each of length ncols + 1 (rhs last)
        self.basis = basis          # basis[i] = column index basic in row i

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) - 1

    def rhs(self, i: int) -> Fraction:
        return self.rows[i][-1]

    def pivot(self, row: int, col: int) -> None:
        piv = self.rows[row][col]
        if piv == 0:
            raise ArithmeticError("pivot on zero entry")
        inv = _ONE / piv
        self.rows[row] = [v * inv for v in self.rows[row]]
        for r in range(self.m):
            if r == row:
                continue
            factor = self.rows[r][col]
            if factor == 0:
                continue
            src = self.rows[row]
            self.rows[r] = [v - factor * s for v, s in zip(self.rows[r], src)]
        self.basis[row] = col

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        # rc[j] = c[j] - sum_i c[basis[i]] * T[i][j]; zero for basic columns
        rc = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb == 0:
                continue
            row = self.rows[i]
            for j in range(self.ncols):
                if row[j] != 0:
                    rc[j] -= cb * row[j]
        return rc

    def objective_value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * self.rows[i][-1] for i, b in enumerate(self.basis)), _ZERO)

    def solution(self, nvars: int) -> tuple[Fraction, ...]:
        out = [_ZERO] * self.ncols
        for i, b in enumerate(self.basis):
            out[b] = self.rows[i][-1]
        return tuple(out[:nvars])


def _run_simplex(tab: _Tableau, cost: list[Fraction], allowed: int) -> str:
    """Maximize cost over the tableau; only columns < allowed may enter.

    Bland's rule: entering column is the lowest-index one with positive
    reduced cost; the leaving row breaks ratio ties by lowest basic index.
    """
    while True:
        rc = tab.reduced_costs(cost)
        entering = -1
        for j in range(allowed):
            if rc[j] > 0:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        leaving = -1
        best: Fraction | None = None
        for i in range(tab.m):
            coeff = tab.rows[i][entering]
            if coeff > 0:
                ratio = tab.rhs(i) / coeff
                if best is None or ratio < best or (
                    ratio == best and tab.basis[i] < tab.basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return UNBOUNDED
        tab.pivot(leaving, entering)


def solve_equality_lp(
    objective: Sequence[Fraction],
    lhs: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
) -> LPResult:
    """Maximize objective.v subject to lhs v = rhs, v >= 0, exactly."""
    m = len(lhs)
    n = len(objective)
    if any(len(row) != n for row in lhs) or len(rhs) != m:
        raise ValueError("inconsistent LP dimensions")
    if m == 0:
        return LPResult(status=OPTIMAL, value=_ZERO, solution=tuple([_ZERO] * n))

    # phase 1: artificial basis, rows flipped so rhs >= 0
    matrix: list[list[Fraction]] = []
    flipped: list[bool] = []
    for i in range(m):
        row = [Fraction(v) for v in lhs[i]]
        b = Fraction(rhs[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
            flipped.append(True)
        else:
            flipped.append(False)
        art = [_ONE if k == i else _ZERO for k in range(m)]
        matrix.append(row + art + [b])
    tab = _Tableau(matrix, basis=list(range(n, n + m)))

    phase1_cost = [_ZERO] * n + [Fraction(-1)] * m
    status = _run_simplex(tab, phase1_cost, allowed=n + m)
    if status != OPTIMAL:
        raise ArithmeticError("phase 1 cannot be unbounded")

    if tab.objective_value(phase1_cost) != 0:
        # infeasible; read the dual prices off the artificial block (which
        # started as the identity): prices = c_B B^-1.  At a phase-1 optimum
        # with value < 0, -prices separates, after undoing the row flips.
        prices = [_ZERO] * m
        for i, b in enumerate(tab.basis):
            if phase1_cost[b] == 0:
                continue
            for k in range(m):
                prices[k] += phase1_cost[b] * tab.rows[i][n + k]
        y = [v if flip else -v for v, flip in zip(prices, flipped)]
        dot_b = sum((yi * Fraction(bi) for yi, bi in zip(y, rhs)), _ZERO)
        if dot_b <= 0:
            raise ArithmeticError("Farkas certificate failed y.b > 0 check")
        for j in range(n):
            col = sum((y[i] * Fraction(lhs[i][j]) for i in range(m)), _ZERO)
            if col > 0:
                raise ArithmeticError("Farkas certificate failed y.A <= 0 check")
        return LPResult(status=INFEASIBLE, farkas=tuple(y))

    # drive any zero-level artificials out of the basis
    for i in range(tab.m):
        if tab.basis[i] >= n:
            target = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if target is not None:
                tab.pivot(i, target)
    # drop redundant rows still pinned to an artificial
    keep = [i for i in range(tab.m) if tab.basis[i] < n]
    tab.rows = [tab.rows[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    phase2_cost = [Fraction(v) for v in objective] + [_ZERO] * m
    status = _run_simplex(tab, phase2_cost, allowed=n)
    if status == UNBOUNDED:
        return LPResult(status=UNBOUNDED)
    return LPResult(
        status=OPTIMAL,
        value=tab.objective_value(phase2_cost),
        solution=tab.solution(n),
    )
