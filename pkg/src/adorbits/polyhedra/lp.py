"""Exact two-phase simplex over rationals (Bland's rule, dense tableau).

Small and slow by design: it backs redundancy and feasibility tests on
systems with a few dozen rows.  Variables are free; they are split into
nonnegative parts internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

Row = tuple[Sequence[Fraction], Fraction]


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(tab: list[list[Fraction]], r: int, c: int) -> None:
    prow = tab[r]
    inv = 1 / prow[c]
    if inv != 1:
        prow = [a * inv for a in prow]
        tab[r] = prow
    nz = [j for j, a in enumerate(prow) if a != 0]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            continue
        for j in nz:
            row[j] -= f * prow[j]


def _run(tab, basis, allowed: int) -> bool:
    """Optimize the tableau whose last row is the reduced-cost row.

    Only columns ``< allowed`` may enter.  Returns False when unbounded.
    """
    m = len(basis)
    obj = tab[m]
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return False
        _pivot(tab, leave, enter)
        basis[leave] = enter


def minimize(
    cost: Sequence[Fraction],
    inequalities: Sequence[Row] = (),
    equalities: Sequence[Row] = (),
) -> LPResult:
    """Minimize ``cost . x`` subject to ``n . x >= b`` and ``e . x = d``."""
    n = len(cost)
    rows = [(list(a), Fraction(b), True) for a, b in inequalities]
    rows += [(list(a), Fraction(b), False) for a, b in equalities]
    m = len(rows)
    n_slack = sum(1 for r in rows if r[2])
    n_cols = 2 * n + n_slack + m

    tab: list[list[Fraction]] = []
    slack = 0
    for i, (a, b, is_ineq) in enumerate(rows):
        row = [Fraction(0)] * (n_cols + 1)
        for j, v in enumerate(a):
            row[j] = Fraction(v)
            row[n + j] = -Fraction(v)
        if is_ineq:
            row[2 * n + slack] = Fraction(-1)
            slack += 1
        row[-1] = b
        if b < 0:
            row = [-v for v in row]
        row[2 * n + n_slack + i] = Fraction(1)
        tab.append(row)
    basis = [2 * n + n_slack + i for i in range(m)]

    # phase 1: minimize the sum of artificials
    obj = [Fraction(0)] * (n_cols + 1)
    for i in range(m):
        obj[2 * n + n_slack + i] = Fraction(1)
    for row in tab:
        obj = [o - v for o, v in zip(obj, row)]
    tab.append(obj)
    _run(tab, basis, 2 * n + n_slack)
    if tab[m][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out of the basis, dropping redundant rows
    n_real = 2 * n + n_slack
    i = 0
    while i < len(basis):
        if basis[i] >= n_real:
            c = next((j for j in range(n_real) if tab[i][j] != 0), None)
            if c is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, i, c)
            basis[i] = c
        i += 1
    m = len(basis)

    # phase 2
    full_cost = [Fraction(c) for c in cost] + [-Fraction(c) for c in cost] + [Fraction(0)] * n_slack
    # artificial columns stay in the tableau even when rows were dropped
    obj = full_cost + [Fraction(0)] * (n_cols - n_real) + [Fraction(0)]
    for i, bvar in enumerate(basis):
        cb = full_cost[bvar]
        if cb != 0:
            obj = [o - cb * v for o, v in zip(obj, tab[i])]
    tab[m] = obj
    if not _run(tab, basis, n_real):
        return LPResult(UNBOUNDED)
    values = [Fraction(0)] * n_real
    for i, bvar in enumerate(basis):
        values[bvar] = tab[i][-1]
    x = tuple(values[j] - values[n + j] for j in range(n))
    value = sum((Fraction(c) * xi for c, xi in zip(cost, x)), Fraction(0))
    return LPResult(OPTIMAL, value, x)


def maximize(cost, inequalities=(), equalities=()) -> LPResult:
    res = minimize([-Fraction(c) for c in cost], inequalities, equalities)
    if res.status == OPTIMAL:
        return LPResult(OPTIMAL, -res.value, res.x)
    return res


def feasible_point(inequalities: Sequence[Row], equalities: Sequence[Row], dim: int):
    res = minimize([Fraction(0)] * dim, inequalities, equalities)
    return res.x if res.status == OPTIMAL else None
