"""Exact two-phase simplex over ``fractions.Fraction``.

Small dense tableaus only; Bland's rule guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(T, basis, cost, allowed) -> str:
    """Minimise ``cost . x`` on the tableau in place. Returns a status string."""
    while True:
        # reduced costs, entering column chosen by smallest index (Bland)
        enter = None
        for j in allowed:
            if j in basis:
                continue
            r = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(len(T)))
            if r < 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave, best = None, None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def linprog(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    maximize: bool = False,
) -> LPResult:
    """Solve ``min/max c.x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``x >= 0``.

    All data is converted to ``Fraction``; the returned point is exact.
    """
    n = len(c)
    n_ub = len(A_ub)
    if len(A_eq) != len(b_eq) or len(A_ub) != len(b_ub):
        raise ValueError("constraint matrix and right-hand side have different lengths")
    if any(len(row) != n for row in (*A_eq, *A_ub)):
        raise ValueError(f"every constraint row must have {n} entries")
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        slack = [ZERO] * n_ub
        slack[k] = ONE
        rows.append([Fraction(v) for v in a] + slack)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [ZERO] * n_ub)
        rhs.append(Fraction(b))
    ncols = n + n_ub
    cost = [Fraction(v) for v in c] + [ZERO] * n_ub
    if maximize:
        cost = [-v for v in cost]

    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: artificials in columns ncols .. ncols+m-1
    T = []
    for i in range(m):
        art = [ZERO] * m
        art[i] = ONE
        T.append(rows[i] + art + [rhs[i]])
    basis = [ncols + i for i in range(m)]
    cost1 = [ZERO] * ncols + [ONE] * m
    _simplex(T, basis, cost1, range(ncols + m))
    if sum(T[i][-1] for i in range(m) if basis[i] >= ncols) > 0:
        return LPResult("infeasible")

    # drive zero-level artificials out of the basis; drop redundant rows
    keep = []
    for i in range(m):
        if basis[i] >= ncols:
            col = next((j for j in range(ncols) if T[i][j] != 0), None)
            if col is None:
                continue
            _pivot(T, basis, i, col)
        keep.append(i)
    T = [T[i][:ncols] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    status = _simplex(T, basis, cost, range(ncols))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [ZERO] * ncols
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    value = sum(cv * xv for cv, xv in zip(cost, x))
    if maximize:
        value = -value
    return LPResult("optimal", tuple(x[:n]), value)
