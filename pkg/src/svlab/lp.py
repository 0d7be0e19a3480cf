"""Small dense two-phase simplex over exact rationals.

Bland's rule throughout, so results are deterministic and cycling cannot
occur. Sized for a few dozen rows; callers with large constraint families
add rows lazily (see ``nochka``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class Constraint:
    coeffs: Tuple[Fraction, ...]
    sense: str
    rhs: Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[Tuple[Fraction, ...]]
    value: Optional[Fraction]


def _pivot(T: List[List[Fraction]], basis: List[int], r: int, c: int) -> None:
    prow = T[r]
    inv = 1 / prow[c]
    if inv != 1:
        T[r] = prow = [v * inv for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    basis[r] = c


def _run(T, basis, obj_row: int, allowed: int) -> str:
    """Maximize the objective stored (negated) in T[obj_row]; Bland's rule."""
    m = len(basis)
    while True:
        obj = T[obj_row]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def solve(
    objective: Sequence,
    constraints: Sequence[Constraint],
    maximize: bool = True,
) -> LPResult:
    """Optimize objective . x subject to constraints and x >= 0."""
    nv = len(objective)
    rows = []
    for con in constraints:
        coeffs = [Fraction(c) for c in con.coeffs]
        if len(coeffs) != nv:
            raise ValueError("constraint width does not match objective")
        rhs = Fraction(con.rhs)
        sense = con.sense
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            sense = {LE: GE, GE: LE, EQ: EQ}[sense]
        rows.append((coeffs, sense, rhs))

    n_slack = sum(1 for _, s, _ in rows if s in (LE, GE))
    n_art = sum(1 for _, s, _ in rows if s in (GE, EQ))
    width = nv + n_slack + n_art + 1
    T: List[List[Fraction]] = []
    basis: List[int] = []
    si = nv
    ai = nv + n_slack
    art_cols = []
    for coeffs, sense, rhs in rows:
        row = coeffs + [Fraction(0)] * (n_slack + n_art) + [rhs]
        if sense == LE:
            row[si] = Fraction(1)
            basis.append(si)
            si += 1
        elif sense == GE:
            row[si] = Fraction(-1)
            si += 1
            row[ai] = Fraction(1)
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        else:
            row[ai] = Fraction(1)
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        T.append(row)
    m = len(T)

    # phase 1: maximize -(sum of artificials)
    if art_cols:
        p1 = [Fraction(0)] * width
        for c in art_cols:
            p1[c] = Fraction(1)
        for i, b in enumerate(basis):
            if b in art_cols:
                p1 = [a - v for a, v in zip(p1, T[i])]
        T.append(p1)
        _run(T, basis, m, width - 1)
        if T[m][-1] != 0:
            return LPResult("infeasible", None, None)
        T.pop()
        # drive zero-level artificials out of the basis
        art = set(art_cols)
        for i in range(m):
            if basis[i] in art:
                col = next((j for j in range(nv + n_slack) if T[i][j]), None)
                if col is not None:
                    _pivot(T, basis, i, col)
        keep = [i for i in range(m) if basis[i] not in art]
        T = [T[i] for i in keep]
        basis = [basis[i] for i in keep]
        m = len(T)
        limit = nv + n_slack
        T = [row[:limit] + [row[-1]] for row in T]
        width = limit + 1

    sign = 1 if maximize else -1
    obj = [Fraction(-sign * Fraction(c)) for c in objective] + [Fraction(0)] * (width - 1 - nv) + [Fraction(0)]
    for i, b in enumerate(basis):
        if obj[b]:
            f = obj[b]
            obj = [a - f * v for a, v in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, m, width - 1)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = T[i][-1]
    value = sum((Fraction(c) * v for c, v in zip(objective, x)), Fraction(0))
    return LPResult("optimal", tuple(x), value)
