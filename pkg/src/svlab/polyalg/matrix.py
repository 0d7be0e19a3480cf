"""Exact matrices over Q(i) and reduced row-echelon form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .scalar import ONE, ZERO, GaussScalar, as_scalar


class ExactMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        grid = [[as_scalar(x) for x in row] for row in entries]
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.entries: List[List[GaussScalar]] = grid
        self.rows = len(grid)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(col) for col in zip(*self.entries)], self.rows) if self.rows else ExactMatrix([], 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"


@dataclass(frozen=True)
class RREF:
    rank: int
    pivot_cols: Tuple[int, ...]
    reduced: ExactMatrix


def rref(m: ExactMatrix | Sequence[Sequence]) -> RREF:
    """Gauss-Jordan elimination. Pivot = first column with a nonzero entry
    at or below the current row, first such row. Zero rows go last."""
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if a[i][c]:
                p = i
                break
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        prow = a[r]
        inv = prow[c].inverse()
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if not f:
                continue
            for j in nz:
                row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return RREF(len(pivots), tuple(pivots), ExactMatrix(a, ncols))


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return rref(vectors).rank


def nullspace(m: ExactMatrix | Sequence[Sequence]) -> List[List[GaussScalar]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    res = rref(m)
    ncols = res.reduced.cols
    piv = res.pivot_cols
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for fcol in free:
        x = [ZERO] * ncols
        x[fcol] = ONE
        for i, pc in enumerate(piv):
            x[pc] = -res.reduced.entries[i][fcol]
        basis.append(x)
    return basis


def mat_vec_rows(vectors: Sequence[Sequence[GaussScalar]], basis_cols: Sequence[Sequence[GaussScalar]]) -> List[List[GaussScalar]]:
    """Row i of the result is vectors[i] @ B where B has the given columns."""
    out = []
    for v in vectors:
        row = []
        for col in basis_cols:
            acc = ZERO
            for x, y in zip(v, col):
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out
