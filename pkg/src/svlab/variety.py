"""Graded data of a projective variety V in P^n.

Everything here is computed from the user-supplied generators: the degree-d
piece of the ideal is the span of monomial multiples of generators. That
equals the true ideal piece of V only when the generators generate the
saturated ideal in degree d, which the shipped examples satisfy.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PreconditionError
from .polyalg import (
    ZERO,
    ExactMatrix,
    GaussScalar,
    MultiPoly,
    mono_basis,
    rank,
    rref,
)


@dataclass(frozen=True)
class GradedPiece:
    """Cached data for one degree: the ideal piece in rref form and its complement."""

    degree: int
    ideal_rank: int
    pivot_cols: Tuple[int, ...]
    pivot_rows: Tuple[Tuple[GaussScalar, ...], ...]
    complement: Tuple[int, ...]  # monomial indices not hit by a pivot
    hilbert: int


class VarietyModel:
    """V = zero set of ``generators`` in P^n, of declared dimension k."""

    def __init__(self, n: int, k: int, generators: Sequence[MultiPoly] = ()):
        if n < 1:
            raise PreconditionError("ambient dimension n must be at least 1")
        if not 0 <= k <= n:
            raise PreconditionError(f"declared dimension k={k} must satisfy 0 <= k <= n={n}")
        gens = list(generators)
        for g in gens:
            if g.n_vars != n + 1:
                raise PreconditionError(f"generator {g} has {g.n_vars} variables, expected {n + 1}", g)
            if g.is_zero():
                raise PreconditionError("zero generator", g)
            if not g.is_homogeneous():
                raise PreconditionError(f"generator {g} is not homogeneous", g)
        self.n = n
        self.k = k
        self.generators: Tuple[MultiPoly, ...] = tuple(gens)
        self._cache: Dict[int, GradedPiece] = {}
        self._lock = threading.Lock()

    @property
    def n_vars(self) -> int:
        return self.n + 1

    def augmented(self, extra: Sequence[MultiPoly]) -> "VarietyModel":
        return VarietyModel(self.n, self.k, list(self.generators) + list(extra))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"VarietyModel(n={self.n}, k={self.k}, generators=[{gens}])"

    # -- graded pieces ----------------------------------------------------
    def piece(self, d: int) -> GradedPiece:
        got = self._cache.get(d)
        if got is not None:
            return got
        mat = ideal_graded_piece(self, d)
        red = rref(mat)
        pivot_rows = tuple(tuple(red.reduced.entries[i]) for i in range(red.rank))
        pivset = set(red.pivot_cols)
        comp = tuple(j for j in range(mat.cols) if j not in pivset)
        gp = GradedPiece(d, red.rank, red.pivot_cols, pivot_rows, comp, mat.cols - red.rank)
        with self._lock:
            # idempotent: a racing writer stores an identical value
            self._cache.setdefault(d, gp)
        return self._cache[d]

    def complement_basis(self, d: int) -> List[MultiPoly]:
        """Monomials spanning a complement of the ideal piece: classes form a basis of I_d(V)."""
        basis = mono_basis(self.n_vars, d)
        return [MultiPoly(self.n_vars, {basis[j]: 1}) for j in self.piece(d).complement]


def ideal_graded_piece(V: VarietyModel, d: int) -> ExactMatrix:
    """Rows span {m*g : deg m = d - deg g}, in mono_basis(n+1, d) coordinates."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    n_vars = V.n_vars
    ncols = comb(n_vars - 1 + d, n_vars - 1)
    rows = []
    for g in V.generators:
        e = g.total_degree()
        if e > d:
            continue
        for m in mono_basis(n_vars, d - e):
            rows.append(g.times_monomial(m).to_vector(d))
    return ExactMatrix(rows, ncols)


def hilbert_function(V: VarietyModel, d: int) -> int:
    """H_V(d) = C(n+d, n) - rank of the degree-d ideal piece."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return V.piece(d).hilbert


@dataclass(frozen=True)
class QuotientClass:
    degree: int
    coords: Tuple[GaussScalar, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)


def reduce_vector(V: VarietyModel, vec: List[GaussScalar], d: int) -> List[GaussScalar]:
    """Eliminate pivot-column coordinates using the cached rref of the ideal piece."""
    gp = V.piece(d)
    v = list(vec)
    for pc, row in zip(gp.pivot_cols, gp.pivot_rows):
        c = v[pc]
        if c:
            for j, x in enumerate(row):
                if x:
                    v[j] = v[j] - c * x
    return v


def class_coords(Q: MultiPoly, V: VarietyModel) -> QuotientClass:
    if Q.n_vars != V.n_vars:
        raise PreconditionError("variable count mismatch", Q)
    d = Q.degree
    if d is None:
        raise PreconditionError(f"{Q} is not homogeneous", Q)
    if d < 0:
        d = 0
    v = reduce_vector(V, Q.to_vector(d), d)
    gp = V.piece(d)
    return QuotientClass(d, tuple(v[j] for j in gp.complement))


def family_rank(Qs: Sequence[MultiPoly], V: VarietyModel) -> int:
    if not Qs:
        return 0
    degs = {Q.degree for Q in Qs if not Q.is_zero()}
    if None in degs:
        raise PreconditionError("non-homogeneous member")
    if len(degs) > 1:
        raise PreconditionError(f"members have different degrees {sorted(degs)}")
    vecs = [list(class_coords(Q, V).coords) for Q in Qs]
    return rank(vecs)


def check_dimension(V: VarietyModel, d_start: int = 1) -> Optional[str]:
    """Cross-check the declared k against the growth of H_V.

    Fits a polynomial of degree k through H_V on max(k+2, 4) consecutive
    degrees; returns a warning string on mismatch, else None.
    """
    k = V.k
    npts = max(k + 2, 4)
    ds = list(range(d_start, d_start + npts))
    hs = [hilbert_function(V, d) for d in ds]
    # k-th finite difference constant and nonzero, (k+1)-th zero
    diffs = [Fraction(h) for h in hs]
    for _ in range(k):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    ok = len(set(diffs)) == 1 and diffs[0] > 0
    if not ok:
        return f"declared dimension k={k} does not fit Hilbert values {hs} at degrees {ds}"
    return None


# -- emptiness and subgeneral position -------------------------------------


class Verdict(str, Enum):
    EMPTY = "Empty"
    NONEMPTY = "NonEmpty"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class EmptinessResult:
    verdict: Verdict
    witness_degree: Optional[int]
    hilbert_values: Tuple[int, ...]
    reason: str


def default_d_cap(V: VarietyModel, Qs: Sequence[MultiPoly]) -> int:
    gens = list(V.generators) + list(Qs)
    return sum(g.total_degree() - 1 for g in gens) + V.n + 1


def _degree_bound(V: VarietyModel, Qs: Sequence[MultiPoly]) -> int:
    # ideal with no projective zeros contains every form of degree
    # >= sum of the n+1 largest (deg - 1), plus 1
    degs = sorted((g.total_degree() for g in list(V.generators) + list(Qs)), reverse=True)
    return sum(e - 1 for e in degs[: V.n + 1]) + 1


def is_empty_on_variety(
    V: VarietyModel, Qs: Sequence[MultiPoly], d_cap: Optional[int] = None
) -> EmptinessResult:
    """Decide whether V and the hypersurfaces Qs have a common projective zero.

    Empty is certified by a degree where the augmented ideal fills all forms.
    NonEmpty is certified when there are fewer than n+1 equations, or when
    H stays positive up to the degree bound; otherwise it is the labelled
    stabilization heuristic (positive, constant over k+2 degrees).
    """
    if not Qs:
        raise PreconditionError("need at least one hypersurface")
    for Q in Qs:
        if Q.is_zero() or not Q.is_homogeneous():
            raise PreconditionError(f"{Q} must be a nonzero form", Q)
    if d_cap is None:
        d_cap = default_d_cap(V, Qs)
    aug = V.augmented(Qs)
    n_eq = len(aug.generators)
    bound = _degree_bound(V, Qs)
    values: List[int] = []
    window = V.k + 2
    for d in range(1, d_cap + 1):
        h = hilbert_function(aug, d)
        values.append(h)
        if h == 0:
            return EmptinessResult(Verdict.EMPTY, d, tuple(values), "augmented ideal contains all forms of this degree")
        if n_eq <= V.n:
            return EmptinessResult(Verdict.NONEMPTY, None, tuple(values), f"only {n_eq} equations in P^{V.n}")
        if d >= bound:
            return EmptinessResult(Verdict.NONEMPTY, d, tuple(values), "Hilbert value positive at the degree bound")
        tail = values[-window:]
        if len(tail) == window and len(set(tail)) == 1:
            return EmptinessResult(
                Verdict.NONEMPTY, d, tuple(values), f"heuristic: Hilbert value stable at {tail[0]} over {window} degrees"
            )
    return EmptinessResult(Verdict.INCONCLUSIVE, None, tuple(values), f"no decision up to d_cap={d_cap}")


@dataclass
class HypersurfaceFamily:
    members: List[MultiPoly]
    N: int
    degrees: List[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.degrees:
            self.degrees = [Q.total_degree() for Q in self.members]
        if len(self.degrees) != len(self.members):
            raise PreconditionError("one degree per member required")
        for Q, dq in zip(self.members, self.degrees):
            if Q.is_zero():
                raise PreconditionError("zero hypersurface", Q)
            if Q.degree != dq:
                raise PreconditionError(f"{Q} is not homogeneous of degree {dq}", Q)

    @property
    def q(self) -> int:
        return len(self.members)

    @property
    def d(self) -> int:
        return lcm(*self.degrees)

    def normalized(self) -> List[MultiPoly]:
        """Q_i ** (d / d_i), all of the common degree d."""
        d = self.d
        return [Q ** (d // dq) for Q, dq in zip(self.members, self.degrees)]

    def check_nondegenerate_on(self, V: VarietyModel) -> None:
        """Every normalized member must have a nonzero class in I_d(V)."""
        for i, Q in enumerate(self.normalized()):
            if class_coords(Q, V).is_zero():
                raise PreconditionError(f"hypersurface {i} ({self.members[i]}) contains V", i)


class Position(str, Enum):
    IN_POSITION = "InPosition"
    NOT_IN_POSITION = "NotInPosition"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PositionRow:
    subset: Tuple[int, ...]
    verdict: Verdict
    witness_degree: Optional[int]
    reason: str


@dataclass(frozen=True)
class PositionReport:
    N: int
    verdict: Position
    rows: Tuple[PositionRow, ...]

    @property
    def violations(self) -> List[PositionRow]:
        return [r for r in self.rows if r.verdict is not Verdict.EMPTY]

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "verdict": self.verdict.value,
            "rows": [
                {
                    "subset": list(r.subset),
                    "verdict": r.verdict.value,
                    "witness_degree": r.witness_degree,
                    "reason": r.reason,
                }
                for r in self.rows
            ],
        }


def check_subgeneral(
    V: VarietyModel, family: HypersurfaceFamily, d_cap: Optional[int] = None
) -> PositionReport:
    """Test that every (N+1)-subset of the family misses V."""
    N, q = family.N, family.q
    if q < N + 1:
        raise PreconditionError(f"q={q} hypersurfaces cannot be tested for N={N}: need q >= N+1")
    rows = []
    # zero sets of Q and Q^(d/d_i) coincide, so test the lower-degree forms
    for R in itertools.combinations(range(q), N + 1):
        res = is_empty_on_variety(V, [family.members[i] for i in R], d_cap)
        rows.append(PositionRow(R, res.verdict, res.witness_degree, res.reason))
    if all(r.verdict is Verdict.EMPTY for r in rows):
        verdict = Position.IN_POSITION
    elif any(r.verdict is Verdict.INCONCLUSIVE for r in rows):
        verdict = Position.INCONCLUSIVE
    else:
        verdict = Position.NOT_IN_POSITION
    return PositionReport(N, verdict, tuple(rows))
