"""Nochka weights for hyperplanes and their generalization to hypersurfaces on V.

Weights are found as a feasible point of an exact rational LP whose
constraints are the required properties themselves; the returned
certificate is then re-checked by ``audit_certificate``, which only uses
rank computations and exact sums.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import lp
from .errors import LemmaViolation, PreconditionError, RetryCapExceeded
from .polyalg import ZERO, GaussScalar, MultiPoly, mat_vec_rows, rank
from .variety import (
    HypersurfaceFamily,
    Position,
    PositionReport,
    VarietyModel,
    check_subgeneral,
    class_coords,
    hilbert_function,
)

DEFAULT_SEED = 0xC0FFEE
DEFAULT_RETRY_CAP = 16

Subset = Tuple[int, ...]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class WeightCertificate:
    q: int
    N: int
    k: int
    omega: Tuple[Fraction, ...]
    omega_tilde: Fraction
    pinned: int
    epsilon: Fraction
    transcript: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.transcript)

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "N": self.N,
            "k": self.k,
            "omega": [_rat(w) for w in self.omega],
            "omega_tilde": _rat(self.omega_tilde),
            "pinned_index": self.pinned,
            "epsilon": _rat(self.epsilon),
            "transcript": [c.as_dict() for c in self.transcript],
        }


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def subset_ranks(vectors: Sequence[Sequence[GaussScalar]], max_size: int) -> Dict[Subset, int]:
    """rank{v_i : i in R} for every nonempty R with #R <= max_size."""
    q = len(vectors)
    out: Dict[Subset, int] = {}
    for s in range(1, min(max_size, q) + 1):
        for R in itertools.combinations(range(q), s):
            out[R] = rank([list(vectors[i]) for i in R])
    return out


# -- hyperplane weights ---------------------------------------------------------------


def _binding_subsets(ranks: Dict[Subset, int], q: int, N: int) -> List[Subset]:
    """Subsets whose rank constraint is not implied by omega_i <= 1 or by a larger subset."""
    out = []
    for R, rk in ranks.items():
        if rk >= len(R):
            continue
        if len(R) < N + 1:
            Rs = set(R)
            if any(ranks[tuple(sorted(Rs | {i}))] == rk for i in range(q) if i not in Rs):
                continue
        out.append(R)
    out.sort(key=lambda R: (len(R), R))
    return out


def _solve_pinned(q, N, k, j, eps, binding, ranks):
    """Feasibility LP with omega_j = t = max omega; returns omegas or None.

    Variables (shifted to be nonnegative): y_i = omega_i - eps, s = t - lo.
    Subset constraints are added lazily until the point satisfies all of them.
    """
    lo = Fraction(k + 1, 2 * N - k + 1)
    hi = Fraction(k, N)
    a = q - 2 * N + k - 1
    nv = q + 1
    S = q  # index of s

    base: List[lp.Constraint] = []
    for i in range(q):
        r = [Fraction(0)] * nv
        r[i] = Fraction(1)
        base.append(lp.Constraint(tuple(r), lp.LE, 1 - eps))
        r2 = list(r)
        r2[S] = Fraction(-1)
        base.append(lp.Constraint(tuple(r2), lp.EQ if i == j else lp.LE, lo - eps))
    r = [Fraction(0)] * nv
    r[S] = Fraction(1)
    base.append(lp.Constraint(tuple(r), lp.LE, hi - lo))
    r = [Fraction(1)] * q + [Fraction(-a)]
    base.append(lp.Constraint(tuple(r), lp.EQ, a * lo + k + 1 - q * eps))

    active: List[lp.Constraint] = []
    added = set()
    objective = [Fraction(0)] * q + [Fraction(1)]
    while True:
        res = lp.solve(objective, base + active, maximize=True)
        if res.status != "optimal":
            return None
        omega = [res.x[i] + eps for i in range(q)]
        violated = [R for R in binding if R not in added and sum(omega[i] for i in R) > ranks[R]]
        if not violated:
            return omega
        for R in violated:
            added.add(R)
            r = [Fraction(0)] * nv
            for i in R:
                r[i] = Fraction(1)
            active.append(lp.Constraint(tuple(r), lp.LE, ranks[R] - len(R) * eps))


def nochka_weights_hyperplanes(
    vectors: Sequence[Sequence], N: int, eps: Optional[Fraction] = None
) -> WeightCertificate:
    """Nochka weights for q hyperplanes of C^{k+1} in N-subgeneral position."""
    vecs = [[x if isinstance(x, GaussScalar) else GaussScalar(x) for x in v] for v in vectors]
    q = len(vecs)
    if q == 0:
        raise PreconditionError("empty family")
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise PreconditionError("vectors have different lengths")
    k = dim - 1
    if not (N >= k >= 1):
        raise PreconditionError(f"need N >= k >= 1, got N={N}, k={k}")
    if q <= 2 * N - k + 1:
        raise PreconditionError(f"need q > 2N-k+1 = {2 * N - k + 1}, got q={q}")
    for i, v in enumerate(vecs):
        if not any(v):
            raise PreconditionError(f"vector {i} is zero", i)
    ranks = subset_ranks(vecs, N + 1)
    for R in itertools.combinations(range(q), N + 1):
        if ranks[R] != k + 1:
            raise PreconditionError(
                f"not in {N}-subgeneral position: subset {list(R)} has rank {ranks[R]} < {k + 1}", R
            )
    binding = _binding_subsets(ranks, q, N)
    eps0 = Fraction(1, 4 * q * (N + 1)) if eps is None else Fraction(eps)
    e = eps0
    for _ in range(9):
        for j in range(q):
            omega = _solve_pinned(q, N, k, j, e, binding, ranks)
            if omega is not None:
                cert = WeightCertificate(q, N, k, tuple(omega), max(omega), j, e)
                cert.transcript = audit_certificate(cert, lambda R: ranks[tuple(sorted(R))])
                if not cert.ok:
                    raise LemmaViolation(f"LP solution failed its own audit: {cert.transcript}")
                return cert
        e = e / 2
    raise LemmaViolation(
        f"no Nochka weights found for q={q}, N={N}, k={k} down to eps={e * 2}; weights must exist for this input"
    )


def audit_certificate(cert: WeightCertificate, rank_of: Callable[[Subset], int]) -> List[Check]:
    """Re-verify properties (i)-(iv) by exhaustive enumeration of subsets."""
    q, N, k, om, wt = cert.q, cert.N, cert.k, cert.omega, cert.omega_tilde
    checks = []
    bad = [i for i, w in enumerate(om) if not (0 < w <= 1)]
    checks.append(Check("(i) 0 < omega_i <= 1", not bad, f"violations at {bad}" if bad else f"min={_rat(min(om))}, max={_rat(max(om))}"))
    checks.append(Check("omega_tilde = max omega_j", wt == max(om), f"omega_tilde={_rat(wt)}"))
    lhs = sum(om, Fraction(0))
    rhs = wt * (q - 2 * N + k - 1) + k + 1
    checks.append(Check("(ii) sum omega = omega_tilde(q-2N+k-1)+k+1", lhs == rhs, f"{_rat(lhs)} vs {_rat(rhs)}"))
    lo, hi = Fraction(k + 1, 2 * N - k + 1), Fraction(k, N)
    checks.append(Check("(iii) (k+1)/(2N-k+1) <= omega_tilde <= k/N", lo <= wt <= hi, f"{_rat(lo)} <= {_rat(wt)} <= {_rat(hi)}"))
    worst = None
    n_checked = 0
    fails = []
    for s in range(1, min(N + 1, q) + 1):
        for R in itertools.combinations(range(q), s):
            n_checked += 1
            slack = rank_of(R) - sum((om[i] for i in R), Fraction(0))
            if slack < 0:
                fails.append(R)
            if worst is None or slack < worst:
                worst = slack
    checks.append(Check(
        "(iv) sum_{i in R} omega_i <= rank R for 0 < #R <= N+1",
        not fails,
        f"{n_checked} subsets, min slack {_rat(worst)}" + (f", failing {fails[:5]}" if fails else ""),
    ))
    return checks


# -- property (v) ------------------------------------------------------------


def select_subset(
    weights: WeightCertificate,
    rank_oracle: Callable[[Subset], int],
    R: Sequence[int],
    E: Sequence[float],
    rel_tol: float = 1e-12,
) -> Subset:
    """Smallest (lexicographic) R0 in R with #R0 = rank R0 = rank R and
    prod_{R} E_i^omega_i <= prod_{R0} E_i.

    ``E`` is indexed by family index (length q).
    """
    R = tuple(sorted(R))
    if any(e < 1 for e in E):
        raise PreconditionError("all E_i must be >= 1")
    target = rank_oracle(R)
    logs = {i: math.log(E[i]) for i in R}
    lhs = math.fsum(float(weights.omega[i]) * logs[i] for i in R)
    for R0 in itertools.combinations(R, target):
        if rank_oracle(R0) != target:
            continue
        rhs = math.fsum(logs[i] for i in R0)
        if lhs <= rhs + rel_tol * max(1.0, abs(lhs), abs(rhs)):
            return R0
    raise LemmaViolation(f"no subset of {list(R)} satisfies property (v) for E={list(E)}")


# -- generic subspace ---------------------------------------------------------------


@dataclass
class SubspaceWitness:
    M: int
    k: int
    basis: List[List[GaussScalar]]  # k column vectors of length M
    verification: List[Check]
    attempts: int
    seed: int

    def restrict(self, v: Sequence[GaussScalar]) -> List[GaussScalar]:
        return mat_vec_rows([v], self.basis)[0]

    def as_dict(self) -> dict:
        return {
            "M": self.M,
            "k": self.k,
            "basis": [[str(x) for x in col] for col in self.basis],
            "attempts": self.attempts,
            "seed": self.seed,
            "checks": len(self.verification),
            "all_ok": all(c.ok for c in self.verification),
        }


def _verify_subspace(forms, basis, k) -> List[Check]:
    restricted = mat_vec_rows(forms, basis)
    checks = []
    for i, r in enumerate(restricted):
        checks.append(Check(f"form {i} nonzero on L", any(r), ""))
    for s in range(1, k + 1):
        for T in itertools.combinations(range(len(forms)), s):
            a = rank([list(forms[i]) for i in T])
            b = rank([restricted[i] for i in T])
            checks.append(Check(f"rank {list(T)}", a == b, f"{a} vs {b}"))
    return checks


def generic_subspace(
    forms: Sequence[Sequence], k: int, seed: int = DEFAULT_SEED, retry_cap: int = DEFAULT_RETRY_CAP
) -> SubspaceWitness:
    """A k-dimensional L in C^M on which restriction preserves ranks of every <= k forms."""
    fs = [[x if isinstance(x, GaussScalar) else GaussScalar(x) for x in v] for v in forms]
    if not fs:
        raise PreconditionError("no forms given")
    M = len(fs[0])
    if not 1 <= k <= M:
        raise PreconditionError(f"need 1 <= k <= M, got k={k}, M={M}")
    for i, v in enumerate(fs):
        if len(v) != M or not any(v):
            raise PreconditionError(f"form {i} is zero or has the wrong length", i)
    if k == M:
        basis = [[GaussScalar(int(i == j)) for i in range(M)] for j in range(M)]
        return SubspaceWitness(M, k, basis, _verify_subspace(fs, basis, k), 0, seed)
    rng = random.Random(seed)
    for attempt in range(1, retry_cap + 1):
        basis = [[GaussScalar(rng.randint(-100, 100)) for _ in range(M)] for _ in range(k)]
        checks = _verify_subspace(fs, basis, k)
        if all(c.ok for c in checks):
            return SubspaceWitness(M, k, basis, checks, attempt, seed)
    raise RetryCapExceeded("no generic subspace found", seed, retry_cap)


# -- hypersurface weights ---------------------------------------------------------------


@dataclass
class GeneralizedWeights:
    certificate: WeightCertificate
    classes: List[List[GaussScalar]]
    witness: SubspaceWitness
    restricted: List[List[GaussScalar]]
    d: int
    M: int

    def rank_oracle(self) -> Callable[[Subset], int]:
        cache: Dict[Subset, int] = {}

        def rk(R):
            R = tuple(sorted(R))
            if R not in cache:
                cache[R] = rank([self.restricted[i] for i in R])
            return cache[R]

        return rk


def generalized_weights(
    V: VarietyModel,
    family: HypersurfaceFamily,
    seed: int = DEFAULT_SEED,
    retry_cap: int = DEFAULT_RETRY_CAP,
    position: Optional[PositionReport] = None,
) -> GeneralizedWeights:
    """Nochka weights for hypersurfaces in N-subgeneral position with respect to V."""
    k, N, q = V.k, family.N, family.q
    if q <= 2 * N - k + 1:
        raise PreconditionError(f"need q > 2N-k+1 = {2 * N - k + 1}, got q={q}")
    if position is None:
        position = check_subgeneral(V, family)
    if position.verdict is not Position.IN_POSITION:
        raise PreconditionError(
            f"family is not in {N}-subgeneral position with respect to V ({position.verdict.value})",
            position.violations[:3],
        )
    family.check_nondegenerate_on(V)
    d = family.d
    M = hilbert_function(V, d)
    classes = [list(class_coords(Q, V).coords) for Q in family.normalized()]
    wit = generic_subspace(classes, k + 1, seed, retry_cap)
    restricted = mat_vec_rows(classes, wit.basis)
    cert = nochka_weights_hyperplanes(restricted, N)
    sums = [
        (R, sum((cert.omega[i] for i in R), Fraction(0)))
        for R in itertools.combinations(range(q), N + 1)
    ]
    bad = [R for R, s in sums if s > k + 1]
    worst = max(s for _, s in sums)
    cert.transcript.append(Check(
        "(iv') sum_{i in R} omega_i <= k+1 for #R = N+1",
        not bad,
        f"{len(sums)} subsets, max sum {_rat(worst)}",
    ))
    if bad:
        raise LemmaViolation(f"generalized weights violate the k+1 bound on {bad[:3]}")
    return GeneralizedWeights(cert, classes, wit, restricted, d, M)


# -- basis completion ---------------------------------------------------------------


@dataclass
class Completion:
    polys: List[MultiPoly]
    vectors: List[List[GaussScalar]]
    transcript: List[Check]
    attempts: int

    def as_dict(self) -> dict:
        return {
            "T": [str(p) for p in self.polys],
            "attempts": self.attempts,
            "checked_subsets": len(self.transcript),
            "all_ok": all(c.ok for c in self.transcript),
        }


def basis_completion(
    V: VarietyModel,
    family: HypersurfaceFamily,
    seed: int = DEFAULT_SEED,
    retry_cap: int = DEFAULT_RETRY_CAP,
) -> Completion:
    """H_V(d) - k - 1 forms completing every rank-(k+1) subset of the family to a basis of I_d(V)."""
    k = V.k
    d = family.d
    M = hilbert_function(V, d)
    count = M - k - 1
    if count < 0:
        raise PreconditionError(f"H_V({d})={M} is smaller than k+1={k + 1}")
    classes = [list(class_coords(Q, V).coords) for Q in family.normalized()]
    qualifying = [
        R for R in itertools.combinations(range(family.q), k + 1)
        if rank([classes[i] for i in R]) == k + 1
    ]
    comp = V.complement_basis(d)
    if count == 0:
        checks = [Check(f"rank {list(R)} + T", True, f"{k + 1} = {M}") for R in qualifying]
        return Completion([], [], checks, 0)
    rng = random.Random(seed ^ 0x5EED)
    for attempt in range(1, retry_cap + 1):
        vecs = [[GaussScalar(rng.randint(-100, 100)) for _ in range(M)] for _ in range(count)]
        checks = []
        for R in qualifying:
            rk = rank([classes[i] for i in R] + vecs)
            checks.append(Check(f"rank {list(R)} + T", rk == M, f"{rk} vs {M}"))
        if all(c.ok for c in checks):
            polys = []
            for v in vecs:
                p = MultiPoly(V.n_vars)
                for c, mono in zip(v, comp):
                    p = p + mono.scale(c)
                polys.append(p)
            return Completion(polys, vecs, checks, attempt)
    raise RetryCapExceeded("no basis completion found", seed, retry_cap)
