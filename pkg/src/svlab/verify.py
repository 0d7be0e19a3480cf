"""Second main theorem and uniqueness reports for polynomial curves into a projective variety.

Every inequality is evaluated twice: exactly at slope level (coefficients
of log r, which is all that survives for rational curves) and numerically
on a grid of radii.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import LemmaViolation, PreconditionError
from .nevan import (
    DEFAULT_QUAD_TOL,
    RationalCurve,
    characteristic,
    characteristic_slope,
    counting_function,
    nondegenerate_over_Id,
    truncated_count,
    wronskian,
    zero_divisor,
)
from .nochka import (
    DEFAULT_RETRY_CAP,
    DEFAULT_SEED,
    Check,
    Completion,
    GeneralizedWeights,
    basis_completion,
    generalized_weights,
)
from .polyalg import (
    MultiPoly,
    UniPoly,
    complex_roots,
    compose,
    coprime_base,
    multiplicity,
    poly_gcd,
    poly_gcd_many,
    squarefree_part,
)
from .report import rat
from .variety import (
    HypersurfaceFamily,
    Position,
    PositionReport,
    VarietyModel,
    check_subgeneral,
    hilbert_function,
)

EXCLUSION_RADIUS = 1e-6
VIOLATED = "VIOLATED"
OK = "ok"


def smt_coefficient(V: VarietyModel, family: HypersurfaceFamily) -> Fraction:
    """(2N - k + 1) H_V(d) / (k + 1)."""
    H = hilbert_function(V, family.d)
    return Fraction((2 * family.N - V.k + 1) * H, V.k + 1)


def uniqueness_threshold(V: VarietyModel, family: HypersurfaceFamily) -> Fraction:
    d = family.d
    H = hilbert_function(V, d)
    return Fraction(2 * (H - 1), d) + smt_coefficient(V, family)


def geometric_grid(r_min: float, r_max: float, points: int) -> List[float]:
    if r_min <= 1:
        raise PreconditionError("r_min must exceed 1")
    if points < 2 or r_max <= r_min:
        raise PreconditionError("grid needs r_max > r_min and at least 2 points")
    ratio = math.log(r_max / r_min) / (points - 1)
    return [r_min * math.exp(ratio * j) for j in range(points - 1)] + [float(r_max)]


def _filter_radii(r_grid: Sequence[float], moduli: Sequence[float]) -> Tuple[List[float], List[float]]:
    kept, dropped = [], []
    for r in sorted(r_grid):
        if any(abs(r - m) <= EXCLUSION_RADIUS for m in moduli):
            dropped.append(r)
        else:
            kept.append(r)
    return kept, dropped


# -- second main theorem ----------------------------------------------------


@dataclass
class NumericRow:
    r: float
    T: float
    N: Tuple[float, ...]
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


@dataclass
class ClaimRow:
    location: complex
    factor: UniPoly
    nu: Tuple[int, ...]
    nu_W: int
    required: Fraction
    vanishing: int
    N_bound: int

    @property
    def ok(self) -> bool:
        return self.nu_W >= self.required and self.vanishing <= self.N_bound

    @property
    def status(self) -> str:
        return OK if self.ok else VIOLATED

    def as_dict(self) -> dict:
        return {
            "location": [self.location.real, self.location.imag],
            "factor": str(self.factor),
            "nu": list(self.nu),
            "nu_W": self.nu_W,
            "required": rat(self.required),
            "vanishing": self.vanishing,
            "status": self.status,
        }


@dataclass
class ClaimLedger:
    rows: List[ClaimRow]
    integrated_lhs: Fraction
    integrated_rhs: Fraction

    @property
    def violated(self) -> List[ClaimRow]:
        return [r for r in self.rows if not r.ok]

    @property
    def integrated_ok(self) -> bool:
        return self.integrated_lhs <= self.integrated_rhs

    @property
    def ok(self) -> bool:
        return not self.violated and self.integrated_ok

    def as_dict(self) -> dict:
        return {
            "rows": [r.as_dict() for r in self.rows],
            "violated": len(self.violated),
            "integrated": {
                "lhs": rat(self.integrated_lhs),
                "rhs": rat(self.integrated_rhs),
                "margin": rat(self.integrated_rhs - self.integrated_lhs),
                "status": OK if self.integrated_ok else VIOLATED,
            },
        }


@dataclass
class DeepLedger:
    weights: GeneralizedWeights
    completion: Completion
    wronskian: UniPoly
    lhs_weighted: Fraction
    rhs_weighted: Fraction
    wronskian_checks: List[Check]
    claim: ClaimLedger

    @property
    def margin_weighted(self) -> Fraction:
        return self.rhs_weighted - self.lhs_weighted

    @property
    def ok(self) -> bool:
        return self.margin_weighted >= 0 and self.claim.ok and all(c.ok for c in self.wronskian_checks)

    def as_dict(self) -> dict:
        return {
            "weights": self.weights.certificate.as_dict(),
            "completion": self.completion.as_dict(),
            "wronskian": str(self.wronskian),
            "wronskian_degree": self.wronskian.degree,
            "wronskian_checks": [c.as_dict() for c in self.wronskian_checks],
            "weighted_inequality": {
                "lhs": rat(self.lhs_weighted),
                "rhs": rat(self.rhs_weighted),
                "margin": rat(self.margin_weighted),
            },
            "claim": self.claim.as_dict(),
        }


@dataclass
class SMTReport:
    q: int
    N: int
    k: int
    d: int
    H: int
    coefficient: Fraction
    position: Position
    nondegenerate: bool
    degree_f: int
    lhs_slope: Fraction
    rhs_slope: Fraction
    per_member_slope: Tuple[int, ...]
    numeric: List[NumericRow] = field(default_factory=list)
    excluded_radii: List[float] = field(default_factory=list)
    deep: Optional[DeepLedger] = None

    @property
    def margin_slope(self) -> Fraction:
        return self.rhs_slope - self.lhs_slope

    def numeric_at(self, r: float) -> NumericRow:
        return min(self.numeric, key=lambda row: abs(row.r - r))

    @property
    def consistent(self) -> bool:
        return self.margin_slope >= 0 and (self.deep is None or self.deep.ok)

    def as_dict(self) -> dict:
        out = {
            "setup": {
                "q": self.q,
                "N": self.N,
                "k": self.k,
                "d": self.d,
                "H_V(d)": self.H,
                "coefficient": rat(self.coefficient),
                "position": self.position.value,
                "nondegenerate": self.nondegenerate,
                "deg_f": self.degree_f,
                "weight_certificate": None if self.deep is None else "deep.weights",
            },
            "slope_ledger": {
                "lhs": rat(self.lhs_slope),
                "rhs": rat(self.rhs_slope),
                "margin": rat(self.margin_slope),
                "truncated_counts": list(self.per_member_slope),
            },
            "numeric_ledger": {
                "columns": ["r", "T_f"] + [f"N_{i}" for i in range(self.q)] + ["lhs", "rhs", "margin"],
                "rows": [[row.r, row.T, *row.N, row.lhs, row.rhs, row.margin] for row in self.numeric],
                "excluded_radii": list(self.excluded_radii),
            },
            "consistent": self.consistent,
        }
        if self.deep is not None:
            out["deep"] = self.deep.as_dict()
        return out


def _require_position(V, family, position: Optional[PositionReport]) -> PositionReport:
    if position is None:
        position = check_subgeneral(V, family)
    if position.verdict is not Position.IN_POSITION:
        raise PreconditionError(
            f"family is not in {family.N}-subgeneral position with respect to V ({position.verdict.value})",
            [r.subset for r in position.violations[:3]],
        )
    return position


def _require_nondegenerate(f: RationalCurve, V: VarietyModel, d: int, label: str = "f") -> None:
    nd = nondegenerate_over_Id(f, V, d)
    if not nd.nondegenerate:
        raise PreconditionError(f"{label} is degenerate over I_{d}(V): {nd.witness}(f) = 0", str(nd.witness))


def _images(family: HypersurfaceFamily, f: RationalCurve) -> List[UniPoly]:
    out = []
    for i, Q in enumerate(family.members):
        P = compose(Q, f.components)
        if P.is_zero():
            raise PreconditionError(f"f lies in Q_{i} ({Q})", i)
        out.append(P)
    return out


def smt_verify(
    V: VarietyModel,
    family: HypersurfaceFamily,
    f: RationalCurve,
    r_grid: Sequence[float] = (),
    deep: bool = False,
    tol: float = DEFAULT_QUAD_TOL,
    seed: int = DEFAULT_SEED,
    retry_cap: int = DEFAULT_RETRY_CAP,
    position: Optional[PositionReport] = None,
) -> SMTReport:
    """Evaluate the second main theorem inequality for f against the family."""
    if len(f.components) != V.n_vars:
        raise PreconditionError(f"curve has {len(f.components)} components, V lives in P^{V.n}")
    position = _require_position(V, family, position)
    d = family.d
    H = hilbert_function(V, d)
    _require_nondegenerate(f, V, d)
    coef = smt_coefficient(V, family)
    q = family.q
    if q <= coef:
        raise PreconditionError(f"need q > (2N-k+1)H_V(d)/(k+1) = {rat(coef)}, got q={q}")
    Ps = _images(family, f)

    deg_f = characteristic_slope(f)
    counts = tuple(truncated_count(P, H - 1) for P in Ps)
    lhs = (q - coef) * deg_f
    rhs = sum((Fraction(c, di) for c, di in zip(counts, family.degrees)), Fraction(0))
    rep = SMTReport(q, family.N, V.k, d, H, coef, position.verdict, True, deg_f, lhs, rhs, counts)

    if r_grid:
        divisors = [zero_divisor(P) for P in Ps]
        moduli = [m for nu in divisors for m in nu.moduli()]
        kept, rep.excluded_radii = _filter_radii(r_grid, moduli)
        for r in kept:
            T = characteristic(f, r, tol)
            Ns = tuple(counting_function(nu, r, H - 1) for nu in divisors)
            rhs_r = math.fsum(n / di for n, di in zip(Ns, family.degrees))
            rep.numeric.append(NumericRow(r, T, Ns, float(q - coef) * T, rhs_r))

    if deep:
        rep.deep = _deep_ledger(V, family, f, H, seed, retry_cap, position)
    return rep


def _deep_ledger(V, family, f, H, seed, retry_cap, position) -> DeepLedger:
    gw = generalized_weights(V, family, seed, retry_cap, position)
    comp = basis_completion(V, family, seed, retry_cap)
    d, q, N, k = family.d, family.q, family.N, V.k
    basis = V.complement_basis(d)
    W = wronskian([compose(A, f.components) for A in basis])
    if W.is_zero():
        raise PreconditionError("Wronskian of the complement basis vanishes; f is degenerate")
    cert = gw.certificate
    wt = cert.omega_tilde
    Ps = [compose(Q, f.components) for Q in family.normalized()]
    deg_f = characteristic_slope(f)
    lhs = d * (q - 2 * N + k - 1 - Fraction(H - k - 1) / wt) * deg_f
    rhs = sum((w / wt * P.degree for w, P in zip(cert.omega, Ps)), Fraction(0)) - Fraction(W.degree) / wt

    # W_R = C_R * W for every qualifying R with a nonzero constant C_R
    Ts = [compose(T, f.components) for T in comp.polys]
    checks = []
    rk = gw.rank_oracle()
    for R in itertools.combinations(range(q), k + 1):
        if rk(R) != k + 1:
            continue
        WR = wronskian([Ps[i] for i in R] + Ts)
        ratio_ok = not WR.is_zero() and WR.degree == W.degree and (WR.scale(W.lead()) - W.scale(WR.lead())).is_zero()
        checks.append(Check(f"W_{list(R)} = C W", ratio_ok, f"deg {WR.degree}"))

    claim = claim_check(V, family, f, cert.omega, N, W=W, H=H)
    return DeepLedger(gw, comp, W, lhs, rhs, checks, claim)


def claim_check(
    V: VarietyModel,
    family: HypersurfaceFamily,
    f: RationalCurve,
    omega: Sequence[Fraction],
    N: Optional[int] = None,
    W: Optional[UniPoly] = None,
    H: Optional[int] = None,
) -> ClaimLedger:
    """Per-zero Wronskian inequality over the normalized family, exact."""
    d = family.d
    if H is None:
        H = hilbert_function(V, d)
    if N is None:
        N = family.N
    if len(omega) != family.q:
        raise PreconditionError("one weight per family member required")
    if W is None:
        W = wronskian([compose(A, f.components) for A in V.complement_basis(d)])
    Ps = [compose(Q, f.components) for Q in family.normalized()]
    for i, P in enumerate(Ps):
        if P.is_zero():
            raise PreconditionError(f"f lies in Q_{i}", i)
    inputs = [P for P in Ps if P.degree > 0] + ([W] if W.degree > 0 else [])
    rows = []
    for b in coprime_base(inputs):
        nus = tuple(multiplicity(b, P) if P.degree > 0 else 0 for P in Ps)
        if not any(nus):
            continue
        nu_W = multiplicity(b, W) if W.degree > 0 else 0
        required = sum((Fraction(w) * max(m - H + 1, 0) for w, m in zip(omega, nus)), Fraction(0))
        vanishing = sum(1 for m in nus if m)
        for loc, _ in complex_roots(b):
            rows.append(ClaimRow(loc, b, nus, nu_W, required, vanishing, N))
    rows.sort(key=lambda r: (round(r.location.real, 9), round(r.location.imag, 9)))
    lhs = sum((Fraction(w) * P.degree for w, P in zip(omega, Ps)), Fraction(0)) - W.degree
    rhs = sum((Fraction(w) * truncated_count(P, H - 1) for w, P in zip(omega, Ps)), Fraction(0))
    return ClaimLedger(rows, lhs, rhs)


# -- comparison constants ----------------------------------------------------------------


@dataclass(frozen=True)
class AlphaBetaEstimate:
    alpha_hat: float
    beta_hat: float
    samples: int
    label: str = "ESTIMATE"


def estimate_alpha_beta(
    V: VarietyModel, Qs: Sequence[MultiPoly], samples: Sequence[Sequence[complex]], tol: float = 1e-9
) -> AlphaBetaEstimate:
    """Sample min and max of max_i |Q_i(x)| / ||x||^d over points of V."""
    if not samples:
        raise PreconditionError("no samples given")
    if not Qs:
        raise PreconditionError("no hypersurfaces given")
    degs = {Q.degree for Q in Qs}
    if len(degs) != 1 or None in degs:
        raise PreconditionError("hypersurfaces must be homogeneous of a common degree")
    d = degs.pop()
    vals = []
    for x in samples:
        x = [complex(c) for c in x]
        if len(x) != V.n_vars:
            raise PreconditionError(f"sample {x} has the wrong length")
        norm = math.sqrt(sum(abs(c) ** 2 for c in x))
        if norm == 0:
            raise PreconditionError("zero sample")
        u = [c / norm for c in x]
        for g in V.generators:
            if abs(g.evaluate(u)) > tol:
                raise PreconditionError(f"sample {list(x)} is off the variety", list(x))
        vals.append(max(abs(Q.evaluate(u)) for Q in Qs))
    return AlphaBetaEstimate(min(vals), max(vals), len(vals))


# -- uniqueness ------------------------------------------------------------------


def _minors(f: RationalCurve, g: RationalCurve) -> Dict[Tuple[int, int], UniPoly]:
    n = len(f.components)
    return {
        (s, t): f.components[s] * g.components[t] - f.components[t] * g.components[s]
        for s in range(n) for t in range(s + 1, n)
    }


@dataclass
class PairRow:
    i: int
    j: int
    side: str
    gcd_degree: int

    @property
    def ok(self) -> bool:
        return self.gcd_degree == 0

    def as_dict(self) -> dict:
        return {"pair": [self.i, self.j], "side": self.side, "gcd_degree": self.gcd_degree, "ok": self.ok}


@dataclass
class AgreementRow:
    i: int
    side: str
    zeros: UniPoly
    obstruction: UniPoly
    roots: List[complex]

    @property
    def ok(self) -> bool:
        return self.obstruction.degree < 1

    def as_dict(self) -> dict:
        return {
            "member": self.i,
            "side": self.side,
            "zero_locus": str(self.zeros),
            "ok": self.ok,
            "witness_divisor": None if self.ok else str(self.obstruction),
            "witness_roots": [[z.real, z.imag] for z in self.roots],
        }


@dataclass
class UniquenessReport:
    pairs: List[PairRow]
    agreement: List[AgreementRow]
    q: int
    threshold: Fraction
    equal: bool

    @property
    def hypothesis_i(self) -> bool:
        return all(p.ok for p in self.pairs)

    @property
    def hypothesis_ii(self) -> bool:
        return all(a.ok for a in self.agreement)

    @property
    def threshold_ok(self) -> bool:
        return self.q > self.threshold

    @property
    def failed_hypotheses(self) -> List[str]:
        out = []
        if not self.hypothesis_i:
            out.append("(i)")
        if not self.hypothesis_ii:
            out.append("(ii)")
        if not self.threshold_ok:
            out.append("threshold")
        return out

    @property
    def consistent(self) -> bool:
        return not (self.hypothesis_i and self.hypothesis_ii and self.threshold_ok and not self.equal)

    def as_dict(self) -> dict:
        return {
            "hypothesis_i": {"ok": self.hypothesis_i, "pairs": [p.as_dict() for p in self.pairs]},
            "hypothesis_ii": {"ok": self.hypothesis_ii, "members": [a.as_dict() for a in self.agreement]},
            "threshold": {"q": self.q, "bound": rat(self.threshold), "ok": self.threshold_ok},
            "failed": self.failed_hypotheses,
            "equal": self.equal,
            "consistent": self.consistent,
        }


def _require_reduced(f: RationalCurve, label: str) -> None:
    if poly_gcd_many(list(f.components)).degree > 0:
        raise PreconditionError(f"{label} is not a reduced representation", str(f))


def hypothesis_i(family: HypersurfaceFamily, f: RationalCurve, side: str = "f") -> List[PairRow]:
    Ps = _images(family, f)
    return [
        PairRow(i, j, side, poly_gcd(Ps[i], Ps[j]).degree)
        for i, j in itertools.combinations(range(family.q), 2)
    ]


def hypothesis_ii(family: HypersurfaceFamily, f: RationalCurve, g: RationalCurve) -> List[AgreementRow]:
    """f = g on every zero of every Q_i(f), Q_i(g), by exact divisibility of the minors."""
    G = poly_gcd_many(list(_minors(f, g).values()))
    rows = []
    for side, h in (("f", f), ("g", g)):
        for i, P in enumerate(_images(family, h)):
            s = squarefree_part(P) if P.degree > 0 else UniPoly([1])
            if G.is_zero() or s.degree < 1:
                obstruction = UniPoly([1])
            else:
                obstruction = s.exact_div(poly_gcd(s, G))
            roots = [z for z, _ in complex_roots(obstruction)] if obstruction.degree > 0 else []
            rows.append(AgreementRow(i, side, s, obstruction, roots))
    return rows


def uniqueness_check(
    V: VarietyModel,
    family: HypersurfaceFamily,
    f: RationalCurve,
    g: RationalCurve,
    strict: bool = False,
    position: Optional[PositionReport] = None,
) -> UniquenessReport:
    for c, label in ((f, "f"), (g, "g")):
        if len(c.components) != V.n_vars:
            raise PreconditionError(f"curve {label} has {len(c.components)} components, V lives in P^{V.n}")
        _require_reduced(c, label)
        _require_nondegenerate(c, V, family.d, label)
    _require_position(V, family, position)
    pairs = hypothesis_i(family, f, "f")
    if strict:
        pairs += hypothesis_i(family, g, "g")
    agreement = hypothesis_ii(family, f, g)
    equal = all(m.is_zero() for m in _minors(f, g).values())
    return UniquenessReport(pairs, agreement, family.q, uniqueness_threshold(V, family), equal)


# -- growth and shared zeros -------------------------------------------------


@dataclass(frozen=True)
class GrowthRatio:
    slope_f: int
    slope_g: int
    ratio: Fraction


def growth_ratio(f: RationalCurve, g: RationalCurve) -> GrowthRatio:
    for c, label in ((f, "f"), (g, "g")):
        if c.is_constant():
            raise PreconditionError(f"curve {label} is constant", str(c))
    a, b = characteristic_slope(f), characteristic_slope(g)
    return GrowthRatio(a, b, Fraction(a, b))


@dataclass
class SharedZeroRow:
    r: float
    N_H: float
    sum_N1: float
    T_sum: float

    @property
    def margin_lower(self) -> float:
        return self.N_H - self.sum_N1

    @property
    def margin_upper(self) -> float:
        return self.T_sum - self.N_H


@dataclass
class SharedZeroLedger:
    minor: Tuple[int, int]
    deg_H: int
    distinct_zeros: int
    deg_f: int
    deg_g: int
    rows: List[SharedZeroRow]
    excluded_radii: List[float]

    @property
    def slope_margin_lower(self) -> int:
        return self.deg_H - self.distinct_zeros

    @property
    def slope_margin_upper(self) -> int:
        return self.deg_f + self.deg_g - self.deg_H

    def as_dict(self) -> dict:
        return {
            "minor": list(self.minor),
            "slope": {
                "deg_H": self.deg_H,
                "distinct_zeros": self.distinct_zeros,
                "margin_lower": self.slope_margin_lower,
                "margin_upper": self.slope_margin_upper,
            },
            "rows": [[r.r, r.N_H, r.sum_N1, r.T_sum, r.margin_lower, r.margin_upper] for r in self.rows],
            "excluded_radii": self.excluded_radii,
        }


def shared_zero_check(
    f: RationalCurve,
    g: RationalCurve,
    family: HypersurfaceFamily,
    r_grid: Sequence[float] = (),
    tol: float = DEFAULT_QUAD_TOL,
) -> SharedZeroLedger:
    minors = _minors(f, g)
    nonzero = [(st, h) for st, h in sorted(minors.items()) if not h.is_zero()]
    if not nonzero:
        raise PreconditionError("identical maps: every minor vanishes")
    if not all(p.ok for p in hypothesis_i(family, f)):
        raise PreconditionError("hypothesis (i) fails")
    bad = [a for a in hypothesis_ii(family, f, g) if not a.ok]
    if bad:
        raise PreconditionError(f"hypothesis (ii) fails at Q_{bad[0].i}({bad[0].side})", str(bad[0].obstruction))
    st, Hm = nonzero[0]
    Ps = _images(family, f)
    distinct = sum(squarefree_part(P).degree for P in Ps if P.degree > 0)
    ledger = SharedZeroLedger(st, Hm.degree, distinct, characteristic_slope(f), characteristic_slope(g), [], [])
    if r_grid:
        nu_H = zero_divisor(Hm)
        divs = [zero_divisor(P) for P in Ps]
        moduli = nu_H.moduli() + [m for nu in divs for m in nu.moduli()]
        kept, ledger.excluded_radii = _filter_radii(r_grid, moduli)
        for r in kept:
            NH = counting_function(nu_H, r)
            N1 = math.fsum(counting_function(nu, r, 1) for nu in divs)
            T = characteristic(f, r, tol) + characteristic(g, r, tol)
            ledger.rows.append(SharedZeroRow(r, NH, N1, T))
    return ledger


def check_report(rep: SMTReport) -> None:
    """Raise LemmaViolation when a report contradicts the theorem."""
    if rep.margin_slope < 0:
        raise LemmaViolation(f"negative slope margin {rat(rep.margin_slope)}")
    if rep.deep is not None:
        if rep.deep.margin_weighted < 0:
            raise LemmaViolation(f"weighted inequality fails at slope level: margin {rat(rep.deep.margin_weighted)}")
        if rep.deep.claim.violated:
            raise LemmaViolation(f"{len(rep.deep.claim.violated)} claim rows VIOLATED")
        if not rep.deep.claim.integrated_ok:
            raise LemmaViolation("integrated claim fails")
        bad = [c for c in rep.deep.wronskian_checks if not c.ok]
        if bad:
            raise LemmaViolation(f"Wronskian proportionality fails: {bad[0].name}")
