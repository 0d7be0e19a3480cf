"""Nevanlinna functionals for polynomial curves f : C -> P^n.

Source dimension is one throughout: spheres are circles |z| = r, and
counting functions are finite sums over root moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import PreconditionError, QuadratureError
from .polyalg import (
    DEFAULT_ROOT_TOL,
    ZERO,
    MultiPoly,
    UniPoly,
    complex_roots,
    compose,
    nullspace,
    poly_gcd_many,
    squarefree_decomp,
)
from .variety import VarietyModel, hilbert_function

DEFAULT_QUAD_TOL = 1e-8
MAX_POINTS = 2**20
INF = math.inf


@dataclass(frozen=True)
class RationalCurve:
    """Reduced representation (f_0 : ... : f_n) with polynomial components."""

    components: Tuple[UniPoly, ...]

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def is_constant(self) -> bool:
        """True when the map z -> f(z) is constant in P^n."""
        nz = [c for c in self.components if not c.is_zero()]
        base = nz[0]
        return all((c * base.lead() - base * c.lead()).is_zero() for c in nz)

    def scaled(self, c) -> "RationalCurve":
        return RationalCurve(tuple(p.scale(c) for p in self.components))

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.components) + ")"


def reduce_representation(components: Sequence[UniPoly]) -> RationalCurve:
    comps = list(components)
    if not comps or all(c.is_zero() for c in comps):
        raise PreconditionError("all curve components are zero")
    g = poly_gcd_many(comps)
    if g.degree > 0:
        comps = [c.exact_div(g) for c in comps]
    return RationalCurve(tuple(comps))


def characteristic_slope(f: RationalCurve) -> int:
    """Coefficient of log r in T_f(r); the degree of the reduced curve."""
    return f.degree


# -- divisors and counting functions -----------------------------------------


@dataclass(frozen=True)
class DivisorEntry:
    location: complex
    modulus: float
    multiplicity: int


@dataclass(frozen=True)
class Divisor:
    entries: Tuple[DivisorEntry, ...] = ()
    origin_mult: int = 0

    @property
    def degree(self) -> int:
        return self.origin_mult + sum(e.multiplicity for e in self.entries)

    def support_size(self) -> int:
        return len(self.entries) + (1 if self.origin_mult else 0)

    def moduli(self) -> List[float]:
        return [e.modulus for e in self.entries] + ([0.0] if self.origin_mult else [])


def zero_divisor(phi: UniPoly, tol: float = DEFAULT_ROOT_TOL) -> Divisor:
    if phi.is_zero():
        raise PreconditionError("zero divisor of the zero polynomial is undefined")
    if phi.degree == 0:
        return Divisor()
    k = phi.order_at_zero()
    rest = UniPoly(phi.coeffs[k:])
    entries = []
    if rest.degree > 0:
        for r, m in complex_roots(rest, tol):
            entries.append(DivisorEntry(r, abs(r), m))
    return Divisor(tuple(entries), k)


def counting_function(nu: Divisor, r: float, M: float = INF) -> float:
    """N^[M](r, nu) with lower limit 1: sum min(mult, M) log(r / max(|a|, 1)) over |a| <= r."""
    if r <= 1:
        raise PreconditionError(f"counting function needs r > 1, got {r}")
    terms = []
    for e in nu.entries:
        if e.modulus <= r:
            terms.append(min(e.multiplicity, M) * math.log(r / max(e.modulus, 1.0)))
    if nu.origin_mult:
        terms.append(min(nu.origin_mult, M) * math.log(r))
    return math.fsum(terms)


def truncated_count(p: UniPoly, M: float = INF) -> int:
    """Exact slope of N^[M]_p: sum over distinct zeros of min(mult, M)."""
    if p.is_zero():
        raise PreconditionError("zero polynomial")
    return sum(f.degree * min(m, M) for f, m in squarefree_decomp(p))


# -- circle means --------------------------------------------------------------


def _circle_mean(fn, r: float, tol: float, n0: int = 64) -> float:
    """Periodic trapezoid rule with point doubling until successive means agree to tol."""
    n = n0
    theta = 2 * np.pi * np.arange(n) / n
    total = math.fsum(fn(r * np.exp(1j * theta)))
    prev = total / n
    while True:
        if 2 * n > MAX_POINTS:
            raise QuadratureError(f"circle mean at r={r} did not converge within {MAX_POINTS} points")
        theta = 2 * np.pi * (np.arange(n) + 0.5) / n
        total += math.fsum(fn(r * np.exp(1j * theta)))
        n *= 2
        cur = total / n
        if abs(cur - prev) < tol:
            return cur
        prev = cur


def _log_norm_fn(f: RationalCurve, norm: str):
    polys = [c.to_numpy() for c in f.components]

    def fn(z):
        vals = np.array([np.polyval(p, z) for p in polys])
        if norm == "max":
            with np.errstate(divide="ignore"):
                return np.log(np.max(np.abs(vals), axis=0))
        # scale before squaring to stay clear of overflow
        a = np.abs(vals)
        m = np.max(a, axis=0)
        return np.log(m) + 0.5 * np.log(np.sum((a / m) ** 2, axis=0))

    return fn


def circle_mean_log_norm(f: RationalCurve, r: float, tol: float = DEFAULT_QUAD_TOL, norm: str = "euclidean") -> float:
    if norm not in ("euclidean", "max"):
        raise ValueError("norm must be 'euclidean' or 'max'")
    return _circle_mean(_log_norm_fn(f, norm), r, tol)


def characteristic(f: RationalCurve, r: float, tol: float = DEFAULT_QUAD_TOL, norm: str = "euclidean") -> float:
    """T_f(r) = mean of log||f|| over |z| = r minus the same over |z| = 1.

    ``norm="euclidean"`` is the standard definition; ``norm="max"`` uses
    max_j |f_j| and differs by a bounded amount.
    """
    if r < 1:
        raise PreconditionError(f"characteristic needs r >= 1, got {r}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if r == 1:
        return 0.0
    return circle_mean_log_norm(f, r, tol, norm) - circle_mean_log_norm(f, 1.0, tol, norm)


def _check_contour(den: UniPoly, r: float, tol: float) -> None:
    if den.degree < 1:
        return
    for root, _ in complex_roots(den):
        if abs(abs(root) - r) <= tol:
            raise QuadratureError(f"pole {root} lies within {tol} of the circle |z|={r}; perturb r")


def proximity(num: UniPoly, den: UniPoly, r: float, tol: float = DEFAULT_QUAD_TOL) -> float:
    """m(r, num/den): circle mean of log max(|phi|, 1)."""
    if den.is_zero():
        raise PreconditionError("denominator is zero")
    if r < 1:
        raise PreconditionError(f"proximity needs r >= 1, got {r}")
    if num.is_zero():
        return 0.0
    _check_contour(den, r, tol)
    pn, pd = num.to_numpy(), den.to_numpy()

    def fn(z):
        with np.errstate(divide="ignore"):
            v = np.log(np.abs(np.polyval(pn, z))) - np.log(np.abs(np.polyval(pd, z)))
        return np.maximum(v, 0.0)

    return _circle_mean(fn, r, tol)


def jensen_residual(
    num: UniPoly,
    den: UniPoly,
    r_grid: Sequence[float],
    tol: float = DEFAULT_QUAD_TOL,
    norm: str = "max",
) -> List[float]:
    """T_phi(r) - N_{1/phi}(r) - m(r, phi) for phi = num/den, at each r.

    T_phi is the characteristic of the curve (den : num). With the max norm
    the residual is an r-independent constant; with the Euclidean norm it
    moves by at most log(2)/2.
    """
    if den.is_zero():
        raise PreconditionError("denominator is zero")
    curve = reduce_representation([den, num])
    rden, rnum = curve.components
    poles = zero_divisor(rden)
    out = []
    for r in r_grid:
        if r <= 1:
            raise PreconditionError(f"grid radius {r} must exceed 1")
        t = characteristic(curve, r, tol, norm)
        out.append(t - counting_function(poles, r) - proximity(rnum, rden, r, tol))
    return out


class LogDerivProximity(NamedTuple):
    value: float
    degenerate: bool


def _rational_derivative(num: UniPoly, den: UniPoly) -> Tuple[UniPoly, UniPoly]:
    return num.derivative() * den - num * den.derivative(), den * den


def logderiv_proximity(
    num: UniPoly, den: UniPoly, order: int, r: float, tol: float = DEFAULT_QUAD_TOL
) -> LogDerivProximity:
    """m(r, phi^(order) / phi) for phi = num/den.

    If the derivative vanishes identically the value is 0 and the result is
    flagged degenerate.
    """
    if num.is_zero() or den.is_zero():
        raise PreconditionError("phi must be a nonzero rational function")
    if order < 0:
        raise PreconditionError("order must be nonnegative")
    g = poly_gcd_many([num, den])
    num, den = num.exact_div(g), den.exact_div(g)
    a, b = num, den
    for _ in range(order):
        a, b = _rational_derivative(a, b)
        if a.is_zero():
            return LogDerivProximity(0.0, True)
    # phi^(k)/phi = (a/b) * (den/num)
    return LogDerivProximity(proximity(a * den, b * num, r, tol), False)


# -- Wronskian and nondegeneracy --------------------------------------------------


def poly_det(mat: List[List[UniPoly]]) -> UniPoly:
    """Determinant of a square matrix of polynomials (fraction-free Bareiss)."""
    n = len(mat)
    if n == 0:
        return UniPoly([1])
    a = [list(row) for row in mat]
    sign = 1
    prev = UniPoly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return UniPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def wronskian(fs: Sequence[UniPoly]) -> UniPoly:
    """det(f_j^{(i)}), rows = derivative order 0..len(fs)-1."""
    if not fs:
        raise PreconditionError("Wronskian of an empty list")
    n = len(fs)
    rows = [list(fs)]
    for _ in range(1, n):
        rows.append([p.derivative() for p in rows[-1]])
    return poly_det(rows)


@dataclass(frozen=True)
class Nondegeneracy:
    nondegenerate: bool
    rank: int
    hilbert: int
    witness: Optional[MultiPoly] = None


def nondegenerate_over_Id(f: RationalCurve, V: VarietyModel, d: int) -> Nondegeneracy:
    """Whether {A_i(f)} is linearly independent for the complement basis {A_i} of I_d(V)."""
    if len(f.components) != V.n_vars:
        raise PreconditionError(f"curve has {len(f.components)} components, V lives in P^{V.n}")
    basis = V.complement_basis(d)
    H = hilbert_function(V, d)
    images = [compose(A, f.components) for A in basis]
    width = max((p.degree for p in images), default=-1) + 1
    width = max(width, 1)
    # columns = basis elements, rows = powers of z
    mat = [[(p.coeffs[j] if j < len(p.coeffs) else ZERO) for p in images] for j in range(width)]
    null = nullspace(mat)
    rk = H - len(null)
    if not null:
        return Nondegeneracy(True, rk, H)
    c = null[0]
    lead = next(x for x in c if x)
    c = [x / lead for x in c]
    Q = MultiPoly(V.n_vars)
    for coef, A in zip(c, basis):
        if coef:
            Q = Q + A.scale(coef)
    return Nondegeneracy(False, rk, H, Q)
