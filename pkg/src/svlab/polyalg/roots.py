"""Composition of forms with curves, and numeric roots with exact multiplicities."""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import mpmath

from ..errors import RootFindingError
from .multipoly import MultiPoly
from .scalar import ONE
from .unipoly import UniPoly, squarefree_decomp

DEFAULT_ROOT_TOL = 1e-12


def compose(Q: MultiPoly, f_components: Sequence[UniPoly]) -> UniPoly:
    """Substitute x_j -> f_j(z) exactly."""
    if len(f_components) != Q.n_vars:
        raise ValueError(
            f"arity mismatch: form has {Q.n_vars} variables, curve has {len(f_components)} components"
        )
    powers: Dict[Tuple[int, int], UniPoly] = {}

    def pw(j: int, e: int) -> UniPoly:
        key = (j, e)
        if key not in powers:
            if e == 0:
                powers[key] = UniPoly([ONE])
            elif e == 1:
                powers[key] = f_components[j]
            else:
                powers[key] = pw(j, e - 1) * f_components[j]
        return powers[key]

    out = UniPoly()
    for e, c in Q.sorted_terms():
        t = UniPoly([c])
        for j, k in enumerate(e):
            if k:
                t = t * pw(j, k)
        out = out + t
    return out


def _to_mpc(c) -> mpmath.mpc:
    return mpmath.mpc(
        mpmath.mpf(c.re.numerator) / c.re.denominator,
        mpmath.mpf(c.im.numerator) / c.im.denominator,
    )


def _simple_roots(p: UniPoly, tol: float) -> List[complex]:
    """Roots of a squarefree polynomial by Durand-Kerner iteration (mpmath)."""
    if p.degree == 1:
        r = -(p.coeffs[0] / p.coeffs[1])
        return [complex(r)]
    coeffs = [_to_mpc(c) for c in reversed(p.coeffs)]
    with mpmath.workdps(40):
        for maxsteps in (100, 400, 1600):
            try:
                roots, err = mpmath.polyroots(
                    coeffs, maxsteps=maxsteps, extraprec=80, error=True
                )
            except mpmath.libmp.NoConvergence:
                continue
            if err <= tol:
                return [complex(r) for r in roots]
    raise RootFindingError(f"root iteration did not converge for factor {p}")


def complex_roots(p: UniPoly, tol: float = DEFAULT_ROOT_TOL) -> List[Tuple[complex, int]]:
    """Distinct roots of p with exact multiplicities.

    Multiplicities come from the exact squarefree decomposition; only the
    locations are numeric. Sorted by (real, imag) for reproducible output.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root set")
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    if tol <= 0:
        raise ValueError("tol must be positive")
    out: List[Tuple[complex, int]] = []
    for factor, mult in squarefree_decomp(p):
        for r in _simple_roots(factor, tol):
            out.append((r, mult))
    out.sort(key=lambda rm: (round(rm[0].real, 9), round(rm[0].imag, 9), rm[1]))
    return out
