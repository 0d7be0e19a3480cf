"""Sparse multivariate polynomials over Q(i) in variables x0..xn."""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .scalar import ONE, ZERO, GaussScalar, as_scalar, format_scalar

Exponent = Tuple[int, ...]


@lru_cache(maxsize=None)
def _mono_basis(n_vars: int, d: int) -> Tuple[Exponent, ...]:
    if n_vars == 0:
        return ((),) if d == 0 else ()
    if n_vars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in _mono_basis(n_vars - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def mono_basis(n_vars: int, d: int) -> List[Exponent]:
    """Exponent tuples of total degree ``d`` in graded-lex order.

    Within the single degree this is descending lexicographic order, so
    x0^d comes first and x_n^d last.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return list(_mono_basis(n_vars, d))


@lru_cache(maxsize=None)
def mono_index(n_vars: int, d: int) -> Dict[Exponent, int]:
    return {e: i for i, e in enumerate(_mono_basis(n_vars, d))}


def _glex_key(e: Exponent):
    # ascending sort key that yields graded-lex descending order
    return (-sum(e), tuple(-x for x in e))


class MultiPoly:
    """Polynomial as a map from exponent tuple to nonzero coefficient."""

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: Mapping[Exponent, object] | None = None):
        self.n_vars = n_vars
        clean: Dict[Exponent, GaussScalar] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n_vars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {n_vars} variables")
            c = as_scalar(c)
            if c:
                clean[e] = clean.get(e, ZERO) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def _raw(cls, n_vars: int, terms: Dict[Exponent, GaussScalar]) -> "MultiPoly":
        obj = object.__new__(cls)
        obj.n_vars = n_vars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, n_vars: int, c) -> "MultiPoly":
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars: int, j: int) -> "MultiPoly":
        e = [0] * n_vars
        e[j] = 1
        return cls(n_vars, {tuple(e): ONE})

    @classmethod
    def from_vector(cls, n_vars: int, d: int, coords: Sequence) -> "MultiPoly":
        basis = _mono_basis(n_vars, d)
        if len(coords) != len(basis):
            raise ValueError("coordinate vector length does not match the monomial basis")
        return cls(n_vars, dict(zip(basis, coords)))

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    @property
    def degree(self) -> int | None:
        """Total degree when homogeneous, else None. Zero polynomial has degree -1."""
        if not self.terms:
            return -1
        return self.total_degree() if self.is_homogeneous() else None

    def to_vector(self, d: int) -> List[GaussScalar]:
        """Coefficients in the ``mono_basis(n_vars, d)`` coordinates."""
        idx = mono_index(self.n_vars, d)
        vec = [ZERO] * len(idx)
        for e, c in self.terms.items():
            if sum(e) != d:
                raise ValueError("polynomial is not homogeneous of degree %d" % d)
            vec[idx[e]] = c
        return vec

    def sorted_terms(self) -> List[Tuple[Exponent, GaussScalar]]:
        return sorted(self.terms.items(), key=lambda kv: _glex_key(kv[0]))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if other.n_vars != self.n_vars:
            raise ValueError("variable count mismatch")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.n_vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.n_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = as_scalar(c)
        if not c:
            return MultiPoly._raw(self.n_vars, {})
        return MultiPoly._raw(self.n_vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, GaussScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.n_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def times_monomial(self, m: Exponent) -> "MultiPoly":
        return MultiPoly._raw(
            self.n_vars,
            {tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()},
        )

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Floating evaluation at a complex point."""
        total = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n_vars == other.n_vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.n_vars}, {str(self)!r})"

    def __str__(self):
        return format_terms(
            [(c, _mono_str(e)) for e, c in self.sorted_terms()]
        )


def _mono_str(e: Exponent) -> str:
    parts = []
    for j, k in enumerate(e):
        if k == 1:
            parts.append(f"x{j}")
        elif k > 1:
            parts.append(f"x{j}^{k}")
    return "*".join(parts)


def format_terms(items: Iterable[Tuple[GaussScalar, str]]) -> str:
    """Join (coefficient, monomial-string) pairs with +/- in the parser grammar."""
    out = []
    for c, mono in items:
        neg = False
        if not c.im and c.re < 0:
            neg, c = True, -c
        if mono:
            body = mono if c == 1 else f"{format_scalar(c)}*{mono}"
        else:
            body = format_scalar(c)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"
