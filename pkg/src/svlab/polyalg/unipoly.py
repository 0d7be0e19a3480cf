"""Dense univariate polynomials over Q(i) in the variable z."""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from .scalar import ONE, ZERO, GaussScalar, as_scalar
from .multipoly import format_terms


class UniPoly:
    """Coefficients stored lowest degree first, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[GaussScalar, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: List[GaussScalar]) -> "UniPoly":
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def z(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    # -- structure --------------------------------------------------------
    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lead(self) -> GaussScalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        inv = self.coeffs[-1].inverse()
        return UniPoly._raw([c * inv for c in self.coeffs])

    def order_at_zero(self) -> int:
        """Multiplicity of the root z = 0."""
        if not self.coeffs:
            raise ValueError("zero polynomial")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "UniPoly":
        c = as_scalar(c)
        if not c:
            return UniPoly()
        return UniPoly._raw([x * c for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = UniPoly([ONE])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = other.lead().inverse()
        if len(rem) - 1 < db:
            return UniPoly(), UniPoly._raw(rem)
        quot = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if not c:
                continue
            c = c * inv
            quot[k] = c
            for j, y in enumerate(bc):
                if y:
                    rem[k + j] = rem[k + j] - c * y
        return UniPoly._raw(quot), UniPoly._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other: "UniPoly") -> bool:
        """True if self | other."""
        return (other % self).is_zero()

    def derivative(self, k: int = 1) -> "UniPoly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return UniPoly._raw(cs)

    def __call__(self, x):
        """Exact Horner evaluation at a Gaussian rational, or float at a complex."""
        if isinstance(x, (complex, float)):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        x = as_scalar(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_numpy(self) -> np.ndarray:
        """Complex coefficients, highest degree first (numpy.polyval order)."""
        if not self.coeffs:
            return np.zeros(1, dtype=complex)
        return np.array([complex(c) for c in reversed(self.coeffs)], dtype=complex)

    def coeff_norm(self) -> float:
        return float(np.sqrt(sum(abs(complex(c)) ** 2 for c in self.coeffs)))

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({str(self)!r})"

    def __str__(self):
        items = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            items.append((c, mono))
        return format_terms(items)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_gcd_many(polys: Sequence[UniPoly]) -> UniPoly:
    g = UniPoly()
    for p in polys:
        g = poly_gcd(g, p)
        if g.degree == 0:
            break
    return g


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomp(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Yun's algorithm: monic, pairwise coprime, squarefree factors with multiplicities.

    p == lead(p) * prod(f**m for f, m in result). Constants give [].
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g, i))
        i += 1
    return out


def multiplicity(factor: UniPoly, p: UniPoly) -> int:
    """Largest m with factor**m | p (factor nonconstant, p nonzero)."""
    if factor.degree < 1:
        raise ValueError("factor must be nonconstant")
    if p.is_zero():
        raise ValueError("zero polynomial")
    m = 0
    q, r = divmod(p, factor)
    while r.is_zero():
        m += 1
        p = q
        q, r = divmod(p, factor)
    return m


def coprime_base(polys: Sequence[UniPoly]) -> List[UniPoly]:
    """Monic squarefree pairwise-coprime polynomials refining every input's
    squarefree decomposition factors.

    For each returned b and each input p, every root of b has the same
    multiplicity in p. Output order is canonical: by degree, then by
    coefficient tuple rendering.
    """
    pieces: List[UniPoly] = []
    for p in polys:
        if p.is_zero():
            raise ValueError("zero polynomial")
        pieces.extend(f for f, _ in squarefree_decomp(p))
    base: List[UniPoly] = []
    for piece in pieces:
        pending = [piece]
        while pending:
            a = pending.pop()
            if a.degree < 1:
                continue
            for idx, b in enumerate(base):
                g = poly_gcd(a, b)
                if g.degree > 0:
                    base.pop(idx)
                    rest_b = b.exact_div(g)
                    rest_a = a.exact_div(g)
                    base.append(g)
                    if rest_b.degree > 0:
                        base.append(rest_b.monic())
                    if rest_a.degree > 0:
                        pending.append(rest_a.monic())
                    break
            else:
                base.append(a.monic())
    base.sort(key=lambda b: (b.degree, str(b)))
    return base
