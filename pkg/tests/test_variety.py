import itertools
import random
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import family, variety
from svlab.errors import PreconditionError
from svlab.polyalg import MultiPoly, mono_basis, parse_poly, rank
from svlab.variety import (
    Position,
    Verdict,
    check_dimension,
    check_subgeneral,
    class_coords,
    family_rank,
    hilbert_function,
    ideal_graded_piece,
    is_empty_on_variety,
)


def sympy_ideal_rank(n_vars, gens, d):
    """Rank of the degree-d multiples of gens, computed independently with sympy."""
    xs = sympy.symbols(f"x0:{n_vars}")
    rows = []
    basis = list(itertools.combinations_with_replacement(range(n_vars), d))
    monos = [sympy.Mul(*[xs[i] for i in c]) for c in basis]
    for g in gens:
        G = sympy.sympify(g.replace("^", "**"), locals={f"x{i}": xs[i] for i in range(n_vars)})
        e = sympy.Poly(G, *xs).total_degree()
        if e > d:
            continue
        for c in itertools.combinations_with_replacement(range(n_vars), d - e):
            m = sympy.Mul(*[xs[i] for i in c])
            P = sympy.Poly(sympy.expand(m * G), *xs)
            rows.append([P.coeff_monomial(mono) for mono in monos])
    return sympy.Matrix(rows).rank() if rows else 0


CONIC = ["x0*x2 - x1^2"]
TWISTED = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]


# -- graded pieces and Hilbert function --------------------------------------------


def test_ideal_piece_ranks(conic):
    assert rank(ideal_graded_piece(conic, 2).entries) == 1
    assert rank(ideal_graded_piece(conic, 3).entries) == 3
    assert rank(ideal_graded_piece(variety(3, 3), 4).entries) == 0


@pytest.mark.parametrize("gens,n_vars,d", [(CONIC, 3, 3), (CONIC, 3, 4), (TWISTED, 4, 2), (TWISTED, 4, 3)])
def test_ideal_piece_rank_matches_sympy(gens, n_vars, d):
    V = variety(n_vars - 1, 1, gens)
    assert rank(ideal_graded_piece(V, d).entries) == sympy_ideal_rank(n_vars, gens, d)


def test_hilbert_examples(conic, plane):
    assert hilbert_function(plane, 2) == 6
    assert hilbert_function(conic, 1) == 3
    assert hilbert_function(conic, 2) == 5
    assert hilbert_function(conic, 3) == 7


@pytest.mark.parametrize("n", range(1, 5))
def test_hilbert_projective_space(n):
    V = variety(n, n)
    for d in range(7):
        assert hilbert_function(V, d) == comb(n + d, n)


def test_hilbert_conic_veronese(conic):
    for d in range(1, 6):
        assert hilbert_function(conic, d) == 2 * d + 1


def test_hilbert_twisted_cubic(twisted_cubic):
    # parametrize by (1, t, t^2, t^3): monomials of degree d give t^0..t^{3d}
    for d in range(1, 5):
        exps = {sum(j * e for j, e in enumerate(m)) for m in mono_basis(4, d)}
        assert exps == set(range(3 * d + 1))
        assert hilbert_function(twisted_cubic, d) == len(exps)


def test_dimension_cross_check(conic, twisted_cubic):
    assert check_dimension(conic) is None
    assert check_dimension(twisted_cubic) is None
    wrong = variety(2, 2, CONIC)
    assert "does not fit" in check_dimension(wrong)


# -- classes and ranks -------------------------------------------------------------


def test_class_examples(conic, plane):
    assert class_coords(parse_poly("x0*x2 - x1^2", 3), conic).is_zero()
    a = class_coords(parse_poly("x0*x2", 3), conic)
    b = class_coords(parse_poly("x1^2", 3), conic)
    assert a == b and not a.is_zero()
    c = class_coords(parse_poly("x0^2", 3), plane)
    assert sorted(c.coords, key=lambda x: x.re) == [0] * 5 + [1]
    with pytest.raises(PreconditionError):
        class_coords(parse_poly("x0 + x1^2", 3), conic)


def test_family_rank_examples(conic, plane):
    assert family_rank([parse_poly("x1^2", 3), parse_poly("x0*x2", 3)], conic) == 1
    assert family_rank([parse_poly(s, 3) for s in ("x0^2", "x1^2", "x2^2")], plane) == 3
    Q = parse_poly("x0*x1 + 3*x2^2", 3)
    assert family_rank([Q, Q.scale(2)], plane) == 1
    with pytest.raises(PreconditionError):
        family_rank([parse_poly("x0", 3), parse_poly("x0^2", 3)], plane)


quad_coords = st.lists(st.integers(-4, 4), min_size=6, max_size=6)


@given(quad_coords, quad_coords, st.integers(-3, 3), st.fractions(max_denominator=5))
def test_class_coords_linear(p, q, a, b):
    V = variety(2, 1, CONIC)
    P = MultiPoly.from_vector(3, 2, p)
    Q = MultiPoly.from_vector(3, 2, q)
    lhs = class_coords(P.scale(a) + Q.scale(b), V).coords
    pc, qc = class_coords(P, V).coords, class_coords(Q, V).coords
    assert list(lhs) == [a * x + b * y for x, y in zip(pc, qc)]


def test_family_rank_monotone_and_bounded(conic):
    rng = random.Random(5)
    for _ in range(30):
        Qs = [MultiPoly.from_vector(3, 2, [rng.randint(-2, 2) for _ in range(6)]) for _ in range(7)]
        Qs = [Q for Q in Qs if not Q.is_zero()]
        prev = 0
        for j in range(1, len(Qs) + 1):
            r = family_rank(Qs[:j], conic)
            assert prev <= r <= min(j, hilbert_function(conic, 2))
            prev = r


# -- emptiness ---------------------------------------------------------------------


def test_emptiness_examples(conic):
    res = is_empty_on_variety(conic, [parse_poly("x0", 3), parse_poly("x2", 3)])
    assert res.verdict is Verdict.EMPTY and res.witness_degree == 2
    assert is_empty_on_variety(conic, [parse_poly("x0", 3)]).verdict is Verdict.NONEMPTY
    line = variety(1, 1)
    assert is_empty_on_variety(line, [parse_poly("x0*x1", 2)]).verdict is Verdict.NONEMPTY


def _line_meet(a, b):
    """Intersection point of two lines in P^2 (cross product)."""
    return sympy.Matrix(a).cross(sympy.Matrix(b))


def test_emptiness_against_pointwise_oracle(conic):
    # two lines meet in one point; the pair misses the conic iff that point is off it
    rng = random.Random(17)
    seen = set()
    for _ in range(120):
        a = [rng.randint(-3, 3) for _ in range(3)]
        b = [rng.randint(-3, 3) for _ in range(3)]
        p = _line_meet(a, b)
        if not any(a) or not any(b) or not any(p):
            continue
        on_conic = p[0] * p[2] - p[1] ** 2 == 0
        Qs = [MultiPoly.from_vector(3, 1, v) for v in (a, b)]
        res = is_empty_on_variety(conic, Qs)
        assert res.verdict is (Verdict.NONEMPTY if on_conic else Verdict.EMPTY)
        seen.add(on_conic)
    # force a few lines through a conic point (t^0, t, t^2) so both branches run
    for t in range(-3, 4):
        pt = (1, t, t * t)
        a, b = (t, -1, 0), (t * t, 0, -1)
        assert sum(x * y for x, y in zip(a, pt)) == 0 and sum(x * y for x, y in zip(b, pt)) == 0
        Qs = [MultiPoly.from_vector(3, 1, v) for v in (a, b)]
        assert is_empty_on_variety(conic, Qs).verdict is Verdict.NONEMPTY
    assert False in seen


def test_emptiness_requires_forms(conic):
    with pytest.raises(PreconditionError):
        is_empty_on_variety(conic, [])
    with pytest.raises(PreconditionError):
        is_empty_on_variety(conic, [parse_poly("x0 + x1^2", 3)])


# -- subgeneral position -----------------------------------------------------------


def test_position_four_lines(conic):
    fam = family(["x0 + x1 + 3*x2", "x0 - 2*x1 + x2", "2*x0 + x1 - x2", "x0 + 5*x2"], 1, 2)
    rep = check_subgeneral(conic, fam)
    assert rep.verdict is Position.IN_POSITION
    assert len(rep.rows) == 6 and all(r.verdict is Verdict.EMPTY for r in rep.rows)
    for R in itertools.combinations(range(4), 2):
        assert family_rank([fam.normalized()[i] for i in R], conic) >= 2


def test_position_lines_through_conic_point(conic):
    # both lines pass through (1:0:0), which lies on the conic
    fam = family(["x1", "x2", "x0 + x1 + x2"], 1, 2)
    rep = check_subgeneral(conic, fam)
    assert rep.verdict is Position.NOT_IN_POSITION
    assert [r.subset for r in rep.violations] == [(0, 1)]


def test_position_whole_family(conic):
    fam = family(["x0", "x2"], 1, 2)
    rep = check_subgeneral(conic, fam)
    assert [r.subset for r in rep.rows] == [(0, 1)]
    assert rep.verdict is Position.IN_POSITION
    with pytest.raises(PreconditionError):
        check_subgeneral(conic, family(["x0"], 1, 2))


def test_position_rank_property_on_random_families(plane):
    rng = random.Random(23)
    hits = 0
    for _ in range(25):
        vecs = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(4)]
        if not all(any(v) for v in vecs):
            continue
        fam = family([str(MultiPoly.from_vector(3, 1, v)) for v in vecs], 2, 2)
        rep = check_subgeneral(plane, fam)
        if rep.verdict is Position.IN_POSITION:
            hits += 1
            for R in itertools.combinations(range(fam.q), fam.N + 1):
                assert family_rank([fam.normalized()[i] for i in R], plane) >= plane.k + 1
    assert hits > 0


def test_mixed_degree_family_normalization(conic):
    fam = family(["x0 + x1", "x0*x1 + x2^2"], 1, 2)
    assert fam.d == 2
    assert [Q.degree for Q in fam.normalized()] == [2, 2]
    assert fam.normalized()[0] == parse_poly("x0 + x1", 3) ** 2
