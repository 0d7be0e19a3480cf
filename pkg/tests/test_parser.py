from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from svlab.errors import ParseError
from svlab.polyalg import I, GaussScalar, MultiPoly, UniPoly, mono_basis, parse_poly, parse_unipoly


def test_conic_equation():
    p = parse_poly("x0*x2 - x1^2", 3)
    assert len(p.terms) == 2 and p.degree == 2
    assert p.terms[(1, 0, 1)] == 1 and p.terms[(0, 2, 0)] == -1


def test_zero():
    assert parse_poly("0", 3).is_zero()
    assert parse_unipoly("0").is_zero()


def test_complex_coefficients():
    p = parse_poly("(3/2)*x0^2 + i*x1*x2", 3)
    assert len(p.terms) == 2
    assert p.terms[(2, 0, 0)] == Fraction(3, 2)
    assert p.terms[(0, 1, 1)] == I
    q = parse_poly("(1-2i)*x0 + (-i)*x1 + (1/3+i)*x2", 3)
    assert q.terms[(1, 0, 0)] == GaussScalar(1, -2)
    assert q.terms[(0, 1, 0)] == GaussScalar(0, -1)
    assert q.terms[(0, 0, 1)] == GaussScalar(Fraction(1, 3), 1)


def test_whitespace_insignificant():
    assert parse_poly(" x0 *x1+ 2 * x2 ^ 2 ", 3) == parse_poly("x0*x1+2*x2^2", 3)


def test_univariate():
    p = parse_unipoly("z^3 - 2*z + 1")
    assert p == UniPoly([1, -2, 0, 1])
    assert parse_unipoly("-z") == UniPoly([0, -1])


@pytest.mark.parametrize(
    "text,n_vars,offset",
    [
        ("x0 + ", 3, 5),
        ("x0 ** x1", 3, 4),
        ("x3", 3, 0),
        ("x0 + 1/0*x1", 3, 7),
        ("2*z", 3, 2),
        ("x0 $ x1", 3, 3),
        ("", 3, 0),
    ],
)
def test_errors_carry_byte_offset(text, n_vars, offset):
    with pytest.raises(ParseError) as e:
        parse_poly(text, n_vars)
    assert e.value.offset == offset
    assert f"at byte {offset}" in str(e.value)


def test_offset_counts_bytes_not_characters():
    with pytest.raises(ParseError) as e:
        parse_poly("x0 + é", 3)
    assert e.value.offset == 5


def test_x_not_allowed_in_curve_component():
    with pytest.raises(ParseError):
        parse_unipoly("x0 + z")


coords = st.lists(
    st.tuples(st.fractions(max_denominator=7), st.fractions(max_denominator=7)), min_size=10, max_size=10
)


@given(coords)
def test_printer_round_trip_multivariate(cs):
    p = MultiPoly.from_vector(3, 3, [GaussScalar(a, b) for a, b in cs])
    assert len(mono_basis(3, 3)) == 10
    assert parse_poly(str(p), 3) == p


@given(st.lists(st.tuples(st.fractions(max_denominator=9), st.fractions(max_denominator=9)), max_size=8))
def test_printer_round_trip_univariate(cs):
    p = UniPoly([GaussScalar(a, b) for a, b in cs])
    assert parse_unipoly(str(p)) == p
