import pytest
from hypothesis import given, strategies as st

from iotacx.ring import (
    InexactDivisionError,
    InvalidInputError,
    LaurentPolynomial,
    T,
    UVPoly,
    UVTerm,
    laurent_div_exact,
    symmetric_alternating_poly,
)

small_poly = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=4).map(LaurentPolynomial)
steps = st.lists(st.integers(1, 5), min_size=0, max_size=6).filter(lambda c: len(c) % 2 == 0)


def test_alternating_poly_short():
    assert symmetric_alternating_poly((1, 1)) == 1 - T + T**2


def test_alternating_poly_long():
    want = 1 - T + T**6 - T**8 + T**12 - T**15 + T**18 - T**22 + T**24 - T**29 + T**30
    assert symmetric_alternating_poly((1, 5, 2, 4, 3, 3, 4, 2, 5, 1)) == want


def test_alternating_poly_empty_is_one():
    assert symmetric_alternating_poly(()) == 1


def test_alternating_poly_rejects_odd_length():
    with pytest.raises(InvalidInputError):
        symmetric_alternating_poly((1, 2, 1))


def test_alternating_poly_accepts_asymmetric():
    assert symmetric_alternating_poly((1, 2)) == 1 - T + T**3


def test_exact_division_example():
    num = (T**6 - 1) * (T - 1)
    den = (T**2 - 1) * (T**3 - 1)
    assert laurent_div_exact(num, den) == T**2 - T + 1


def test_division_by_one():
    p = 3 * T**-2 - T + 7
    assert laurent_div_exact(p, LaurentPolynomial({0: 1})) == p


def test_inexact_division_raises():
    with pytest.raises(InexactDivisionError):
        laurent_div_exact(T**2 - 1, T**3 - 1)


def test_division_by_zero_rejected():
    with pytest.raises((InvalidInputError, ZeroDivisionError)):
        laurent_div_exact(T, LaurentPolynomial())


def test_zero_coefficients_not_stored():
    p = LaurentPolynomial({0: 1, 3: 0}) + LaurentPolynomial({0: -1})
    assert p.is_zero()
    assert p.terms == {}


@given(steps)
def test_alternating_poly_shape(c):
    p = symmetric_alternating_poly(c)
    coeffs = [v for _, v in sorted(p.terms.items())]
    assert len(coeffs) == len(c) + 1
    assert coeffs == [(-1) ** k for k in range(len(coeffs))]


@given(small_poly, small_poly)
def test_division_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert laurent_div_exact(a * b, b) == a


@given(small_poly, small_poly, small_poly)
def test_laurent_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_uvterm_rejects_negative_exponent():
    with pytest.raises(InvalidInputError):
        UVTerm(-1, 0)


def test_uvterm_product_and_swap():
    assert UVTerm(1, 2) * UVTerm(3, 0) == UVTerm(4, 2)
    assert UVTerm(1, 2).swap() == UVTerm(2, 1)


uvpoly = st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=5).map(
    lambda s: UVPoly(UVTerm(i, j) for i, j in s)
)


@given(uvpoly)
def test_uvpoly_addition_is_involution(p):
    assert not (p + p)


@given(uvpoly, uvpoly, uvpoly)
def test_uvpoly_distributive(p, q, r):
    assert p * (q + r) == p * q + p * r


def test_uvpoly_derivatives():
    p = UVPoly.mono(3, 0) + UVPoly.mono(0, 3) + UVPoly.mono(2, 1)
    assert p.d_du() == UVPoly.mono(2, 0)
    assert p.d_dv() == UVPoly.mono(0, 2) + UVPoly.mono(2, 0)
    assert not p.has_constant()
    assert (p + UVPoly.mono()).has_constant()
