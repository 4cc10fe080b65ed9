import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iotacx import gf2
from iotacx.chain import FreeUVComplex, d_squared_is_zero, localized_tower
from iotacx.equivalence import StandardParams, is_equivalent, standard_complex
from iotacx.involutive import (
    IotaKComplex,
    a0_subcomplex,
    dual,
    omega,
    tensor_iota,
    tensor_iota_k,
    trivial_iota,
    trivial_iota_k,
    verify_involution,
)
from iotacx.knots import box_complex, cn, trefoil
from iotacx.ring import InvalidInputError


def test_trefoil_involution_needs_no_homotopy():
    res = verify_involution(trefoil())
    assert res and not res.homotopy.any()


@pytest.mark.parametrize("n", [1, 3, 5])
def test_box_involution_needs_no_homotopy(n):
    res = verify_involution(box_complex(n))
    assert res and not res.homotopy.any()


def test_box_without_corner_term_fails():
    b = box_complex(3)
    iota = b.iota_k.copy()
    iota[b.complex.index("w"), b.complex.index("v")] = 0
    res = verify_involution(IotaKComplex(b.complex, iota))
    assert not res
    assert res.residual is not None


def test_involution_must_swap_gradings():
    c = FreeUVComplex(["a", "b"], [0, 2], [2, 0])
    with pytest.raises(InvalidInputError):
        IotaKComplex(c, np.eye(2, dtype=np.uint8))
    IotaKComplex(c, np.array([[0, 1], [1, 0]], dtype=np.uint8))


def test_tensor_of_c3_has_expected_rank(x3):
    assert x3.n == 16 * 9 - 8 * 3 + 1
    assert d_squared_is_zero(x3.complex)
    assert verify_involution(x3)


def test_tensor_with_unit_is_relabeling():
    a = cn(2)
    t = tensor_iota_k(a, trivial_iota_k())
    assert (t.complex.d == a.complex.d).all()
    assert (t.iota_k == a.iota_k).all()
    assert (t.complex.gr_w == a.complex.gr_w).all() and (t.complex.gr_z == a.complex.gr_z).all()


def test_trefoil_squared_verifies():
    assert verify_involution(tensor_iota_k(trefoil(), trefoil()))


SMALL = {
    "trefoil": trefoil,
    "C3": lambda: cn(3),
    "B3": lambda: box_complex(3),
    "trefoil*": lambda: dual(trefoil()),
    "C3*": lambda: dual(cn(3)),
    "B3*": lambda: dual(box_complex(3)),
}


@pytest.mark.parametrize("left,right", list(itertools.product(SMALL, SMALL)))
def test_tensor_products_satisfy_involution_relation(left, right):
    a, b = SMALL[left](), SMALL[right]()
    assert verify_involution(a) and verify_involution(b)
    t = tensor_iota_k(a, b)
    assert d_squared_is_zero(t.complex)
    assert verify_involution(t)


def test_tensor_iota_rank_and_grading():
    a = standard_complex(StandardParams(("+", -1, "+", -3)))
    b = standard_complex(StandardParams(("-", 1, "-", 2)))
    t = tensor_iota(a, b)
    assert t.n == 25
    assert t.complex.gr[t.complex.index("t1|t2")] == a.complex.gr[1] + b.complex.gr[2]


def test_tensor_iota_with_unit():
    a = standard_complex(StandardParams(("+", -1)))
    t = tensor_iota(a, trivial_iota())
    assert (t.complex.d == a.complex.d).all() and (t.iota == a.iota).all()


def test_dual_of_trefoil():
    d = dual(trefoil())
    c = d.complex
    # d(s1*) = U x0*, d(s-1*) = V x0*
    assert c.entry("x0*", "y1*").terms == trefoil().complex.entry("y1", "x0").terms
    assert c.entry("x0*", "y-1*").terms == trefoil().complex.entry("y-1", "x0").terms
    assert verify_involution(d)


@pytest.mark.parametrize("make", [trefoil, lambda: box_complex(3), lambda: cn(2)])
def test_double_dual_is_identity(make):
    a = make()
    dd = dual(dual(a))
    assert [s.rstrip("*") for s in dd.names] == list(a.names)
    assert (dd.complex.d == a.complex.d).all() and (dd.iota_k == a.iota_k).all()
    assert (dd.complex.gr_w == a.complex.gr_w).all()


def test_dual_of_standard_c2_is_its_negative():
    c2 = standard_complex(StandardParams(("+", -1, "+", -2)))
    neg = standard_complex(StandardParams(("-", 1, "-", 2)))
    assert is_equivalent(dual(c2), neg, "almost")


def test_a0_of_trefoil():
    a0 = a0_subcomplex(trefoil())
    c = a0.complex
    assert c.names == ("y-1", "x0", "y1")
    # basis x0, U y1, V y-1: both arrows out of x0 become U^0
    k, _ = c.exponents(-1)
    assert {(c.names[t], int(k[t, s])) for t, s in np.argwhere(c.d)} == {("y-1", 0), ("y1", 0)}
    assert verify_involution(a0, "strict")


def test_a0_of_single_generator():
    a0 = a0_subcomplex(trivial_iota_k())
    assert a0.n == 1 and localized_tower(a0.complex).rank == 1


def test_a0_rejects_half_integer_alexander():
    # the constructors refuse such gradings, so corrupt a valid complex
    k = trivial_iota_k()
    k.complex.gr_z = np.array([1])
    with pytest.raises(InvalidInputError):
        a0_subcomplex(k)


@pytest.mark.parametrize(
    "make",
    [trefoil, lambda: cn(3), lambda: box_complex(3), lambda: tensor_iota_k(box_complex(3), trefoil())],
)
def test_a0_has_one_basis_element_per_generator_and_one_tower(make):
    k = make()
    a0 = a0_subcomplex(k)
    assert a0.n == k.n
    assert localized_tower(a0.complex).rank == 1
    assert verify_involution(a0, "strict")


def test_knot_times_its_dual_is_trivial_after_a0():
    t = tensor_iota_k(trefoil(), dual(trefoil()))
    assert is_equivalent(a0_subcomplex(t), trivial_iota(), "almost")


params = st.integers(0, 4).flatmap(
    lambda m: st.tuples(*([st.sampled_from("+-"), st.sampled_from([-3, -2, -1, 1, 2, 3])] * m))
)


@settings(max_examples=60, deadline=None)
@given(params)
def test_standard_complexes_are_almost_iota_complexes(p):
    c = standard_complex(StandardParams(p))
    assert verify_involution(c, "almost")
    w = omega(c)
    # omega preserves grading and squares to zero on the nose
    assert not gf2.mul(w, w).any()


def test_verify_rejects_unknown_mode():
    with pytest.raises(ValueError):
        verify_involution(trefoil(), "loose")
