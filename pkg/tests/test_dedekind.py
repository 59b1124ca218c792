"""Ideal arithmetic in Z[sqrt(-5)] and the matrix-module transport, pinned
against hand-computed Hermite forms, norms, and Bezout data."""

from fractions import Fraction

import pytest

from hopfrob.dedekind import (
    SQRT_MINUS_FIVE as W,
    FractionalIdeal,
    QuadElement,
    QuadraticIdeal,
    demo_ideal,
    mat_mul,
    mat_transpose,
    matrix_lattice_generators,
    matrix_units,
    module_act,
    module_transport_report,
    psi_image,
    steinitz_matrix,
    verify_steinitz,
)
from hopfrob.errors import InternalCheckError, InvalidInputError

ONE = QuadElement(1, 0)
ZERO = QuadElement(0, 0)


def quad(a, b=0, den=1):
    return QuadElement(a, b, den)


# -- elements -----------------------------------------------------------------


def test_element_normalization():
    assert quad(2, 4, 6) == quad(1, 2, 3)
    assert quad(1, 1, -2) == quad(-1, -1, 2)
    assert quad(0, 0, 7) == ZERO
    assert quad(4, 0, 2) == quad(2)


def test_element_rejects_zero_denominator():
    with pytest.raises(InvalidInputError, match="denominator"):
        quad(1, 1, 0)


def test_ring_arithmetic():
    x = quad(1, 1)
    assert x * x.conjugate() == quad(6)
    assert W * W == quad(-5)
    assert x + quad(2, -3) == quad(3, -2)
    assert x - x == ZERO
    assert -x == quad(-1, -1)
    assert 2 * x == quad(2, 2)
    assert x.norm() == Fraction(6)
    assert quad(1, -1, 2).norm() == Fraction(3, 2)


def test_inverse_and_division():
    x = quad(3, -2, 7)
    assert x * x.inverse() == ONE
    assert (x / x) == ONE
    assert (quad(6) / quad(1, 1)) == quad(1, -1)
    with pytest.raises(InvalidInputError, match="zero"):
        ZERO.inverse()


def test_element_formatting():
    assert str(ZERO) == "0"
    assert str(quad(2)) == "2"
    assert str(W) == "w"
    assert str(-W) == "-w"
    assert str(quad(1, 1)) == "1 + w"
    assert str(quad(-3, -9, 2)) == "(-3 - 9w)/2"
    assert str(quad(0, 3, 2)) == "3w/2"


# -- ideals -------------------------------------------------------------------


def test_demo_ideal_hermite_form():
    I = demo_ideal()
    assert I.rows == ((1, 1), (0, 2))
    assert I.norm == 2
    # generator order does not matter
    assert QuadraticIdeal.from_generators(quad(1, 1), quad(2)) == I


def test_principal_ideal_hermite_forms():
    assert QuadraticIdeal.from_generators(quad(2)).rows == ((2, 0), (0, 2))
    assert QuadraticIdeal.unit_ideal().rows == ((1, 0), (0, 1))
    assert QuadraticIdeal.from_generators(quad(-3)) == QuadraticIdeal.from_generators(
        quad(3)
    )


def test_lattice_must_be_an_ideal():
    # Z + 2Z*w is a lattice but not closed under multiplication by w
    with pytest.raises(InvalidInputError, match="closed under"):
        QuadraticIdeal.from_lattice([(1, 0), (0, 2)])


def test_lattice_must_have_full_rank():
    with pytest.raises(InvalidInputError, match="full rank"):
        QuadraticIdeal.from_lattice([(2, 0), (4, 0)])


def test_zero_ideal_rejected():
    with pytest.raises(InvalidInputError, match="zero ideal"):
        QuadraticIdeal.from_generators(ZERO)
    with pytest.raises(InvalidInputError, match="zero ideal"):
        QuadraticIdeal.from_generators()


def test_generators_must_be_integral():
    with pytest.raises(InvalidInputError, match="does not lie in the ring"):
        QuadraticIdeal.from_generators(quad(1, 1, 2))


def test_direct_rows_are_validated():
    with pytest.raises(InvalidInputError, match="canonical"):
        QuadraticIdeal(((2, 3), (0, 2)))
    with pytest.raises(InvalidInputError, match="closed under"):
        QuadraticIdeal(((1, 0), (0, 2)))


def test_membership():
    I = demo_ideal()
    assert I.contains(quad(2))
    assert I.contains(quad(1, 1))
    assert I.contains(quad(-1, 3))
    assert not I.contains(ONE)
    assert not I.contains(W)
    assert not I.contains(quad(1, 1, 2))


def test_ideal_products():
    I = demo_ideal()
    R = QuadraticIdeal.unit_ideal()
    assert I.mul(I) == QuadraticIdeal.from_generators(quad(2))
    assert R.mul(R) == R
    assert I.mul(R) == I
    I3 = QuadraticIdeal.from_generators(quad(3), quad(1, 1))
    assert I.mul(I3) == I3.mul(I)


def test_conjugates():
    I = demo_ideal()
    assert I.conjugate() == I
    I3 = QuadraticIdeal.from_generators(quad(3), quad(1, 1))
    assert I3.rows == ((1, 1), (0, 3))
    assert I3.conjugate().rows == ((1, 2), (0, 3))
    assert I3.mul(I3.conjugate()) == QuadraticIdeal.from_generators(quad(3))


def test_inverse_is_conjugate_over_norm():
    I = demo_ideal()
    inv = I.inverse()
    assert inv == FractionalIdeal(I, 2)
    assert FractionalIdeal(I, 1).mul(inv).is_unit_ideal
    assert inv.contains(ONE)
    assert inv.contains(quad(1, 1, 2))
    assert not inv.contains(quad(0, 1, 2))


def test_fractional_ideal_reduces():
    two = QuadraticIdeal.from_generators(quad(2))
    inv = two.inverse()
    assert inv.num == QuadraticIdeal.unit_ideal()
    assert inv.den == 2
    with pytest.raises(InvalidInputError, match="positive"):
        FractionalIdeal(two, 0)


def test_principality_decisions():
    assert demo_ideal().principal_generator() is None
    I3 = QuadraticIdeal.from_generators(quad(3), quad(1, 1))
    assert I3.principal_generator() is None
    assert QuadraticIdeal.from_generators(quad(2)).principal_generator() == quad(2)
    assert QuadraticIdeal.from_generators(quad(-2)).principal_generator() == quad(2)
    assert QuadraticIdeal.from_generators(quad(1, 1)).principal_generator() == quad(1, 1)
    assert QuadraticIdeal.unit_ideal().principal_generator() == ONE
    assert I3.mul(I3).principal_generator() == quad(2, -1)


def test_nonprincipality_matches_norm_equation_brute_force():
    # independent exhaustive check: no element of norm 2 exists at all
    I = demo_ideal()
    witnesses = [
        (u, v)
        for u in range(-2, 3)
        for v in range(-2, 3)
        if u * u + 5 * v * v == I.norm and I.contains(quad(u, v))
    ]
    assert witnesses == []


# -- Steinitz change of basis -------------------------------------------------


def test_unit_ideal_gets_identity_matrix():
    data = steinitz_matrix(QuadraticIdeal.unit_ideal())
    assert data.matrix == ((ONE, ZERO), (ZERO, ONE))
    assert data.bezout is None
    assert data.square_generator == ONE


def test_principal_ideal_gets_diagonal_matrix():
    I = QuadraticIdeal.from_generators(quad(1, 1))
    data = steinitz_matrix(I)
    inv = quad(1, 1).inverse()
    assert data.matrix == ((inv, ZERO), (ZERO, inv))
    assert verify_steinitz(I, data.matrix).passed


def test_steinitz_matrix_for_demo_ideal():
    I = demo_ideal()
    data = steinitz_matrix(I)
    assert data.square_generator == quad(2)
    u, v = data.bezout
    alpha, beta = I.generators()
    assert u * alpha + v * beta == ONE
    assert I.inverse().contains(u)
    assert I.inverse().contains(v)
    assert verify_steinitz(I, data.matrix).passed
    # deterministic: the bounded search always lands on the same witness
    assert steinitz_matrix(I) == data


def test_documented_bezout_candidate_passes_contract():
    # alpha*c - beta*d = 2*2 - (1 + w)(1 - w)/2 = 4 - 3 = 1
    alpha, beta = quad(2), quad(1, 1)
    c, d = quad(2), quad(1, -1, 2)
    assert alpha * c - beta * d == ONE
    pi = quad(2)
    candidate = ((c, -d), (-beta / pi, alpha / pi))
    rep = verify_steinitz(demo_ideal(), candidate)
    assert rep.passed, str(rep)


def test_contract_rejects_wrong_matrix():
    rep = verify_steinitz(demo_ideal(), ((ONE, ZERO), (ZERO, ONE)))
    assert not rep.passed
    failed = {it.name for it in rep.failures()}
    assert "integer change of basis is unimodular" in failed
    assert "determinant norm is the inverse square of the ideal norm" in failed


def test_contract_rejects_nonintegral_images():
    half = quad(1, 0, 2)
    rep = verify_steinitz(demo_ideal(), ((half, ZERO), (ZERO, half)))
    assert not rep.passed
    assert not rep.items[0].ok


# -- matrix module transport --------------------------------------------------


def test_matrix_helpers():
    e11, e12, e21, e22 = matrix_units()
    assert mat_mul(e12, e21) == e11
    assert mat_mul(e21, e12) == e22
    assert mat_transpose(e12) == e21
    # right action written on the left composes contravariantly as it should
    X = ((quad(2), quad(1, 1)), (quad(0, 2), quad(-3)))
    assert module_act(e11, module_act(e12, X)) == module_act(mat_mul(e11, e12), X)


def test_lattice_generators_live_in_the_ideal():
    I = demo_ideal()
    gens = matrix_lattice_generators(I)
    assert len(gens) == 8
    assert all(I.contains(x) for g in gens for row in g for x in row)


def test_transport_identity_on_documented_pair():
    I = demo_ideal()
    C = steinitz_matrix(I).matrix
    e11, e12, _, _ = matrix_units()
    X = tuple(tuple(quad(2) * x for x in row) for row in e11)
    assert psi_image(C, module_act(e12, X)) == mat_mul(e12, psi_image(C, X))


def test_transport_report_demo_ideal():
    rep = module_transport_report(demo_ideal())
    assert rep.passed, str(rep)
    names = [it.name for it in rep.items]
    assert "ideal is not principal" in names
    assert "transport respects the action on matrix units" in names
    assert "transport respects the action on random pairs" in names
    assert "transport is a bijection onto the matrix ring" in names


def test_transport_report_second_class_representative():
    I3 = QuadraticIdeal.from_generators(quad(3), quad(1, 1))
    assert module_transport_report(I3, seed=7).passed


def test_transport_report_is_deterministic():
    a = module_transport_report(demo_ideal(), seed=3)
    b = module_transport_report(demo_ideal(), seed=3)
    assert [(it.name, it.ok, it.detail) for it in a.items] == [
        (it.name, it.ok, it.detail) for it in b.items
    ]


def test_transport_report_flags_principal_ideal():
    rep = module_transport_report(QuadraticIdeal.unit_ideal())
    assert not rep.passed
    assert rep.items[0].name == "ideal is not principal"
    assert not rep.items[0].ok
    assert all(it.ok for it in rep.items[1:])
