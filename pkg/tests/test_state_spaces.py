from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CATALOG, CATALOG_IDS
from lgcy.arith import Cyclotomic, ZLaurent
from lgcy.geometry import parse_weights
from lgcy.state_spaces import (
    basis_vector,
    deg0_operator,
    describe,
    galois,
    galois_is_isometry,
    grading_operator,
    inv_map,
    is_nondegenerate,
    pair_ambient,
    pair_narrow,
    pair_twisted,
    space,
)

QUINTIC = parse_weights("quintic")
W11112 = parse_weights("1,1,1,1,2")
F0, F12 = Fraction(0), Fraction(1, 2)


def test_degrees():
    ext = space(QUINTIC, "extended")
    assert ext.degree(2) == 2
    assert space(QUINTIC, "crp").degree((F0, 2)) == 4
    assert space(W11112, "extended").degree(2) == 2
    assert space(QUINTIC, "ambient").grading((F0, 1)) == 1


def test_narrow_pairing():
    sp = space(QUINTIC, "narrow")
    assert pair_narrow(basis_vector(sp, 1), basis_vector(sp, 4)) == Fraction(1, 5)
    assert pair_narrow(basis_vector(sp, 1), basis_vector(sp, 3)) == 0


def test_ambient_pairing():
    q = space(QUINTIC, "ambient")
    assert pair_ambient(basis_vector(q, (F0, 1)), basis_vector(q, (F0, 2))) == 5
    assert pair_ambient(basis_vector(q, (F0, 0)), basis_vector(q, (F0, 3))) == 5
    assert pair_ambient(basis_vector(q, (F0, 0)), basis_vector(q, (F0, 2))) == 0
    w = space(W11112, "ambient")
    assert pair_ambient(basis_vector(w, (F0, 1)), basis_vector(w, (F0, 2))) == 3


def test_twisted_pairing():
    sp = space(QUINTIC, "extended")
    assert pair_twisted(basis_vector(sp, 1), basis_vector(sp, 4)) == ZLaurent.const(Fraction(1, 5))
    assert pair_twisted(basis_vector(sp, 5), basis_vector(sp, 5)).is_zero() is False
    # (phi_4, phi_4)_tw = (1/5) prod_j (-lambda/5)
    assert pair_twisted(basis_vector(sp, 5), basis_vector(sp, 5)) == ZLaurent.monomial(Fraction(-1, 5**6), 0, 5)
    lam = Fraction(3, 7)
    assert pair_twisted(basis_vector(sp, 5), basis_vector(sp, 5), lam) == Fraction(1, 5) * (-lam / 5) ** 5


def test_inv_and_galois():
    sp = space(QUINTIC, "narrow")
    assert inv_map(basis_vector(sp, 1)) == basis_vector(sp, 4)
    assert galois(basis_vector(sp, 2)) == basis_vector(sp, 2).scale(Cyclotomic.zeta(5, -1))
    amb = space(QUINTIC, "ambient")
    assert inv_map(basis_vector(amb, (F0, 0))) == basis_vector(amb, (F0, 0))
    w = space(W11112, "crp")
    assert galois(basis_vector(w, (F12, 0))) == basis_vector(w, (F12, 0)).scale(-1)


def test_degree_operators():
    ext = space(QUINTIC, "extended")
    assert deg0_operator(basis_vector(ext, 3)) == basis_vector(ext, 3).scale(-2)
    crp = space(QUINTIC, "crp")
    assert deg0_operator(basis_vector(crp, (F0, 2))) == basis_vector(crp, (F0, 2)).scale(4)
    assert grading_operator(basis_vector(crp, (F0, 1))) == basis_vector(crp, (F0, 1))


@st.composite
def classes(draw, kind):
    ws = draw(st.sampled_from(CATALOG))
    sp = space(ws, kind)
    d = ws.d
    coeffs = [Cyclotomic.from_rational(d, draw(st.fractions(-5, 5, max_denominator=4))) for _ in sp.basis]
    return sp, tuple(coeffs)


@given(classes("narrow"))
def test_inv_is_involution_narrow(data):
    from lgcy.state_spaces import SectorClass

    sp, coeffs = data
    a = SectorClass(sp, coeffs)
    assert inv_map(inv_map(a)) == a


@given(classes("ambient"), st.data())
def test_pairing_symmetric(data, extra):
    from lgcy.state_spaces import SectorClass

    sp, coeffs = data
    other = tuple(Cyclotomic.from_rational(sp.ws.d, extra.draw(st.fractions(-5, 5, max_denominator=4)))
                  for _ in sp.basis)
    a, b = SectorClass(sp, coeffs), SectorClass(sp, other)
    assert pair_ambient(a, b) == pair_ambient(b, a)


@given(classes("narrow"))
def test_galois_order_d(data):
    from lgcy.state_spaces import SectorClass

    sp, coeffs = data
    a = SectorClass(sp, coeffs)
    b = a
    for _ in range(sp.ws.d):
        b = galois(b)
    assert b == a


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_structure(ws):
    nar, amb = space(ws, "narrow"), space(ws, "ambient")
    assert nar.dim == amb.dim
    assert space(ws, "extended").dim == ws.d == space(ws, "crp").dim
    for sp in (nar, amb):
        assert is_nondegenerate(sp)
        assert galois_is_isometry(sp)


def test_describe_quintic():
    out = describe(QUINTIC)
    assert out["Nar"] == [1, 2, 3, 4]
    assert out["v_c"] == "1/3125"
    assert out["spaces"]["narrow"]["basis"] == ["phi_0", "phi_1", "phi_2", "phi_3"]
