import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CATALOG, CATALOG_IDS
from lgcy.arith import Cyclotomic, rational_part
from lgcy.branes import (
    KClass,
    ch_kclass,
    ch_koszul,
    ch_line,
    euler_cy,
    euler_pairing_cy,
    euler_pairing_mf,
    inv_ch_koszul,
    koszul_reduce,
    koszul_relation,
    monodromy_check,
    orlov_kclass,
    spherical_twist,
)
from lgcy.geometry import parse_weights
from lgcy.state_spaces import galois, space

QUINTIC = parse_weights("quintic")
F0 = Fraction(0)
z5 = lambda k: Cyclotomic.zeta(5, k)  # noqa: E731


def test_cyclotomic_examples():
    assert sum((z5(k) for k in range(5)), Cyclotomic.zero(5)) == 0
    assert (1 - Cyclotomic.zeta(2, 1)).inverse() == Fraction(1, 2)
    assert (1 - z5(-1)) * (1 - z5(1)) == 2 - z5(1) - z5(4)
    s0 = sum(((1 - z5(-k)) ** 5 for k in range(1, 5)), Cyclotomic.zero(5)) / 5
    s1 = sum((z5(k) * (1 - z5(k)) ** 5 for k in range(1, 5)), Cyclotomic.zero(5)) / 5
    assert rational_part(s0) == 0 and rational_part(s1) == 5


def test_koszul_chern_character():
    ch0 = ch_koszul(QUINTIC, 0)
    assert ch0[1] == (1 - z5(-1)) ** 5
    ch1 = ch_koszul(QUINTIC, 1)
    for k in range(1, 5):
        assert ch1[k] == z5(k) * (1 - z5(-k)) ** 5


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_koszul_characters_span_narrow(ws):
    from lgcy import linalg

    cols = [list(ch_koszul(ws, q).coeffs) for q in range(ws.d)]
    assert linalg.rank(cols) == len(ws.narrow)


def test_orlov_kclass_examples():
    assert orlov_kclass(QUINTIC, 0, 0) == KClass.line(0, -1)
    assert orlov_kclass(QUINTIC, 1, 0) == KClass.from_dict({1: -1, 0: 5})
    assert orlov_kclass(QUINTIC, 0, -1) == KClass.from_dict({0: -1, -1: 5})


def test_koszul_reduce_example():
    assert koszul_reduce(QUINTIC, KClass.line(5)) == KClass.from_dict({4: 5, 3: -10, 2: 10, 1: -5, 0: 1})


@st.composite
def kclasses(draw):
    ws = draw(st.sampled_from(CATALOG))
    data = draw(st.dictionaries(st.integers(-2 * ws.d, 3 * ws.d), st.integers(-4, 4), max_size=4))
    return ws, KClass.from_dict(data)


@given(kclasses())
def test_reduction_is_a_congruence(data):
    ws, c = data
    r = koszul_reduce(ws, c)
    assert all(0 <= m < ws.d for m, _ in r.terms)
    assert koszul_reduce(ws, r) == r
    assert ch_kclass(ws, r) == ch_kclass(ws, c)
    probe = KClass.line(1)
    assert euler_pairing_cy(ws, probe, r) == euler_pairing_cy(ws, probe, c)


@given(st.sampled_from(CATALOG), st.integers(-20, 20))
def test_koszul_relation_vanishes(ws, n):
    assert ch_kclass(ws, koszul_relation(ws, n)).is_zero()
    assert euler_pairing_cy(ws, KClass.line(0), koszul_relation(ws, n)) == 0


def test_ch_line_examples():
    amb = space(QUINTIC, "ambient")
    c = ch_line(QUINTIC, 1)
    assert [c[(F0, i)] for i in range(4)] == [1, 1, Fraction(1, 2), Fraction(1, 6)]
    assert ch_line(QUINTIC, 0) == amb.from_dict({(F0, 0): Cyclotomic.one(5)})
    w = parse_weights("1,1,1,1,2")
    # the 1/2 sector of X is empty
    assert space(w, "ambient").truncation(Fraction(1, 2)) == -1


def test_euler_cy_examples():
    assert euler_cy(QUINTIC, 0) == 0
    assert euler_cy(QUINTIC, 1) == 5
    assert euler_cy(QUINTIC, 5) == 125


@given(st.integers(-30, 30))
def test_euler_cy_quintic_riemann_roch(m):
    # chi(O(m)) = H^3 m^3/6 + c_2.H m/12 with H^3 = 5, c_2.H = 50
    assert euler_cy(QUINTIC, m) == Fraction(5 * m**3, 6) + Fraction(50 * m, 12)


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_euler_cy_monomial_count(ws):
    from lgcy.geometry import weighted_monomial_count

    for i in range(1, ws.d):
        assert euler_cy(ws, i) == weighted_monomial_count(ws, i)
    assert euler_cy(ws, ws.d) == weighted_monomial_count(ws, ws.d) - 1


@given(st.sampled_from(CATALOG), st.integers(-15, 15))
def test_serre_duality(ws, m):
    # chi(O(m)) = (-1)^dim chi(O(-m)) on a CY of dimension N - 2
    assert euler_cy(ws, m) == (-1) ** (ws.N - 2) * euler_cy(ws, -m)


def test_euler_pairing_examples():
    O, O1 = KClass.line(0), KClass.line(1)
    assert euler_pairing_cy(QUINTIC, O, O1) == 5
    assert euler_pairing_cy(QUINTIC, -O, -O) == 0
    assert euler_pairing_cy(QUINTIC, -O, -O1 + O.scale(5)) == 5
    assert euler_pairing_mf(QUINTIC, 0, 0) == 0
    assert euler_pairing_mf(QUINTIC, 0, 1) == 5


def _hrr_numeric(ws, a, b):
    """Complex-float evaluation of the narrow HRR sum, independent of the exact field code."""
    d = ws.d
    z = lambda e: cmath.exp(2j * cmath.pi * e / d)  # noqa: E731

    def ch(q, k):
        out = z(q * k)
        for w in ws.weights:
            out *= 1 - z(-w * k)
        return out

    total = 0
    for k in ws.narrow:
        den = 1
        for w in ws.weights:
            den *= 1 - z(k * w)
        total += ch(a, k) * ch(b, d - k) / den
    return total / d


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_hrr_against_float_oracle(ws):
    for a in range(ws.d):
        for b in range(ws.d):
            assert abs(euler_pairing_mf(ws, a, b) - _hrr_numeric(ws, a, b)) < 1e-9


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_galois_shifts_grading(ws):
    shift = Cyclotomic.zeta(ws.d, -1)
    for q in range(2 * ws.d):
        assert galois(inv_ch_koszul(ws, q)).scale(shift) == inv_ch_koszul(ws, q + 1)


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_orlov_shift_by_d(ws):
    for q in range(ws.d):
        for l in (-1, 0, 1):
            assert ch_kclass(ws, orlov_kclass(ws, q + ws.d, l)) == ch_kclass(ws, orlov_kclass(ws, q, l))


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_monodromy(ws):
    assert monodromy_check(ws)["pass"]


def test_spherical_twist_of_structure_sheaf():
    # T_O(O) = O - chi(O, O) O = O on the quintic since chi(O, O) = 0
    assert spherical_twist(QUINTIC, KClass.line(0)) == KClass.line(0)
    # T_O(O(1)) = O(1) - 5 O
    assert spherical_twist(QUINTIC, KClass.line(1)) == KClass.from_dict({1: 1, 0: -5})
