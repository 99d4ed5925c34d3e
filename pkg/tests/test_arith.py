import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgcy.arith import (
    Cyclotomic,
    GradedScalar,
    MixedGradeError,
    NilpotentPoly,
    ZLaurent,
    bernoulli_number,
    bernoulli_poly,
    cyclotomic_polynomial,
    frac_part,
    gamma_complex,
    gamma_nilpotent,
    rgamma_nilpotent,
)

ORDERS = [1, 2, 3, 4, 5, 6, 8, 12]
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cyclotomics(draw, order=None):
    m = order if order is not None else draw(st.sampled_from(ORDERS))
    weights = draw(st.dictionaries(st.integers(0, m - 1), fractions, max_size=4))
    return Cyclotomic.from_powers(m, weights)


def numeric(c: Cyclotomic) -> complex:
    z = cmath.exp(2j * cmath.pi / c.order)
    return sum(float(x) * z**e for e, x in enumerate(c.coeffs))


@pytest.mark.parametrize("m", range(1, 25))
def test_cyclotomic_polynomial_roots(m):
    coeffs = cyclotomic_polynomial(m)
    z = cmath.exp(2j * cmath.pi / m)
    assert abs(sum(c * z**e for e, c in enumerate(coeffs))) < 1e-9
    # degree is Euler's totient
    assert len(coeffs) - 1 == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@given(st.sampled_from(ORDERS).flatmap(lambda m: st.tuples(cyclotomics(m), cyclotomics(m))))
def test_field_operations_match_complex(pair):
    a, b = pair
    assert abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-6
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6 * (1 + abs(numeric(a) * numeric(b)))


@given(cyclotomics())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(st.sampled_from(ORDERS), st.integers(-50, 50), st.integers(-50, 50))
def test_zeta_powers(m, i, j):
    assert Cyclotomic.zeta(m, i) * Cyclotomic.zeta(m, j) == Cyclotomic.zeta(m, i + j)
    assert Cyclotomic.zeta(m, i).conjugate() == Cyclotomic.zeta(m, -i)


@given(cyclotomics(3), cyclotomics(4))
def test_mixed_orders_embed(a, b):
    assert abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-6


def test_to_complex_high_precision():
    z = Cyclotomic.zeta(5, 1)
    with mpmath.workprec(256):
        assert abs(z.to_complex(256) - mpmath.exp(2j * mpmath.pi / 5)) < mpmath.mpf(10) ** -70


def test_graded_scalar_refuses_mixed_grades():
    a = GradedScalar.rational(5, 1, twopi=0)
    b = GradedScalar.rational(5, 1, twopi=1)
    with pytest.raises(MixedGradeError):
        a + b
    assert (a * b).twopi == 1
    assert (b / b) == 1


@given(st.lists(fractions, min_size=1, max_size=5).filter(lambda c: c[0] != 0))
def test_nilpotent_inverse(c):
    p = NilpotentPoly(c)
    one = p * p.inverse()
    assert one.coeffs[0] == 1 and all(x == 0 for x in one.coeffs[1:])


@given(st.lists(fractions, min_size=1, max_size=4), st.lists(fractions, min_size=1, max_size=4))
def test_zlaurent_ring(a, b):
    x = ZLaurent({(i - 1, 0): v for i, v in enumerate(a)})
    y = ZLaurent({(0, i): v for i, v in enumerate(b)})
    assert (x * y - y * x).is_zero()
    assert ((x + y) * (x + y) - x * x - y * y - x * y - x * y).is_zero()


def test_zlaurent_substitute():
    c = ZLaurent.linear(Fraction(2), Fraction(3), Fraction(1))  # 2z + 3 lambda + 1
    assert c.substitute(Fraction(1, 2), Fraction(1, 3)) == 3


@pytest.mark.parametrize("x", ["0.3", "1.7", "2.5+0.5j", "-0.4+1.2j"])
def test_gamma_reflection(x):
    with mpmath.workprec(256):
        x = mpmath.mpmathify(x)
        lhs = gamma_complex(x) * gamma_complex(1 - x)
        assert abs(lhs - mpmath.pi / mpmath.sin(mpmath.pi * x)) < mpmath.mpf(10) ** -70


def test_gamma_pole():
    with pytest.raises(ZeroDivisionError):
        gamma_complex(-2)


@pytest.mark.parametrize("c", [Fraction(1, 3), Fraction(2), Fraction(-3, 2)])
def test_gamma_nilpotent_taylor(c):
    # compare with finite differences of the closed form
    with mpmath.workprec(256):
        poly = gamma_nilpotent(c, Fraction(1, 2), 3)
        f = lambda x: mpmath.gamma(mpmath.mpf(c.numerator) / c.denominator + x / 2)
        for n in range(4):
            ref = mpmath.diff(f, 0, n) / mpmath.factorial(n)
            assert abs(poly.coeffs[n] - ref) < mpmath.mpf(10) ** -40


@pytest.mark.parametrize("c", [0, -1, -4])
def test_rgamma_nilpotent_at_poles(c):
    with mpmath.workprec(256):
        poly = rgamma_nilpotent(c, 1, 3)
        for n in range(4):
            ref = mpmath.diff(mpmath.rgamma, c, n) / mpmath.factorial(n)
            assert abs(poly.coeffs[n] - ref) < mpmath.mpf(10) ** -40


def test_bernoulli():
    # standard table
    assert [bernoulli_number(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0,
                                                       Fraction(1, 42)]


@given(st.integers(0, 8), fractions)
def test_bernoulli_poly_difference(n, x):
    # B_{n+1}(x+1) - B_{n+1}(x) = (n+1) x^n
    assert bernoulli_poly(n + 1, x + 1) - bernoulli_poly(n + 1, x) == (n + 1) * x**n


@given(fractions)
def test_frac_part(x):
    f = frac_part(x)
    assert 0 <= f < 1 and (x - f).denominator == 1
