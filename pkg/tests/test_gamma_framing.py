import random
from fractions import Fraction

import mpmath
import pytest

from conftest import CATALOG, CATALOG_IDS
from lgcy.branes import KClass, ch_kclass, ch_koszul
from lgcy.gamma_framing import FJRW, GW, framing, gamma_class, pairing_P, reflection_defect, verify_gamma_pairing
from lgcy.geometry import parse_weights
from lgcy.hypergeom import build_series, h_fjrw, h_gw, i_numeric
from lgcy.arith import NilpotentPoly
from lgcy.state_spaces import space

QUINTIC = parse_weights("quintic")
F0 = Fraction(0)
TIGHT = mpmath.mpf(10) ** -30


def gamma_by_quadrature(x):
    """Euler's integral, an evaluation route independent of mpmath.gamma."""
    return mpmath.quad(lambda t: t ** (x - 1) * mpmath.exp(-t), [0, 1, mpmath.inf])


def test_quintic_fjrw_gamma_value():
    G = gamma_class(QUINTIC, FJRW).sectors
    ref = gamma_by_quadrature(mpmath.mpf(4) / 5) ** 5
    assert abs(G[1] - ref) < mpmath.mpf(10) ** -40
    assert abs(G[1] - mpmath.mpf("2.1389")) < 1e-4


def test_gw_gamma_constant_term():
    assert abs(gamma_class(QUINTIC, GW).sectors[F0].coeffs[0] - 1) < TIGHT


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_twisted_gamma_at_zero_is_plain(ws):
    plain = gamma_class(ws, FJRW).sectors
    tw = gamma_class(ws, FJRW, 0).sectors
    for k, v in plain.items():
        assert abs(v - tw[k]) < TIGHT


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_gamma_reflection(ws):
    assert reflection_defect(ws) < 1e-60


def test_framing_of_structure_sheaf():
    amb = space(QUINTIC, "ambient")
    s = framing(QUINTIC, GW, ch_kclass(QUINTIC, KClass.line(0)), 1)
    assert abs(s[amb.index[(F0, 0)]] - (2j * mpmath.pi) ** -3) < TIGHT


def test_framing_scaling_in_z():
    # ch(O) is concentrated in degree 0 and Gamma mixes in only higher p-powers;
    # the p^0 entry scales like z^0 and the p^i entry like z^{-i}
    ch = ch_kclass(QUINTIC, KClass.line(0))
    s1, s4 = framing(QUINTIC, GW, ch, 1), framing(QUINTIC, GW, ch, 4)
    amb = space(QUINTIC, "ambient")
    for (f, i), n in amb.index.items():
        assert abs(s4[n] - mpmath.mpf(4) ** (-i) * s1[n]) < TIGHT * (1 + abs(s1[n]))


def test_fjrw_framing_finite_nonzero():
    s = framing(QUINTIC, FJRW, ch_koszul(QUINTIC, 0), 1)
    assert all(mpmath.isfinite(x) and abs(x) > 0 for x in s)


def test_pairing_examples_gw():
    O, O1 = ch_kclass(QUINTIC, KClass.line(0)), ch_kclass(QUINTIC, KClass.line(1))
    assert abs(pairing_P(QUINTIC, GW, O, O, 1)) < TIGHT
    assert abs(pairing_P(QUINTIC, GW, O, O1, 1) - 5) < TIGHT


def test_pairing_fjrw_is_minus_hrr():
    from lgcy.branes import euler_pairing_mf

    for a, b in [(0, 1), (1, 0), (0, 2), (3, 1)]:
        P = pairing_P(QUINTIC, FJRW, ch_koszul(QUINTIC, a), ch_koszul(QUINTIC, b), 1)
        assert abs(P + euler_pairing_mf(QUINTIC, a, b)) < TIGHT


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_verify_gamma_pairing(ws):
    r = verify_gamma_pairing(ws)
    assert r["pass"]
    for side in ("GW", "FJRW"):
        assert r[side]["z_spread"] < 1e-30
    assert r["GW"]["max_error_derived"] < 1e-30
    assert r["FJRW"]["max_error_derived"] < 1e-30
    # the (-1)^(N-1) sign agrees with -chi exactly when N is odd... i.e. even hc
    assert r["fjrw_stated_sign_holds"] == (ws.hc % 2 == 0)


def _points(seed, n, radius):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        r = radius * rng.uniform(0.005, 0.03)
        out.append((mpmath.mpf(r), mpmath.mpc(rng.uniform(0.5, 2.0), rng.uniform(-0.6, 0.6)),
                    mpmath.mpf(rng.uniform(0.05, 0.2))))
    return out


@pytest.mark.parametrize("ws", [parse_weights("quintic"), parse_weights("11112")], ids=["quintic", "11112"])
def test_i_equals_gamma_times_h_fjrw(ws):
    s = build_series(ws, FJRW, None, 24)
    R = float(ws.conifold) ** (-1.0 / ws.d)
    ext = space(ws, "extended")
    for u, z, xi in _points(1, 5, R):
        lam = xi * z
        I = i_numeric(s, u, z, lam)
        H = h_fjrw(ws, u, z, lam, K=60)[0].values
        G = gamma_class(ws, FJRW, xi).sectors
        for k in ext.basis:
            rhs = z ** (-ext.grading(k)) * G[k] * H[k] / (2j * mpmath.pi)
            assert abs(I[k] - rhs) <= 1e-25 * abs(I[k])


@pytest.mark.parametrize("ws", [parse_weights("quintic"), parse_weights("11222")], ids=["quintic", "11222"])
def test_i_equals_gamma_times_h_gw(ws):
    s = build_series(ws, GW, None, 24)
    crp = space(ws, "crp")
    for v, z, xi in _points(2, 5, float(ws.conifold)):
        lam = xi * z
        I = i_numeric(s, v, z, lam)
        H = h_gw(ws, mpmath.log(v), z, lam, K=60)[0].values
        G = gamma_class(ws, GW, xi).sectors
        for f in ws.frF:
            T = crp.truncation(f)
            h2 = NilpotentPoly([H[f].coeffs[i] * (2j * mpmath.pi) ** i for i in range(T + 1)], T)
            g = G[f] * h2
            for i in range(T + 1):
                rhs = z ** (-crp.grading((f, i))) * g.coeffs[i]
                assert abs(I[f].coeffs[i] - rhs) <= 1e-25 * max(abs(I[f].coeffs[i]), 1e-300)
