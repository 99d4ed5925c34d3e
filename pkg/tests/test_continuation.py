import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CATALOG, CATALOG_IDS
from lgcy import kernels
from lgcy.branes import KClass, ch_kclass, inv_ch_kclass
from lgcy.continuation import (
    PathSpec,
    ResonanceError,
    apply_u,
    conifold_consistency,
    descends,
    gw_jet_seeds,
    ode_transport,
    u_matrix,
    u_tw_limit,
    u_tw_limit_literal,
    u_tw_matrix,
    verify_mb,
    verify_noneq_limit,
    verify_orlov,
    window_path,
    window_recursion,
)
from lgcy.geometry import parse_weights
from lgcy.state_spaces import space

QUINTIC = parse_weights("quintic")
W11112 = parse_weights("11112")


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_orlov_identity(ws):
    for l in (-1, 0, 2):
        for q in range(2 * ws.d):
            assert verify_orlov(ws, q, l)["pass"]


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_window_recursion_and_conifold(ws):
    for l in (-2, -1, 0, 1):
        assert window_recursion(ws, l)
        assert conifold_consistency(ws, l)["pass"]


def test_conifold_rejects_non_adjacent():
    with pytest.raises(ValueError):
        conifold_consistency(QUINTIC, 0, 2)


def test_u_matrix_is_exact_and_invertible():
    from lgcy import linalg

    M = [list(r) for r in u_matrix(QUINTIC, 0)]
    assert linalg.rank(M) == len(M)


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_noneq_limit(ws):
    for l in (-2, 0, 1):
        r = verify_noneq_limit(ws, l)
        assert r["pass"], r
        assert descends(ws, l)


def test_literal_broad_factor_only_matters_off_trivial_sectors():
    for l in range(-2, 3):
        assert u_tw_limit(QUINTIC, l) == u_tw_limit_literal(QUINTIC, l)
    assert u_tw_limit(W11112, 1) != u_tw_limit_literal(W11112, 1)
    assert u_tw_limit(W11112, 0) == u_tw_limit_literal(W11112, 0)


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_numeric_twisted_matrix_tends_to_limit(ws):
    crp = space(ws, "crp")
    for l in (0, 1):
        lim = u_tw_limit(ws, l)
        errs = []
        for xi in (1e-3, 1e-5):
            M = u_tw_matrix(ws, l, xi)
            worst = 0.0
            for (k, f), entry in lim.items():
                for n, v in entry.items():
                    ref = complex(v.to_complex())
                    worst = max(worst, abs(complex(M[crp.index[(f, n)]][k - 1]) - ref) / max(1.0, abs(ref)))
            errs.append(worst)
        assert errs[0] < 1e-1 and errs[1] < errs[0] / 50


def test_resonance_guard():
    with pytest.raises(ResonanceError):
        u_tw_matrix(QUINTIC, 0, 0)
    with pytest.raises(ResonanceError):
        u_tw_matrix(QUINTIC, 0, 1e-9)
    u_tw_matrix(QUINTIC, 0, 0.1)


def test_window_path_shape():
    p = window_path(QUINTIC, 1)
    c = cmath.log(1 / 3125).real
    assert abs(p.start - complex(c - 6, 0)) < 1e-12 and abs(p.end - complex(c + 6, 0)) < 1e-12
    assert max(w.imag for w in p.waypoints) == pytest.approx(cmath.pi)
    assert min(w.imag for w in window_path(QUINTIC, 0).waypoints) == pytest.approx(-cmath.pi)


def _seeds(ws, s0, xi=0.1):
    return gw_jet_seeds(ws, s0, 1, Fraction(1, 10), K=120, prec=128)


def test_null_path_returns_seeds():
    p = window_path(QUINTIC, 0)
    Y0 = _seeds(QUINTIC, p.start)
    Y, st_ = ode_transport(QUINTIC, 0.1, PathSpec((p.start, p.start)), Y0)
    assert Y == [list(c) for c in Y0] and st_["steps"] == 0


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_reverse_round_trip(backend):
    if backend == "cython" and kernels.c_integrate_path is None:
        pytest.skip("compiled kernel not built")
    fn = kernels.py_integrate_path if backend == "python" else kernels.c_integrate_path
    from lgcy.continuation import pf_coefficients

    p = window_path(QUINTIC, 0)
    Y0 = _seeds(QUINTIC, p.start)
    A, B = pf_coefficients(QUINTIC, 0.1)
    Y1, _ = fn(A, B, p.waypoints, Y0, tol=1e-12)
    Y2, _ = fn(A, B, tuple(reversed(p.waypoints)), Y1, tol=1e-12)
    for a, b in zip(Y0, Y2):
        scale = max(abs(x) for x in a)
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-8 * scale


def test_transport_matches_series_inside_disc():
    # both endpoints inside |v| < v_c: transport must agree with direct summation
    c = cmath.log(1 / 3125).real
    s0, s1 = complex(c - 4, 0), complex(c - 1.5, 0.7)
    Y0 = _seeds(QUINTIC, s0)
    Y, _ = ode_transport(QUINTIC, 0.1, PathSpec((s0, s1)), Y0)
    ref = _seeds(QUINTIC, s1)
    for a, b in zip(Y, ref):
        scale = max(abs(x) for x in b)
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-9 * scale


def test_kernel_parity():
    if kernels.c_integrate_path is None:
        pytest.skip("compiled kernel not built")
    from lgcy.continuation import pf_coefficients

    p = window_path(W11112, 1)
    Y0 = _seeds(W11112, p.start)
    A, B = pf_coefficients(W11112, 0.1)
    Yp, sp_ = kernels.py_integrate_path(A, B, p.waypoints, Y0)
    Yc, sc = kernels.c_integrate_path(A, B, p.waypoints, Y0)
    assert sp_ == sc
    for a, b in zip(Yp, Yc):
        scale = max(abs(x) for x in a)
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-10 * scale


def test_step_underflow():
    from lgcy.continuation import pf_coefficients

    p = window_path(QUINTIC, 0)
    A, B = pf_coefficients(QUINTIC, 0.1)
    with pytest.raises(kernels.StepUnderflow):
        kernels.integrate_path(A, B, p.waypoints, _seeds(QUINTIC, p.start), tol=1e-30, hmin=1e-3)


@pytest.mark.parametrize("l", [0, 1])
def test_mellin_barnes_quintic(l):
    r = verify_mb(QUINTIC, l)
    assert r["pass"] and r["max_rel_err"] < 1e-8
    assert not verify_mb(QUINTIC, l, compare_l=l + 1)["pass"]


def test_mellin_barnes_other_z():
    r = verify_mb(W11112, 0, z=Fraction(3, 2), lam=Fraction(1, 7))
    assert r["pass"]


@given(st.sampled_from(CATALOG), st.integers(-3, 3), st.integers(0, 20))
def test_u_maps_line_bundle_characters(ws, l, q):
    # U_l inv* ch of a Koszul MF lands on an integral K-class character
    from lgcy.branes import inv_ch_koszul, orlov_kclass

    assert apply_u(ws, l, inv_ch_koszul(ws, q)) == inv_ch_kclass(ws, orlov_kclass(ws, q, l))
