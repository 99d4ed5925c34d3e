"""Acceptance criteria at their stated tolerances.

Each test records one PASS/FAIL line, printed in the terminal summary.  Run
this file directly to print the lines without pytest.
"""

from fractions import Fraction

import pytest

from lgcy import criteria

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # standalone run
    ACCEPTANCE_LINES = []


def _record(result: dict, detail: str = "") -> None:
    status = "PASS" if result["pass"] else "FAIL"
    line = f"criterion {result['criterion']}: {status}  {result['name']}"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_orlov_identity():
    r = criteria.orlov_identity()
    n = sum(c["checked"] for c in r["cases"].values())
    _record(r, f"{n} exact cases, q in [0, 2d), l in [-2, 2]")
    assert r["pass"]


def test_criterion_2_euler_coherence():
    r = criteria.euler_coherence()
    _record(r, f"quintic chi(0,0)={r['worked_values']['chi(0,0)']}, chi(0,1)={r['worked_values']['chi(0,1)']}")
    assert r["pass"]


def test_criterion_3_gamma_pairing():
    r = criteria.gamma_pairing(zs=(1, 2, 1j), prec=256, tol=1e-30)
    worst = max(max(c[s]["max_error_derived"], c[s]["z_spread"]) for c in r["cases"].values() for s in ("GW", "FJRW"))
    _record(r, f"max error {worst:.1e} <= 1e-30 at 256 bits; FJRW compared with -chi")
    assert r["pass"]


def test_criterion_4_picard_fuchs():
    r = criteria.picard_fuchs(order=30)
    _record(r, "residual zero through order 30 on both sides; operators coincide")
    assert r["pass"]


def test_criterion_5_mellin_barnes():
    r = criteria.mellin_barnes(("1,1,1,1,1", "1,1,1,1,2"), windows=(0, 1), z=1, lam=Fraction(1, 10),
                               tol=1e-12, rel_tol=1e-8)
    worst = max(c["max_rel_err"] for c in r["cases"].values())
    control = min(c["wrong_window_err"] for c in r["cases"].values())
    _record(r, f"max rel err {worst:.1e} <= 1e-8; wrong-window control err >= {control:.1e}")
    assert r["pass"]


def test_criterion_6_noneq_limit():
    r = criteria.noneq_limit()
    _record(r, "no negative xi powers; constant term equals the limit; descends to U_l")
    assert r["pass"]


def test_criterion_7_monodromy():
    r = criteria.monodromy()
    _record(r, "conifold cycle, Phi_0 Phi_1^-1 = T_O, U_0 U_1^-1 = T_O, exact")
    assert r["pass"]


def test_criterion_8_givental():
    r = criteria.givental()
    _record(r, f"through u^3d; quintic F_u^6 = {r['cases']['1,1,1,1,1']['F_u^(d+1)']}")
    assert r["pass"]


def test_criterion_9_state_spaces():
    r = criteria.state_space_sanity()
    tops = {k: v["int_p_top"] for k, v in r["cases"].items()}
    _record(r, f"top intersections {tops}")
    assert r["pass"]


# literal forms that disagree with the derived ones -----------------------------


@pytest.mark.xfail(strict=True, reason="(-1)^(N-1) chi holds only for even hc; the pairing equals -chi")
def test_criterion_3_literal_fjrw_sign():
    r = criteria.gamma_pairing(zs=(1,), prec=256, tol=1e-30)
    assert r["fjrw_stated_sign_holds"]


@pytest.mark.xfail(strict=True, reason="zeta^(kl) on broad columns breaks the limit off the trivial sector")
def test_criterion_6_literal_broad_factor():
    r = criteria.noneq_limit()
    assert not r["literal_broad_factor_differs"]


@pytest.mark.xfail(strict=True, reason="(-z)^(1-m) in the line I^s does not specialize to the closed-form I^tw")
def test_criterion_8_literal_minus_z():
    from lgcy.geometry import parse_weights
    from lgcy.givental import LineTerm, i_s_line, i_tw_general, specialize_eT

    ws = parse_weights("quintic")
    K = 3 * ws.d
    line = i_s_line(ws, K - 1)
    for m, t in list(line.terms.items()):
        line.terms[m] = LineTerm(t.label, t.scalar * (-1) ** (1 - m), t.zpow, t.atoms)
    specialized, direct = specialize_eT(line), i_tw_general(ws, K)
    assert all(specialized[k - 1] == direct[k] for k in range(1, K + 1))


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_") and "literal" not in name:
            try:
                fn()
            except AssertionError:
                pass
