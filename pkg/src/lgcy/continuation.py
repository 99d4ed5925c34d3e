"""Mellin-Barnes transformations between the LG and CY limit points.

Exact part: the window matrices U_l (narrow -> ambient), the twisted
matrices U_l^tw expanded in the equivariant parameter xi, and their
non-equivariant limit.  Numeric part: transport of Picard-Fuchs solutions
along window paths and comparison with the closed forms.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath

from . import linalg
from .arith import Cyclotomic, GradedScalar, NilpotentPoly, exp_series
from .branes import (
    ch_kclass,
    ch_koszul,
    inv_ch_kclass,
    inv_ch_koszul,
    orlov_kclass,
    spherical_matrix,
)
from .geometry import WeightSystem
from .state_spaces import SectorClass, inv_map, space

# ---------------------------------------------------------------------------
# exact matrices
# ---------------------------------------------------------------------------


def _window_series(y0: Cyclotomic, l: int, T: int) -> NilpotentPoly:
    """Taylor coefficients of y0^l e^{l x} / (y0 e^x - 1) in x, for y0 != 1."""
    d = y0.order
    ex = NilpotentPoly([Cyclotomic.from_rational(d, c) for c in exp_series(T)], T)
    exl = NilpotentPoly([Cyclotomic.from_rational(d, c) for c in exp_series(T, l)], T)
    den = ex * y0 - Cyclotomic.one(d)
    return (exl * (y0**l)) * den.inverse()


def _y0(ws: WeightSystem, k: int, f: Fraction) -> Cyclotomic:
    """zeta^k e^{2 pi i fbar}."""
    d = ws.d
    return Cyclotomic.zeta(d, k + int(ws.bar(f) * d))


def u_matrix_column(ws: WeightSystem, l: int, k: int) -> SectorClass:
    sp = space(ws, "ambient")
    data = {}
    for f in ws.frF:
        T = sp.truncation(f)
        if T < 0:
            continue
        y0 = _y0(ws, k, f)
        if y0 == 1:
            raise ValueError(f"k={k} is not narrow")
        ser = _window_series(y0, l, T)
        for i in range(T + 1):
            data[(f, i)] = ser.coeffs[i] / ws.d
    return sp.from_dict(data)


@lru_cache(maxsize=None)
def u_matrix(ws: WeightSystem, l: int) -> tuple[tuple[Cyclotomic, ...], ...]:
    """U_l as a matrix from the narrow basis to the ambient basis."""
    cols = [u_matrix_column(ws, l, k) for k in ws.narrow]
    return tuple(zip(*[c.coeffs for c in cols]))


def apply_u(ws: WeightSystem, l: int, v: SectorClass) -> SectorClass:
    M = [list(r) for r in u_matrix(ws, l)]
    return SectorClass(space(ws, "ambient"), tuple(linalg.matvec(M, list(v.coeffs))))


def verify_orlov(ws: WeightSystem, q: int, l: int) -> dict:
    """U_l(inv* ch {a,b}_q) == inv* ch(Phi_l {a,b}_q), exactly."""
    lhs = apply_u(ws, l, inv_ch_koszul(ws, q))
    rhs = inv_ch_kclass(ws, orlov_kclass(ws, q, l))
    diffs = []
    for label, a, b in zip(lhs.space.basis, lhs.coeffs, rhs.coeffs):
        if not (a - b).is_zero():
            diffs.append({"label": str(label), "lhs": repr(a), "rhs": repr(b)})
    return {"q": q, "l": l, "kclass": str(orlov_kclass(ws, q, l)), "pass": not diffs, "diffs": diffs}


def conifold_consistency(ws: WeightSystem, la: int = 0, lb: int | None = None) -> dict:
    """U_la U_(la+1)^{-1} against the spherical twist T_O(la), in inv* coordinates."""
    lb = la + 1 if lb is None else lb
    if lb != la + 1:
        raise ValueError("adjacent windows only")
    sp = space(ws, "ambient")
    Ua = [list(r) for r in u_matrix(ws, la)]
    Ub = [list(r) for r in u_matrix(ws, lb)]
    lhs = linalg.matmul(Ua, linalg.inverse(Ub))
    T = spherical_matrix(ws, la)
    P = _inv_permutation(sp)
    rhs = linalg.matmul(linalg.matmul(P, T), P)
    return {"la": la, "lb": lb, "pass": linalg.equal(lhs, rhs)}


def _inv_permutation(sp) -> list[list[Cyclotomic]]:
    d = sp.ws.d
    M = linalg.zeros(sp.dim, sp.dim, Cyclotomic.zero(d))
    for b in sp.basis:
        M[sp.index[sp.inv_label(b)]][sp.index[b]] = Cyclotomic.one(d)
    return M


def window_recursion(ws: WeightSystem, l: int) -> bool:
    """U_{l+1} = A U_l S^{-1}: A = inv* (x) O(1) inv*, S = grading shift (1)."""
    from .branes import grading_shift_matrix, tensor_matrix

    sp = space(ws, "ambient")
    nsp = space(ws, "narrow")
    P = _inv_permutation(sp)
    Pn = _inv_permutation(nsp)
    A = linalg.matmul(linalg.matmul(P, tensor_matrix(ws, 1)), P)
    S = linalg.matmul(linalg.matmul(Pn, grading_shift_matrix(ws, 1)), Pn)
    Ul = [list(r) for r in u_matrix(ws, l)]
    Ul1 = [list(r) for r in u_matrix(ws, l + 1)]
    return linalg.equal(Ul1, linalg.matmul(linalg.matmul(A, Ul), linalg.inverse(S)))


# ---------------------------------------------------------------------------
# twisted matrices as xi-series
# ---------------------------------------------------------------------------


@dataclass
class XiSeries:
    """Entry of U^tw: {(p-power, xi-power): GradedScalar}."""

    terms: dict[tuple[int, int], GradedScalar] = field(default_factory=dict)

    def add(self, key: tuple[int, int], val: GradedScalar) -> None:
        if val.is_zero():
            return
        cur = self.terms.get(key)
        self.terms[key] = val if cur is None else cur + val
        if self.terms[key].is_zero():
            del self.terms[key]

    def min_xi(self) -> int | None:
        return min((m for (_, m) in self.terms), default=None)

    def xi_coefficient(self, m: int) -> dict[int, GradedScalar]:
        return {n: v for (n, mm), v in self.terms.items() if mm == m}


def u_tw_xi_series(ws: WeightSystem, l: int, order: int = 2) -> dict[tuple, XiSeries]:
    """Expansion of U^tw_l in xi through xi^order, keyed by (k, f).

    Per column k the (2 pi i) grade of the xi^m coefficient is m - N_k,
    so every entry is an exact GradedScalar.
    """
    d = ws.d
    crp = space(ws, "crp")
    out: dict[tuple, XiSeries] = {}
    for k in range(1, d + 1):
        Nk = ws.fixed_count(k)
        pref = Fraction(1, d)
        for w in ws.weights:
            if (k * w) % d == 0:
                pref *= -Fraction(w, d)
        for f in ws.frF:
            T = crp.truncation(f)
            ser = XiSeries()
            y0 = _y0(ws, k, f)
            # x = p + c xi with c = 2 pi i / d
            if y0 != 1:
                top = T + max(order - Nk, 0)
                g = _window_series(y0, l, top)
                for n in range(T + 1):
                    for m in range(0, order - Nk + 1):
                        a = g.coeffs[n + m]
                        coef = a * Fraction(_binom(n + m, m), d**m) * pref
                        ser.add((n, m + Nk), GradedScalar(coef, m))
            else:
                # e^{l x}/(e^x - 1) = sum_j B_j(l) x^{j-1}/j!
                from .arith import bernoulli_poly

                jmax = T + order + 1
                for j in range(jmax + 1):
                    bj = bernoulli_poly(j, l) / factorial(j)
                    if bj == 0:
                        continue
                    e = j - 1
                    if e >= 0:
                        for n in range(min(e, T) + 1):
                            m = e - n
                            if m + Nk > order:
                                continue
                            coef = bj * _binom(e, n) * Fraction(1, d**m) * pref
                            ser.add((n, m + Nk), GradedScalar(Cyclotomic.from_rational(d, coef), m))
                    else:
                        # 1/(p + c xi) = sum_n (-1)^n p^n (c xi)^{-n-1}
                        for n in range(T + 1):
                            m = -n - 1
                            if m + Nk > order:
                                continue
                            coef = bj * (-1) ** n * Fraction(d ** (n + 1)) * pref
                            ser.add((n, m + Nk), GradedScalar(Cyclotomic.from_rational(d, coef), m))
            out[(k, f)] = ser
    return out


def _binom(a: int, b: int) -> int:
    from math import comb

    return comb(a, b)


def u_tw_limit(ws: WeightSystem, l: int) -> dict[tuple, dict[int, GradedScalar]]:
    """Non-equivariant limit of U^tw_l, keyed by (k, f) -> {p-power: value}.

    Narrow columns are the window formula on the full sector.  A broad
    column k receives -(1/d) prod_{j: k q_j in Z} (w_j / 2 pi i) p^{N_k - 1}
    on the sector <k/d> only.
    """
    d = ws.d
    crp = space(ws, "crp")
    out: dict[tuple, dict[int, GradedScalar]] = {}
    for k in range(1, d + 1):
        Nk = ws.fixed_count(k)
        for f in ws.frF:
            T = crp.truncation(f)
            entry: dict[int, GradedScalar] = {}
            if Nk == 0:
                ser = _window_series(_y0(ws, k, f), l, T)
                for n in range(T + 1):
                    c = ser.coeffs[n] / d
                    if not c.is_zero():
                        entry[n] = GradedScalar(c, 0)
            elif f == Fraction(k % d, d):
                c = Fraction(-1, d)
                for w in ws.weights:
                    if (k * w) % d == 0:
                        c *= w
                entry[Nk - 1] = GradedScalar(Cyclotomic.from_rational(d, c), -Nk)
            out[(k, f)] = entry
    return out


def u_tw_limit_literal(ws: WeightSystem, l: int) -> dict[tuple, dict[int, GradedScalar]]:
    """Variant of :func:`u_tw_limit` whose broad entries carry an extra zeta^{kl}.

    Kept only to expose the cases where the two disagree.
    """
    out = u_tw_limit(ws, l)
    for (k, f), entry in out.items():
        if ws.fixed_count(k) and entry:
            out[(k, f)] = {n: v * Cyclotomic.zeta(ws.d, k * l) for n, v in entry.items()}
    return out


def verify_noneq_limit(ws: WeightSystem, l: int, order: int = 2) -> dict:
    """No negative xi powers in U^tw_l, and the xi^0 term equals the limit."""
    ser = u_tw_xi_series(ws, l, order)
    lim = u_tw_limit(ws, l)
    negative = []
    mismatch = []
    for key, s in ser.items():
        mn = s.min_xi()
        if mn is not None and mn < 0:
            negative.append(str(key))
        const = s.xi_coefficient(0)
        target = lim[key]
        labels = set(const) | set(target)
        for n in labels:
            a, b = const.get(n), target.get(n)
            if a is None or b is None:
                if (a is not None and not a.is_zero()) or (b is not None and not b.is_zero()):
                    mismatch.append((str(key), n))
            elif not a == b:
                mismatch.append((str(key), n))
    return {"l": l, "no_negative_powers": not negative, "constant_term_matches": not mismatch,
            "negative": negative, "mismatch": mismatch, "pass": not negative and not mismatch}


def descends(ws: WeightSystem, l: int) -> bool:
    """pr o (limit of U^tw_l) == U_l o pr on narrow columns."""
    lim = u_tw_limit(ws, l)
    amb = space(ws, "ambient")
    U = u_matrix(ws, l)
    for j, k in enumerate(ws.narrow):
        for f in ws.frF:
            for n in range(amb.truncation(f) + 1):
                a = lim[(k, f)].get(n)
                b = U[amb.index[(f, n)]][j]
                av = a.value if a is not None else Cyclotomic.zero(ws.d)
                if not (av - b).is_zero():
                    return False
    return True


# ---------------------------------------------------------------------------
# numeric twisted matrices and ODE transport
# ---------------------------------------------------------------------------


class ResonanceError(ValueError):
    pass


RESONANCE_GUARD = 1e-6


def u_tw_matrix(ws: WeightSystem, l: int, xi, prec: int = 128) -> list[list]:
    """U^tw_l at a numeric xi: rows over the crp basis, columns over k = 1..d."""
    d = ws.d
    crp = space(ws, "crp")
    M = [[mpmath.mpc(0)] * d for _ in range(crp.dim)]
    with mpmath.workprec(prec):
        xi = mpmath.mpmathify(xi)
        twopii = 2j * mpmath.pi
        for col, k in enumerate(range(1, d + 1)):
            pref = mpmath.mpc(1) / d
            for w in ws.weights:
                if (k * w) % d == 0:
                    pref *= -mpmath.mpf(w) / d * xi
            for f in ws.frF:
                T = crp.truncation(f)
                fbar = ws.bar(f)
                y0 = mpmath.exp(twopii * (mpmath.mpf(k) / d + mpmath.mpf(fbar.numerator) / fbar.denominator + xi / d))
                if abs(y0 - 1) < RESONANCE_GUARD:
                    raise ResonanceError(f"resonant xi = {xi} at k = {k}, f = {f}")
                ex = NilpotentPoly([mpmath.mpf(1) / factorial(i) for i in range(T + 1)], T)
                exl = NilpotentPoly([mpmath.mpf(l) ** i / factorial(i) for i in range(T + 1)], T)
                g = exl * (y0**l) * (ex * y0 - 1).inverse()
                for i in range(T + 1):
                    M[crp.index[(f, i)]][col] = pref * g.coeffs[i]
    return M


@dataclass(frozen=True)
class PathSpec:
    """Polyline in the log v plane; ``l`` is the window it passes through, if any."""

    waypoints: tuple[complex, ...]
    l: int | None = None

    def reversed(self) -> PathSpec:
        return PathSpec(tuple(reversed(self.waypoints)), self.l)

    def then(self, *points: complex) -> PathSpec:
        return PathSpec(self.waypoints + tuple(complex(p) for p in points), self.l)

    @property
    def start(self) -> complex:
        return self.waypoints[0]

    @property
    def end(self) -> complex:
        return self.waypoints[-1]


def window_path(ws: WeightSystem, l: int, margin: float = 2.0, outer: float = 6.0) -> PathSpec:
    """Rectangle around log v_c crossing Im log v = (2l - 1) pi."""
    c = float(mpmath.log(mpmath.mpf(ws.conifold.numerator) / ws.conifold.denominator))
    y = (2 * l - 1) * cmath.pi
    pts = (complex(c - outer, 0), complex(c - margin, 0), complex(c - margin, y),
           complex(c + margin, y), complex(c + margin, 0), complex(c + outer, 0))
    return PathSpec(pts, l)


def pf_coefficients(ws: WeightSystem, xi) -> tuple[list[complex], list[complex]]:
    """Coefficients in theta of A = prod_j prod_{c<w_j} (w_j theta - c) and B = prod_{c=1}^d (d theta + xi + c)."""
    xi = complex(xi)

    def mul(p, c0, c1):
        out = [0j] * (len(p) + 1)
        for i, x in enumerate(p):
            out[i] += x * c0
            out[i + 1] += x * c1
        return out

    A = [1 + 0j]
    for w in ws.weights:
        for c in range(w):
            A = mul(A, -c, w)
    B = [1 + 0j]
    for c in range(1, ws.d + 1):
        B = mul(B, xi + c, ws.d)
    return A, B


def ode_transport(ws: WeightSystem, xi, path: PathSpec, seeds: list[list[complex]],
                  tol: float = 1e-12, h0: float = 0.01) -> tuple[list[list[complex]], dict]:
    """Transport jets (value, D, ..., D^{d-1}) of PF solutions along ``path``.

    Integrates the companion system of A(theta) - v B(theta) in s = log v.
    """
    from .kernels import integrate_path

    A, B = pf_coefficients(ws, xi)
    return integrate_path(A, B, path.waypoints, seeds, tol=tol, h0=h0)


def gw_jet_seeds(ws: WeightSystem, log_v, z, lam, K: int = 200, prec: int = 128) -> list[list[complex]]:
    """Jets of every crp component of H_GW at log v, one column per component."""
    from .hypergeom import h_gw

    jets = h_gw(ws, log_v, z, lam, K, ws.d - 1, prec)
    crp = space(ws, "crp")
    cols = []
    for f, i in crp.basis:
        cols.append([complex(js.values[f].coeffs[i]) for js in jets])
    return cols


def verify_mb(ws: WeightSystem, l: int, z=1, lam=Fraction(1, 10), samples=(0.02, 0.03, 0.04),
              tol: float = 1e-12, rel_tol: float = 1e-8, compare_l: int | None = None,
              K: int = 200, prec: int = 128) -> dict:
    """u^{-xi} (H_GW continued along the l-th window path) against U^tw_l H_FJRW.

    ``compare_l`` swaps in a different closed-form matrix (negative control).
    """
    from .hypergeom import h_fjrw

    d = ws.d
    with mpmath.workprec(prec):
        zc = mpmath.mpmathify(z)
        xi = mpmath.mpmathify(lam) / zc
    path = window_path(ws, l)
    seeds = gw_jet_seeds(ws, path.start, z, lam, K, prec)
    U = u_tw_matrix(ws, l if compare_l is None else compare_l, xi, prec)
    crp = space(ws, "crp")
    ends = sorted(-d * cmath.log(u).real for u in samples)
    Y = seeds
    cur = path
    records = []
    steps = 0
    for s_end in ends:
        cur = cur.then(complex(s_end, 0))
        Y, st = ode_transport(ws, complex(xi), PathSpec(cur.waypoints[-2:] if records else cur.waypoints, l), Y, tol)
        steps += st["steps"]
        log_u = -complex(s_end, 0) / d
        u = cmath.exp(log_u)
        fac = cmath.exp(-complex(xi) * log_u)
        H = h_fjrw(ws, u, z, lam, K, 0, prec)[0].values
        worst = 0.0
        comps = []
        for r, label in enumerate(crp.basis):
            lhs = fac * Y[r][0]
            rhs = complex(sum(U[r][c] * H[k] for c, k in enumerate(range(1, d + 1))))
            err = abs(lhs - rhs) / max(abs(rhs), 1e-300)
            worst = max(worst, err)
            comps.append({"label": f"p^{label[1]} 1_{label[0]}", "lhs": [lhs.real, lhs.imag],
                          "rhs": [rhs.real, rhs.imag], "rel_err": err})
        records.append({"u": round(u.real, 15), "max_rel_err": worst, "components": comps})
        cur = PathSpec((complex(s_end, 0),), l)
    worst = max(r["max_rel_err"] for r in records)
    return {"weights": list(ws.weights), "l": l, "compare_l": l if compare_l is None else compare_l,
            "z": str(z), "lambda": str(lam), "tol": tol, "steps": steps, "samples": records,
            "max_rel_err": worst, "pass": worst <= rel_tol}
