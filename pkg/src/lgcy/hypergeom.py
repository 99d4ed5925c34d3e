"""Hypergeometric I- and H-functions and their Picard-Fuchs operators.

Symbolic series carry exact coefficients: FJRW terms are :class:`ZLaurent`
polynomials in (z, lambda); GW terms are nilpotent polynomials in the
hyperplane class p with ZLaurent coefficients, multiplied implicitly by
``z exp(p log v / z)``.  Numeric H-functions are evaluated with mpmath in
the true class p (the normalized variable is p / 2 pi i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .arith import (
    DEFAULT_PRECISION_BITS,
    NilpotentPoly,
    ZLaurent,
    frac_part,
    gamma_nilpotent,
    rgamma_nilpotent,
)
from .geometry import WeightSystem
from .state_spaces import space

FJRW = "FJRW"
GW = "GW"


class SeriesDomainError(ValueError):
    pass


def in_B(ws: WeightSystem, nu: Sequence[int]) -> bool:
    """nu_i + q_i nu_0 >= 0 for every i."""
    return all(nu[i + 1] + ws.q[i] * nu[0] >= 0 for i in range(ws.N))


def _nu(ws: WeightSystem, nu) -> tuple[int, ...]:
    if nu is None:
        return (0,) * (ws.N + 1)
    nu = tuple(int(x) for x in nu)
    if len(nu) != ws.N + 1:
        raise ValueError(f"nu must have {ws.N + 1} entries")
    if not in_B(ws, nu):
        raise SeriesDomainError(f"nu={nu} is outside B")
    return nu


def fjrw_label(ws: WeightSystem, k: int) -> int:
    """Extended label of phi_{(k-1) mod d}."""
    return (k - 1) % ws.d + 1


# ---------------------------------------------------------------------------
# symbolic series
# ---------------------------------------------------------------------------


@dataclass
class HyperSeries:
    """Truncated I^{tw,nu} (symbolic) keyed by exponent.

    FJRW: ``terms[k] = (label, ZLaurent)`` for the u^k term.
    GW: ``terms[n] = (sector f, NilpotentPoly over ZLaurent)`` for the v^n
    term, the common factor z e^{p log v / z} being implicit.
    """

    ws: WeightSystem
    side: str
    nu: tuple[int, ...]
    K: int
    terms: dict = field(default_factory=dict)

    def exponents(self) -> list:
        return sorted(self.terms)

    def lowest(self):
        e = min(self.terms)
        return e, self.terms[e]


def _fjrw_coefficient(ws: WeightSystem, nu, k: int) -> ZLaurent:
    """z prod_j prod_{0<b<kq_j+nu_j, <b>=<kq_j>} (-q_j lam - b z) / prod_{0<b<k-nu_0} (-b z)."""
    out = ZLaurent.monomial(Fraction(1), 1, 0)
    for j, qj in enumerate(ws.q):
        top = k * qj + nu[j + 1]
        b = frac_part(k * qj)
        if b == 0:
            b = Fraction(1)
        while b < top:
            out = out * ZLaurent.linear(-b, -qj)
            b += 1
    den = Fraction(1)
    cnt = 0
    for b in range(1, k - nu[0]):
        den *= -b
        cnt += 1
    return out * ZLaurent.monomial(1 / den, -cnt, 0)


def _lin(T: int, pc, zc, lc=0) -> NilpotentPoly:
    """pc*p + zc*z + lc*lambda as a nilpotent polynomial over ZLaurent."""
    return NilpotentPoly([ZLaurent.linear(zc, lc), ZLaurent.const(Fraction(pc))], T)


def _gw_terms(ws: WeightSystem, nu, K: int) -> dict:
    """Coefficients sector by sector; prefix products once every window is positive."""
    d = ws.d
    crp = space(ws, "crp")
    out = {}
    for f in ws.frF:
        T = crp.truncation(f)
        n0 = ws.bar(f)  # exponents n with <-n> = f, i.e. n = fbar mod 1
        while d * (n0 - 1) + nu[0] >= 0:
            n0 -= 1
        while d * n0 + nu[0] < 0:
            n0 += 1
        n = n0
        prev = None
        while n <= K:
            lims = [w * (n - 1) - nu[i + 1] for i, w in enumerate(ws.weights)]
            if prev is None or min(lims) < 0:
                prev = _gw_coefficient(ws, nu, n, T)
            else:
                prev = prev * _gw_step(ws, nu, n, T)
            out[n] = (f, prev)
            n += 1
    return out


def _gw_step(ws: WeightSystem, nu, n: Fraction, T: int) -> NilpotentPoly:
    """Ratio of the v^n and v^(n-1) coefficients when every window is positive."""
    d = ws.d
    num = NilpotentPoly([ZLaurent.const(Fraction(1))], T)
    for b in range(int(d * (n - 1) + nu[0]) + 1, int(d * n + nu[0]) + 1):
        num = num * _lin(T, d, b, 1)
    den = NilpotentPoly([ZLaurent.const(Fraction(1))], T)
    for i, w in enumerate(ws.weights):
        b = w * (n - 1) - nu[i + 1] + 1
        while b <= w * n - nu[i + 1]:
            den = den * _lin(T, w, b)
            b += 1
    return num * den.inverse()


def _gw_coefficient(ws: WeightSystem, nu, n: Fraction, T: int) -> NilpotentPoly:
    d = ws.d
    acc = NilpotentPoly([ZLaurent.const(Fraction(1))], T)
    top = d * n + nu[0]
    assert top.denominator == 1
    for b in range(1, int(top) + 1):
        acc = acc * _lin(T, d, b, 1)
    for i, w in enumerate(ws.weights):
        lim = w * n - nu[i + 1]
        frac = frac_part(w * n)
        if lim >= 0:
            b = frac if frac else Fraction(1)
            while b <= lim:
                acc = acc * _lin(T, w, b).inverse()
                b += 1
        else:
            b = lim + 1
            while b <= 0:
                acc = acc * _lin(T, w, b)
                b += 1
    return acc


def build_series(ws: WeightSystem, side: str, nu=None, K: int | None = None) -> HyperSeries:
    """Symbolic I^{tw,nu} through exponent K (default 6d)."""
    nu = _nu(ws, nu)
    K = 6 * ws.d if K is None else K
    if side == FJRW:
        terms = {}
        for k in range(nu[0] + 1, K + 1):
            terms[k] = (fjrw_label(ws, k), _fjrw_coefficient(ws, nu, k))
        return HyperSeries(ws, FJRW, nu, K, terms)
    if side == GW:
        return HyperSeries(ws, GW, nu, K, _gw_terms(ws, nu, K))
    raise ValueError(f"unknown side {side!r}")


def homogeneity_defects(s: HyperSeries) -> list:
    """Terms whose degree differs from 2(1 + sum nu) (deg z = deg lambda = 2)."""
    ws = s.ws
    target = 2 * (1 + sum(s.nu))
    bad = []
    if s.side == FJRW:
        sp = space(ws, "extended")
        for k, (label, c) in s.terms.items():
            for (a, b) in c.terms:
                if 2 * (a + b) + sp.degree(label) != target:
                    bad.append((k, a, b))
    else:
        for n, (f, poly) in s.terms.items():
            age = 2 * ws.sector_age(f)
            for i, c in enumerate(poly.coeffs):
                for (a, b) in getattr(c, "terms", {}):
                    # the implicit prefactor z contributes degree 2
                    if 2 * (a + b + i + 1) + age != target:
                        bad.append((n, i, a, b))
    return bad


# ---------------------------------------------------------------------------
# operators in x and Theta = z x d/dx
# ---------------------------------------------------------------------------


@dataclass
class PFOperator:
    """sum_a x^a P_a(Theta), Theta = z x d/dx; P_a are coefficient lists over ZLaurent."""

    side: str
    var: str
    parts: dict[int, list[ZLaurent]]

    def order(self) -> int:
        return max(len(c) - 1 for c in self.parts.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PFOperator):
            return NotImplemented
        keys = set(self.parts) | set(other.parts)
        for a in keys:
            p = _trim(self.parts.get(a, []))
            q = _trim(other.parts.get(a, []))
            if p != q:
                return False
        return True

    def __neg__(self) -> PFOperator:
        return PFOperator(self.side, self.var, {a: [-c for c in cs] for a, cs in self.parts.items()})


def _trim(cs: list[ZLaurent]) -> list[ZLaurent]:
    cs = list(cs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _poly_mul(a: list[ZLaurent], b: list[ZLaurent]) -> list[ZLaurent]:
    out = [ZLaurent() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_from_factors(factors: list[tuple]) -> list[ZLaurent]:
    """prod (alpha Theta + zc z + lc lambda)."""
    out = [ZLaurent.const(Fraction(1))]
    for alpha, zc, lc in factors:
        out = _poly_mul(out, [ZLaurent.linear(zc, lc), ZLaurent.const(Fraction(alpha))])
    return out


def _gw_factors(ws: WeightSystem, nu):
    A = [(w, -(nu[i + 1] + c), 0) for i, w in enumerate(ws.weights) for c in range(w)]
    B = [(ws.d, nu[0] + c, 1) for c in range(1, ws.d + 1)]
    return A, B


def _fjrw_factors(ws: WeightSystem, nu):
    A = [(-q, -(nu[i + 1] + c), -q) for i, (q, w) in enumerate(zip(ws.q, ws.weights)) for c in range(w)]
    B = [(-1, nu[0] + c, 0) for c in range(1, ws.d + 1)]
    return A, B


def pf_operator(ws: WeightSystem, side: str, nu=None) -> PFOperator:
    """GKZ operator annihilating I^{tw,nu} on the given side.

    GW:   v prod_{k=1}^d (d Theta + lambda + (nu_0+k) z) - prod_i prod_{k<w_i} (w_i Theta - (nu_i+k) z)
    FJRW: u^d prod_i prod_{k<w_i} (-q_i Theta - q_i lambda - (nu_i+k) z) - prod_{k=1}^d (-Theta + (nu_0+k) z)
    """
    nu = _nu(ws, nu)
    if side == GW:
        A, B = _gw_factors(ws, nu)
        return PFOperator(GW, "v", {1: _poly_from_factors(B), 0: [-c for c in _poly_from_factors(A)]})
    A, B = _fjrw_factors(ws, nu)
    return PFOperator(FJRW, "u", {ws.d: _poly_from_factors(A), 0: [-c for c in _poly_from_factors(B)]})


def _substitute_theta(poly: list[ZLaurent], alpha: Fraction, beta: ZLaurent) -> list[ZLaurent]:
    """P(alpha Theta + beta) as a polynomial in Theta."""
    out = [ZLaurent()]
    lin = [beta, ZLaurent.const(alpha)]
    for c in reversed(poly):
        out = _poly_mul(out, lin)
        out[0] = out[0] + c
    return out


def gw_to_fjrw(op: PFOperator, ws: WeightSystem) -> PFOperator:
    """u^d (op conjugated by u^{lambda/z}) under v = u^{-d}.

    Conjugation turns z D_v into z D_v - lambda/d, and z D_v = -z D_u / d.
    """
    d = ws.d
    beta = ZLaurent.monomial(Fraction(-1, d), 0, 1)
    parts = {}
    for a, poly in op.parts.items():
        parts[d - d * a] = _substitute_theta(poly, Fraction(-1, d), beta)
    return PFOperator(FJRW, "u", parts)


def operators_coincide(ws: WeightSystem, nu=None) -> bool:
    """The transformed GW operator equals minus the FJRW operator, exactly."""
    return gw_to_fjrw(pf_operator(ws, GW, nu), ws) == -pf_operator(ws, FJRW, nu)


def _eval_poly(poly: list, theta):
    acc = None
    for c in reversed(poly):
        acc = c if acc is None else acc * theta + c
    return acc


@dataclass
class ResidualReport:
    checked: int
    nonzero: list

    @property
    def ok(self) -> bool:
        return not self.nonzero


def apply_and_verify_pf(op: PFOperator, s: HyperSeries, upto: int | None = None) -> ResidualReport:
    """Coefficients of op(s) at every exponent whose inputs lie inside the truncation."""
    ws = s.ws
    upto = s.K if upto is None else upto
    nonzero = []
    checked = 0
    if s.side == FJRW:
        zero = ZLaurent()
        shifts = sorted(op.parts)
        for k in range(min(s.terms), upto + 1):
            acc = ZLaurent()
            for a in shifts:
                src = k - a
                if src in s.terms:
                    theta = ZLaurent.monomial(Fraction(src), 1, 0)
                    acc = acc + _eval_poly(op.parts[a], theta) * s.terms[src][1]
            checked += 1
            if not acc.is_zero():
                nonzero.append((k, repr(acc)))
        return ResidualReport(checked, nonzero)
    crp = space(ws, "crp")
    for n in sorted(s.terms):
        if n > upto:
            continue
        f, _ = s.terms[n]
        T = crp.truncation(f)
        acc = None
        for a, poly in op.parts.items():
            src = n - a
            if src in s.terms:
                theta = NilpotentPoly([ZLaurent.monomial(src, 1, 0), ZLaurent.const(Fraction(1))], T)
                term = _eval_poly([NilpotentPoly([c], T) for c in poly], theta) * s.terms[src][1]
                acc = term if acc is None else acc + term
        checked += 1
        if acc is not None and not acc.is_zero():
            nonzero.append((str(n), repr(acc)))
    return ResidualReport(checked, nonzero)


def verify_gkz_ladder(ws: WeightSystem, side: str, nu=None, K: int | None = None) -> dict:
    """Raising relations along e_0, e_i and the lattice shift (-d, w)."""
    nu = _nu(ws, nu)
    K = 4 * ws.d if K is None else K
    base = build_series(ws, side, nu, K + ws.d)
    results = {}
    moves = [("e0", 0)] + [(f"e{i + 1}", i + 1) for i in range(ws.N)]
    for name, idx in moves:
        nu2 = list(nu)
        nu2[idx] += 1
        if not in_B(ws, nu2):
            continue
        target = build_series(ws, side, nu2, K + ws.d)
        results[name] = _compare_ladder(ws, side, base, target, idx, K)
    shift = tuple([nu[0] - ws.d] + [nu[i + 1] + w for i, w in enumerate(ws.weights)])
    target = build_series(ws, side, shift, K + ws.d)
    results["shift"] = _compare_shift(ws, side, base, target, K)
    return {"nu": list(nu), "side": side, "relations": results, "pass": all(results.values())}


def _ladder_factor(ws, side, nu, idx):
    """(alpha, zc, lc) of the raising operator alpha Theta + zc z + lc lambda."""
    if side == GW:
        if idx == 0:
            return (ws.d, nu[0] + 1, 1)
        return (ws.weights[idx - 1], -nu[idx], 0)
    if idx == 0:
        return (-1, nu[0] + 1, 0)
    q = ws.q[idx - 1]
    return (-q, -nu[idx], -q)


def _compare_ladder(ws, side, base, target, idx, K) -> bool:
    alpha, zc, lc = _ladder_factor(ws, side, base.nu, idx)
    crp = space(ws, "crp")
    keys = set(k for k in base.terms if k <= K) | set(k for k in target.terms if k <= K)
    for e in keys:
        if side == FJRW:
            lhs = ZLaurent()
            if e in base.terms:
                lhs = base.terms[e][1] * ZLaurent.linear(alpha * e + zc, lc)
            rhs = target.terms[e][1] if e in target.terms else ZLaurent()
            if not (lhs - rhs).is_zero():
                return False
        else:
            f = (base.terms.get(e) or target.terms.get(e))[0]
            T = crp.truncation(f)
            fac = NilpotentPoly([ZLaurent.linear(alpha * e + zc, lc), ZLaurent.const(Fraction(alpha))], T)
            lhs = base.terms[e][1] * fac if e in base.terms else None
            rhs = target.terms[e][1] if e in target.terms else None
            if lhs is None and rhs is None:
                continue
            if lhs is None or rhs is None:
                remaining = lhs if lhs is not None else rhs
                if not remaining.is_zero():
                    return False
                continue
            if not (lhs - rhs).is_zero():
                return False
    return True


def _compare_shift(ws, side, base, target, K) -> bool:
    """x^{-d} I^nu (FJRW) or v I^nu (GW) equals I^{nu + (-d, w)}."""
    step = -ws.d if side == FJRW else 1
    for e, (lab, c) in base.terms.items():
        if e + step > K:
            continue
        if e + step not in target.terms:
            return False
        lab2, c2 = target.terms[e + step]
        if lab2 != lab or not (c - c2).is_zero():
            return False
    for e in target.terms:
        if e <= K and e - step not in base.terms:
            return False
    return True


# ---------------------------------------------------------------------------
# mirror map
# ---------------------------------------------------------------------------


@dataclass
class MirrorMapData:
    F: dict[int, ZLaurent]
    G: dict[int, dict[int, ZLaurent]]

    def F_rational(self) -> dict[int, Fraction]:
        """lambda^0 part of F."""
        return {k: c.terms.get((0, 0), Fraction(0)) for k, c in self.F.items() if (0, 0) in c.terms}

    def varsigma_leading(self) -> dict:
        """Lowest-order term of G/F as {label: coefficient} at its u-power."""
        k0 = min(self.F)
        f0 = self.F[k0].terms.get((0, 0))
        kg = min(self.G)
        return {"u_power": kg - k0, "coeffs": {lab: c.terms.get((0, 0), Fraction(0)) / f0 for lab, c in self.G[kg].items()}}


def mirror_map(ws: WeightSystem, K: int | None = None) -> MirrorMapData:
    """z^1 and z^0 parts of I^tw_FJRW, as polynomials in lambda."""
    K = 2 * ws.d + 1 if K is None else K
    s = build_series(ws, FJRW, None, K)
    F: dict[int, ZLaurent] = {}
    G: dict[int, dict[int, ZLaurent]] = {}
    for k, (label, c) in s.terms.items():
        zmax = max(a for a, _ in c.terms) if c.terms else None
        if zmax is not None and zmax > 1:
            raise AssertionError("I-function grows faster than z")
        one = ZLaurent({(0, b): v for (a, b), v in c.terms.items() if a == 1})
        zero = ZLaurent({(0, b): v for (a, b), v in c.terms.items() if a == 0})
        if not one.is_zero():
            if label != 1:
                raise AssertionError("z^1 part off the identity class")
            F[k] = one
        if not zero.is_zero():
            G.setdefault(k, {})[label] = zero
    return MirrorMapData(F, G)


# ---------------------------------------------------------------------------
# numeric H-functions
# ---------------------------------------------------------------------------


def _mpc(x):
    return mpmath.mpmathify(x)


def _numeric_lin(T: int, c0, c1) -> NilpotentPoly:
    return NilpotentPoly([c0, c1], T)


@dataclass
class NumericSeries:
    """Numeric H-function: one entry per basis label of the target state space.

    GW values are NilpotentPoly per sector in the true class p; FJRW values
    are complex numbers per extended label.  ``tail`` bounds the omitted terms.
    """

    side: str
    values: dict
    tail: float
    terms_used: int


def _radius_ratio(ws: WeightSystem, side: str, x) -> float:
    if side == GW:
        return float(abs(x) / ws.conifold)
    R = float(ws.conifold) ** (-1.0 / ws.d)
    return float(abs(x) / R) ** ws.d


def h_gw(ws: WeightSystem, log_v, z=1, lam=Fraction(1, 10), K: int = 200, jet: int = 0,
         prec: int = DEFAULT_PRECISION_BITS, tol: float | None = None) -> list[NumericSeries]:
    """H_GW and its log-derivatives D_v^m, m = 0..jet, at v = exp(log_v)."""
    with mpmath.workprec(prec):
        log_v = _mpc(log_v)
        v = mpmath.exp(log_v)
        rho = _radius_ratio(ws, GW, v)
        if rho >= 1:
            raise SeriesDomainError(f"|v| = {float(abs(v))} outside the radius v_c = {float(ws.conifold)}")
        xi = _mpc(lam) / _mpc(z)
        z = _mpc(z)
        twopii = 2j * mpmath.pi
        d = ws.d
        crp = space(ws, "crp")
        outs = [dict() for _ in range(jet + 1)]
        tail = 0.0
        for f in ws.frF:
            T = crp.truncation(f)
            fbar = ws.bar(f)
            n = mpmath.mpf(fbar.numerator) / fbar.denominator
            ptil = NilpotentPoly([mpmath.mpc(0), 1 / twopii], T)
            term = gamma_nilpotent(1 + xi + d * n, d / twopii, T, prec)
            for w in ws.weights:
                term = term * rgamma_nilpotent(1 + w * n, w / twopii, T, prec)
            vp = NilpotentPoly([mpmath.exp(log_v * n)] + [mpmath.mpc(0)] * T, T) * _exp_nil(log_v / twopii, T)
            sums = [NilpotentPoly([mpmath.mpc(0)] * (T + 1), T) for _ in range(jet + 1)]
            vk = vp
            last = None
            for k in range(K):
                nk = n + k
                body = term * vk
                mult = ptil + nk
                cur = body
                for m in range(jet + 1):
                    sums[m] = sums[m] + cur
                    cur = cur * mult
                size = max(abs(c) for c in body.coeffs) if body.coeffs else 0
                scale = max(abs(c) for c in sums[0].coeffs) if sums[0].coeffs else 1
                if tol is not None and k > 2 and size <= tol * scale:
                    last = size
                    break
                last = size
                # advance the Gamma ratio from n_k to n_k + 1
                num = NilpotentPoly([mpmath.mpc(1)] + [mpmath.mpc(0)] * T, T)
                for i in range(d):
                    num = num * (ptil * d + (1 + xi + d * nk + i))
                den = NilpotentPoly([mpmath.mpc(1)] + [mpmath.mpc(0)] * T, T)
                for w in ws.weights:
                    for i in range(w):
                        den = den * (ptil * w + (1 + w * nk + i))
                term = term * num * den.inverse()
                vk = vk * v
            if last is not None and rho < 1:
                tail = max(tail, float(last) * rho / (1 - rho) * (K + 1) ** jet)
            for m in range(jet + 1):
                outs[m][f] = sums[m] * z
        return [NumericSeries(GW, outs[m], tail, K) for m in range(jet + 1)]


def _exp_nil(c, T: int) -> NilpotentPoly:
    coeffs = [mpmath.mpc(1)]
    for i in range(1, T + 1):
        coeffs.append(coeffs[-1] * c / i)
    return NilpotentPoly(coeffs, T)


def h_fjrw(ws: WeightSystem, u, z=1, lam=Fraction(1, 10), K: int = 200, jet: int = 0,
           prec: int = DEFAULT_PRECISION_BITS, tol: float | None = None) -> list[NumericSeries]:
    """H_FJRW and its log-derivatives D_u^m at u (with log u principal)."""
    with mpmath.workprec(prec):
        u = _mpc(u)
        rho = _radius_ratio(ws, FJRW, u)
        if rho >= 1:
            raise SeriesDomainError("u outside the convergence radius")
        z = _mpc(z)
        xi = _mpc(lam) / z
        twopii = 2j * mpmath.pi
        d = ws.d
        outs = [{lab: mpmath.mpc(0) for lab in range(1, d + 1)} for _ in range(jet + 1)]
        last = 0
        for k in range(1, K + 1):
            c = (-1) ** (k - 1) * twopii / mpmath.gamma(k)
            for j, q in enumerate(ws.q):
                qm = mpmath.mpf(q.numerator) / q.denominator
                c *= mpmath.rgamma(1 - qm * (k + xi))
                if (k * q).denominator == 1:
                    c /= -qm * xi
            term = c * u**k * z
            lab = fjrw_label(ws, k)
            for m in range(jet + 1):
                outs[m][lab] += term * k**m
            last = abs(term)
            if tol is not None and k > d and last <= tol * max(abs(x) for x in outs[0].values()):
                break
        tail = float(last) * rho / (1 - rho) if rho < 1 else float("inf")
        return [NumericSeries(FJRW, outs[m], tail, K) for m in range(jet + 1)]


def i_numeric(s: HyperSeries, x, z, lam, prec: int = DEFAULT_PRECISION_BITS):
    """Evaluate a symbolic series at numeric (x, z, lambda).

    FJRW: {label: value}.  GW: {sector: NilpotentPoly}, including the factor
    z e^{p log v / z} with log v principal.
    """
    with mpmath.workprec(prec):
        z = _mpc(z)
        lam = _mpc(lam)
        x = _mpc(x)
        if s.side == FJRW:
            out = {lab: mpmath.mpc(0) for lab in range(1, s.ws.d + 1)}
            for k, (lab, c) in s.terms.items():
                out[lab] += c.substitute(z, lam) * x**k
            return out
        crp = space(s.ws, "crp")
        logv = mpmath.log(x)
        out = {}
        for n, (f, poly) in s.terms.items():
            T = crp.truncation(f)
            val = NilpotentPoly([_subst(c, z, lam) for c in poly.coeffs], T) * mpmath.exp(logv * n)
            out[f] = val if f not in out else out[f] + val
        for f in list(out):
            T = crp.truncation(f)
            out[f] = out[f] * _exp_nil(logv / z, T) * z
        return out


def _subst(c, z, lam):
    return c.substitute(z, lam) if hasattr(c, "substitute") else mpmath.mpc(c)


def eval_series(ws: WeightSystem, side: str, point, z=1, lam=Fraction(1, 10), K: int = 200,
                prec: int = DEFAULT_PRECISION_BITS) -> NumericSeries:
    """Numeric H-function at ``point`` (v for GW, u for FJRW) with a tail bound."""
    if side == GW:
        with mpmath.workprec(prec):
            return h_gw(ws, mpmath.log(_mpc(point)), z, lam, K, 0, prec)[0]
    return h_fjrw(ws, point, z, lam, K, 0, prec)[0]


def jet(ws: WeightSystem, side: str, point, order: int, z=1, lam=Fraction(1, 10), K: int = 200,
        prec: int = DEFAULT_PRECISION_BITS) -> list[NumericSeries]:
    """Values of (D^m H)(point), m = 0..order, D = x d/dx."""
    if side == GW:
        with mpmath.workprec(prec):
            return h_gw(ws, mpmath.log(_mpc(point)), z, lam, K, order, prec)
    return h_fjrw(ws, point, z, lam, K, order, prec)


def gw_components(ws: WeightSystem, values: dict) -> list:
    """Flatten a CRP-valued result into the basis p^i 1_f (order of the crp space)."""
    crp = space(ws, "crp")
    out = []
    for f, i in crp.basis:
        out.append(values[f].coeffs[i])
    return out
