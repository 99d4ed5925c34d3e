"""Genus-zero d-spin data on the phi_1-line and the Birkhoff factorization.

The s-variables s_l^{(j)} carry valuation l + 1; every expansion in them is
truncated at a global valuation V.  The modification factor is stored as a
product of atoms exp(-s^{(j)}(-b z)) so that the equivariant Euler
specialization exp(-s^{(j)}(x)) = x + lambda_j can be applied without ever
expanding s_0 = -log lambda_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .arith import ZLaurent, bernoulli_poly, frac_part
from .geometry import WeightSystem
from .hypergeom import FJRW, build_series, mirror_map

# ---------------------------------------------------------------------------
# untwisted theory
# ---------------------------------------------------------------------------


def untwisted_correlator(ws: WeightSystem, b: list[int], k: list[int]) -> Fraction:
    """<tau_{b_1}(phi_{k_1}), ..., tau_{b_n}(phi_{k_n})>^un_{0,n}."""
    n = len(b)
    if n != len(k):
        raise ValueError("b and k must have equal length")
    if n < 3:
        raise ValueError("need at least three insertions")
    if any(x < 0 for x in b):
        return Fraction(0)
    if n - 3 != sum(b) or (2 + sum(k)) % ws.d:
        return Fraction(0)
    den = 1
    for x in b:
        den *= factorial(x)
    return Fraction(factorial(sum(b)), ws.d * den)


def untwisted_pairing(ws: WeightSystem, h: int, k: int) -> Fraction:
    return Fraction(1, ws.d) if (h + k - (ws.d - 2)) % ws.d == 0 else Fraction(0)


def j_un_line_from_correlators(ws: WeightSystem, m: int) -> tuple[int, Fraction, int]:
    """Coefficient of (t^1)^m in J^un(t^1 phi_1, -z), read off from correlators.

    Returns (h, c, e) meaning c (-z)^e phi_h.  Valid for m >= 2.
    """
    d = ws.d
    out_h, out_c, out_e = None, Fraction(0), None
    for b in range(0, m + 1):
        for k in range(d):
            corr = untwisted_correlator(ws, [0] * m + [b], [1] * m + [k])
            if not corr:
                continue
            for h in range(d):
                g = untwisted_pairing(ws, k, h)
                if not g:
                    continue
                c = corr * Fraction(1, factorial(m)) / g  # g^{kh} = 1/g on this 1x1 block
                if out_h is not None and (out_h, out_e) != (h, -(b + 1)):
                    raise AssertionError("several classes on one monomial")
                out_h, out_e = h, -(b + 1)
                out_c += c
    return out_h, out_c, out_e


def j_un_line(ws: WeightSystem, m: int) -> tuple[int, Fraction, int]:
    """Closed form: (t^1)^m / m! (-z)^{1-m} phi_{m mod d}, as (h, c, e) in powers of -z."""
    return m % ws.d, Fraction(1, factorial(m)), 1 - m


# ---------------------------------------------------------------------------
# polynomials in z and lambda_1..lambda_N
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MPoly:
    """Laurent in z, polynomial in lambda_1..lambda_N: {(z_exp, l_1, ..., l_N): c}."""

    nvars: int
    terms: tuple = ()

    @classmethod
    def from_dict(cls, nvars: int, data: dict) -> MPoly:
        return cls(nvars, tuple(sorted((k, v) for k, v in data.items() if v)))

    @classmethod
    def const(cls, nvars: int, c) -> MPoly:
        return cls.from_dict(nvars, {(0,) * (nvars + 1): Fraction(c)})

    @classmethod
    def linear(cls, nvars: int, zc, j: int | None = None) -> MPoly:
        """lambda_j + zc z (j None: just zc z)."""
        data = {(1,) + (0,) * nvars: Fraction(zc)}
        if j is not None:
            key = [0] * (nvars + 1)
            key[j + 1] = 1
            data[tuple(key)] = Fraction(1)
        return cls.from_dict(nvars, data)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: MPoly) -> MPoly:
        out = self.as_dict()
        for k, v in other.terms:
            out[k] = out.get(k, 0) + v
        return MPoly.from_dict(self.nvars, out)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly.from_dict(self.nvars, {k: v * other for k, v in self.terms})
        out: dict = {}
        for ka, va in self.terms:
            for kb, vb in other.terms:
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = out.get(key, 0) + va * vb
        return MPoly.from_dict(self.nvars, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def to_zlaurent(self, ws: WeightSystem) -> ZLaurent:
        """Specialize lambda_j = -q_j lambda."""
        out: dict = {}
        for key, v in self.terms:
            c = v
            for j, e in enumerate(key[1:]):
                c *= (-ws.q[j]) ** e
            lk = (key[0], sum(key[1:]))
            out[lk] = out.get(lk, 0) + c
        return ZLaurent({k: v for k, v in out.items() if v})


# ---------------------------------------------------------------------------
# s-variable polynomials (valuation-truncated)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SPoly:
    """{(s-monomial, z_exp): c}; an s-monomial is a sorted tuple of ((j, l), e)."""

    V: int
    terms: tuple = ()

    @staticmethod
    def valuation(mono) -> int:
        return sum((l + 1) * e for (_, l), e in mono)

    @classmethod
    def from_dict(cls, V: int, data: dict) -> SPoly:
        return cls(V, tuple(sorted(((k, v) for k, v in data.items()
                                    if v and cls.valuation(k[0]) <= V), key=repr)))

    @classmethod
    def one(cls, V: int) -> SPoly:
        return cls.from_dict(V, {((), 0): Fraction(1)})

    @classmethod
    def s(cls, V: int, j: int, l: int, c=1, zexp: int = 0) -> SPoly:
        return cls.from_dict(V, {((((j, l), 1),), zexp): Fraction(c)})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: SPoly) -> SPoly:
        out = self.as_dict()
        for k, v in other.terms:
            out[k] = out.get(k, 0) + v
        return SPoly.from_dict(self.V, out)

    def __neg__(self) -> SPoly:
        return SPoly.from_dict(self.V, {k: -v for k, v in self.terms})

    def __sub__(self, other: SPoly) -> SPoly:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SPoly):
            return SPoly.from_dict(self.V, {k: v * other for k, v in self.terms})
        out: dict = {}
        for (ma, za), va in self.terms:
            for (mb, zb), vb in other.terms:
                if self.valuation(ma) + self.valuation(mb) > self.V:
                    continue
                m = dict(ma)
                for key, e in mb:
                    m[key] = m.get(key, 0) + e
                k = (tuple(sorted(m.items())), za + zb)
                out[k] = out.get(k, 0) + va * vb
        return SPoly.from_dict(self.V, out)

    def exp(self) -> SPoly:
        """exp of an element without constant s^0 part (nilpotent modulo V)."""
        if any(not mono and c for (mono, _), c in self.terms):
            raise ValueError("exp needs a vanishing s-constant part")
        out = SPoly.one(self.V)
        term = SPoly.one(self.V)
        for n in range(1, self.V + 1):
            term = term * self * Fraction(1, n)
            out = out + term
        return out

    def at_zero(self) -> dict[int, Fraction]:
        """Set every s to 0: {z_exp: c}."""
        return {z: c for (mono, z), c in self.terms if not mono}

    def is_zero(self) -> bool:
        return not self.terms


def s_series(ws: WeightSystem, j: int, x_zcoef: Fraction, V: int) -> SPoly:
    """s^{(j)}(x) = sum_n s_n x^n / n! at x = x_zcoef * z, truncated at valuation V."""
    out = SPoly(V)
    for n in range(V):
        c = Fraction(x_zcoef) ** n / factorial(n)
        if c:
            out = out + SPoly.s(V, j, n, c, n)
    return out


def g_function(ws: WeightSystem, j: int, y: Fraction, x_zcoef: Fraction, V: int) -> SPoly:
    """G^{(j)}_y(x, z) at x = x_zcoef * z."""
    out = SPoly(V)
    for l in range(V + 1):
        for m in range(V + 1):
            idx = l + m - 1
            if idx < 0 or idx + 1 > V:
                continue
            c = bernoulli_poly(m, y) / factorial(m) * Fraction(x_zcoef) ** l / factorial(l)
            if c:
                out = out + SPoly.s(V, j, idx, c, l + m - 1)
    return out


def delta_operator(ws: WeightSystem, V: int) -> list[SPoly]:
    """Diagonal entries Delta_i, i = 0..d-1, truncated at valuation V."""
    out = []
    for i in range(ws.d):
        expo = SPoly(V)
        for j, qj in enumerate(ws.q):
            y = frac_part(i * qj) + qj
            for l in range(V):
                c = bernoulli_poly(l + 1, y) / factorial(l + 1)
                if c:
                    expo = expo + SPoly.s(V, j, l, c, l)
        out.append(expo.exp())
    return out


def delta_exponent(ws: WeightSystem, i: int, V: int) -> SPoly:
    expo = SPoly(V)
    for j, qj in enumerate(ws.q):
        y = frac_part(i * qj) + qj
        for l in range(V):
            c = bernoulli_poly(l + 1, y) / factorial(l + 1)
            if c:
                expo = expo + SPoly.s(V, j, l, c, l)
    return expo


def delta_inverse_check(ws: WeightSystem, V: int) -> bool:
    """Delta_i exp(-exponent_i) == 1 at every truncation."""
    for i, D in enumerate(delta_operator(ws, V)):
        inv = (-delta_exponent(ws, i, V)).exp()
        if D * inv != SPoly.one(V):
            return False
    return True


def delta_grading_ok(ws: WeightSystem, V: int) -> bool:
    """Every monomial of Delta has z-exponent sum l e_l (z^l travels with s_l)."""
    for D in delta_operator(ws, V):
        for (mono, zexp), _ in D.terms:
            if zexp != sum(l * e for (_, l), e in mono):
                return False
    return True


# ---------------------------------------------------------------------------
# I^s on the phi_1-line
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    """exp(-s^{(j)}(-b z))."""

    j: int
    b: Fraction


@dataclass(frozen=True)
class LineTerm:
    """scalar * z^zpow * prod(atoms) * phi_label (label 0..d-1)."""

    label: int
    scalar: Fraction
    zpow: int
    atoms: tuple[Atom, ...]


@dataclass
class LineSeries:
    """Coefficients of u^m in I^s(-u phi_1, z)."""

    ws: WeightSystem
    K: int
    V: int | None
    terms: dict[int, LineTerm] = field(default_factory=dict)


def modification_atoms(ws: WeightSystem, h: int) -> tuple[Atom, ...]:
    """Atoms of M_k(z) for h(k) = h."""
    atoms = []
    for j, qj in enumerate(ws.q):
        base = qj + frac_part(qj * h)
        for m in range(int(qj * h // 1)):
            atoms.append(Atom(j, base + m))
    return tuple(atoms)


def i_s_line(ws: WeightSystem, K: int, V: int | None = None) -> LineSeries:
    """I^s(-u phi_1, z) = sum_m M (-u)^m z^{1-m} / m! phi_{m mod d}, m = 0..K."""
    out = LineSeries(ws, K, V)
    for m in range(K + 1):
        out.terms[m] = LineTerm(m % ws.d, Fraction((-1) ** m, factorial(m)), 1 - m, modification_atoms(ws, m))
    return out


def expand_atoms(ws: WeightSystem, term: LineTerm, V: int) -> SPoly:
    """The s-expansion of scalar z^zpow prod(atoms), truncated at valuation V."""
    acc = SPoly(V)
    for a in term.atoms:
        acc = acc - s_series(ws, a.j, -a.b, V)
    return acc.exp() * SPoly.from_dict(V, {((), term.zpow): term.scalar})


def specialize_eT(series: LineSeries) -> dict[int, tuple[int, MPoly]]:
    """exp(-s^{(j)}(x)) -> x + lambda_j on every atom; {m: (label, MPoly)}."""
    n = series.ws.N
    out = {}
    for m, t in series.terms.items():
        poly = MPoly.from_dict(n, {(t.zpow,) + (0,) * n: t.scalar})
        for a in t.atoms:
            poly = poly * MPoly.linear(n, -a.b, a.j)
        out[m] = (t.label, poly)
    return out


def i_tw_general(ws: WeightSystem, K: int) -> dict[int, tuple[int, MPoly]]:
    """z sum_k u^k prod_j prod_{0<b<q_j k, <b>=<q_j k>} (lambda_j - b z) / prod_{0<b<k} (-b z) phi_{k-1}."""
    n = ws.N
    out = {}
    for k in range(1, K + 1):
        den = Fraction(1)
        for b in range(1, k):
            den *= -b
        poly = MPoly.from_dict(n, {(2 - k,) + (0,) * n: 1 / den})
        for j, qj in enumerate(ws.q):
            b = frac_part(qj * k)
            if b == 0:
                b = Fraction(1)
            while b < qj * k:
                poly = poly * MPoly.linear(n, -b, j)
                b += 1
        out[k] = ((k - 1) % ws.d, poly)
    return out


def specialization_identity(ws: WeightSystem, K: int | None = None) -> dict:
    """u * specialize_eT(I^s line) against I^tw through u^K, and against hypergeom after lambda_j = -q_j lambda."""
    K = 3 * ws.d if K is None else K
    specialized = specialize_eT(i_s_line(ws, K - 1))
    direct = i_tw_general(ws, K)
    hyper = build_series(ws, FJRW, None, K)
    bad_general, bad_hyper = [], []
    for k in range(1, K + 1):
        lab_a, pa = specialized[k - 1]
        lab_b, pb = direct[k]
        if lab_a != lab_b or pa != pb:
            bad_general.append(k)
        lab_h, ph = hyper.terms[k]
        if lab_h - 1 != lab_a or ph != pa.to_zlaurent(ws):
            bad_hyper.append(k)
    return {"order": K, "general_lambda": not bad_general, "hypergeom": not bad_hyper,
            "mismatch_general": bad_general, "mismatch_hypergeom": bad_hyper,
            "pass": not bad_general and not bad_hyper}


# ---------------------------------------------------------------------------
# Birkhoff factorization
# ---------------------------------------------------------------------------


def nu_of(ws: WeightSystem, l: int) -> tuple[int, ...]:
    return (l,) + tuple(-int(q * l // 1) for q in ws.q)


@dataclass
class BirkhoffResult:
    """gamma = Lminus * Upsilon, with per-order matrices over ZLaurent."""

    gamma: list
    Lminus: list
    Upsilon: list
    K_u: int
    K_z: int

    def column_series(self, which: str, col: int) -> list[list[ZLaurent]]:
        mats = self.Upsilon if which == "Upsilon" else self.Lminus
        return [[row[col] for row in M] for M in mats]


def _zsplit(c: ZLaurent) -> tuple[ZLaurent, ZLaurent]:
    neg = {k: v for k, v in c.terms.items() if k[0] < 0}
    pos = {k: v for k, v in c.terms.items() if k[0] >= 0}
    return ZLaurent(neg), ZLaurent(pos)


def _lam_value(c: ZLaurent, lam) -> ZLaurent:
    if lam is None:
        return c
    out: dict = {}
    for (a, b), v in c.terms.items():
        out[(a, 0)] = out.get((a, 0), 0) + v * Fraction(lam) ** b
    return ZLaurent({k: v for k, v in out.items() if v})


def _matmul(A, B, d):
    out = [[ZLaurent() for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for k in range(d):
            a = A[i][k]
            if a.is_zero():
                continue
            for j in range(d):
                b = B[k][j]
                if not b.is_zero():
                    out[i][j] = out[i][j] + a * b
    return out


def birkhoff_factorize(ws: WeightSystem, K_u: int | None = None, lam=None) -> BirkhoffResult:
    """Split z^{-1}[u^{-l-1} I^{tw,nu(l)}]_l order by order in u.

    ``lam`` None keeps lambda symbolic; otherwise it is substituted.
    """
    d = ws.d
    K_u = d + 2 if K_u is None else K_u
    gamma = [[[ZLaurent() for _ in range(d)] for _ in range(d)] for _ in range(K_u + 1)]
    for l in range(d):
        s = build_series(ws, FJRW, nu_of(ws, l), l + 1 + K_u)
        for k, (label, c) in s.terms.items():
            n = k - (l + 1)
            if 0 <= n <= K_u:
                gamma[n][label - 1][l] = _lam_value(c * ZLaurent.monomial(1, -1, 0), lam)
    # u^0 block: diagonal constant (the leading behaviour u^{l+1} phi_l)
    C = gamma[0]
    for i in range(d):
        for j in range(d):
            c = C[i][j]
            if i != j and not c.is_zero():
                raise AssertionError("u^0 block is not diagonal")
            if i == j and (set(c.terms) != {(0, 0)}):
                raise AssertionError("u^0 block is not a nonzero constant")
    Cinv = [[ZLaurent.const(1 / C[i][i].terms[(0, 0)]) if i == j else ZLaurent() for j in range(d)] for i in range(d)]
    ident = [[ZLaurent.const(1) if i == j else ZLaurent() for j in range(d)] for i in range(d)]
    Lm = [ident]
    Up = [C]
    kz = 0
    for n in range(1, K_u + 1):
        R = [row[:] for row in gamma[n]]
        for a in range(1, n):
            P = _matmul(Lm[a], Up[n - a], d)
            R = [[R[i][j] - P[i][j] for j in range(d)] for i in range(d)]
        neg = [[ZLaurent() for _ in range(d)] for _ in range(d)]
        pos = [[ZLaurent() for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(d):
                neg[i][j], pos[i][j] = _zsplit(R[i][j])
                for (a, _b) in pos[i][j].terms:
                    kz = max(kz, a)
        Lm.append(_matmul(neg, Cinv, d))
        Up.append(pos)
    return BirkhoffResult(gamma, Lm, Up, K_u, kz)


def birkhoff_residual_ok(res: BirkhoffResult) -> bool:
    d = len(res.gamma[0])
    for n in range(res.K_u + 1):
        acc = [[ZLaurent() for _ in range(d)] for _ in range(d)]
        for a in range(n + 1):
            P = _matmul(res.Lminus[a], res.Upsilon[n - a], d)
            acc = [[acc[i][j] + P[i][j] for j in range(d)] for i in range(d)]
        for i in range(d):
            for j in range(d):
                if not (acc[i][j] - res.gamma[n][i][j]).is_zero():
                    return False
    return True


def upsilon0_is_F_phi0(ws: WeightSystem, res: BirkhoffResult) -> dict:
    """Column 0 of Upsilon equals u^{-1} F(u) phi_0 through order K_u."""
    F = mirror_map(ws, res.K_u + 1).F
    bad = []
    for n, U in enumerate(res.Upsilon):
        for i in range(ws.d):
            target = F.get(n + 1, ZLaurent()) if i == 0 else ZLaurent()
            if not (U[i][0] - target).is_zero():
                bad.append((n, i))
    lam_poly = all(b >= 0 for U in res.Upsilon for row in U for c in row for (_, b) in c.terms)
    lminus_ok = all(a < 0 for M in res.Lminus[1:] for row in M for c in row for (a, _) in c.terms)
    f_d1 = F.get(ws.d + 1, ZLaurent()).terms.get((0, 0), Fraction(0))
    return {"order": res.K_u, "pass": not bad and lam_poly and lminus_ok, "mismatch": bad,
            "upsilon_polynomial_in_lambda": lam_poly, "lminus_negative_z": lminus_ok,
            "F_u^{d+1}": str(f_d1)}
