"""K-theoretic brane calculus on both sides of the correspondence.

LG side: graded Koszul matrix factorizations {a, b}_q and their Chern
characters in the narrow state space.  CY side: integer combinations of
line bundles O(m) on the hypersurface, reduced to the window [0, d-1] by
the Koszul relation, with Chern characters in the ambient state space.
Euler pairings are computed by two unrelated routes (a cyclotomic residue
sum and Hilbert-series counting) so they can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from . import linalg
from .arith import Cyclotomic
from .geometry import WeightSystem, weighted_monomial_count
from .state_spaces import SectorClass, StateSpace, inv_map, space


class IdentityFailure(AssertionError):
    """Raised when an identity that should hold exactly does not."""


# ---------------------------------------------------------------------------
# LG side
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KoszulMF:
    q: int


@lru_cache(maxsize=None)
def ch_koszul(ws: WeightSystem, q: int) -> SectorClass:
    """ch({a,b}_q): coefficient zeta^{qk} prod_j (1 - zeta^{-w_j k}) on phi_{k-1}."""
    d = ws.d
    sp = space(ws, "narrow")
    data = {}
    for k in sp.basis:
        c = Cyclotomic.zeta(d, q * k)
        for w in ws.weights:
            c = c * (1 - Cyclotomic.zeta(d, -w * k))
        data[k] = c
    return sp.from_dict(data)


def ch_mf_combination(ws: WeightSystem, combo: dict[int, int]) -> SectorClass:
    """Chern character of sum_q n_q {a,b}_q."""
    out = space(ws, "narrow").zero_class()
    for q, n in sorted(combo.items()):
        if n:
            out = out + ch_koszul(ws, q).scale(n)
    return out


@lru_cache(maxsize=None)
def _hrr_weights(ws: WeightSystem) -> dict[int, Cyclotomic]:
    d = ws.d
    out = {}
    for k in ws.narrow:
        den = Cyclotomic.one(d)
        for w in ws.weights:
            den = den * (1 - Cyclotomic.zeta(d, k * w))
        out[k] = den.inverse() / d
    return out


def euler_pairing_ch(ws: WeightSystem, chE: SectorClass, chF: SectorClass) -> Cyclotomic:
    """Narrow HRR sum (1/d) sum_k prod_j (1 - zeta^{k w_j})^{-1} ch(E)_k ch(F)_{d-k}."""
    acc = Cyclotomic.zero(ws.d)
    for k, wt in _hrr_weights(ws).items():
        acc = acc + wt * chE[k] * chF[ws.d - k]
    return acc


def euler_pairing_mf(ws: WeightSystem, E, F) -> Fraction:
    """Euler pairing of Koszul combinations (dict q -> multiplicity, or an int q)."""
    chE = ch_mf_combination(ws, _as_combo(E))
    chF = ch_mf_combination(ws, _as_combo(F))
    value = euler_pairing_ch(ws, chE, chF)
    if not value.is_rational():
        raise IdentityFailure(f"HRR sum is not rational: {value}")
    return value.rational_value()


def _as_combo(x) -> dict[int, int]:
    if isinstance(x, KoszulMF):
        return {x.q: 1}
    if isinstance(x, int):
        return {x: 1}
    return dict(x)


# ---------------------------------------------------------------------------
# CY side
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KClass:
    """Integer combination of line-bundle classes [O(m)], stored as sorted (m, n) pairs."""

    terms: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def from_dict(cls, data: dict[int, int]) -> KClass:
        return cls(tuple(sorted((m, n) for m, n in data.items() if n)))

    @classmethod
    def line(cls, m: int, n: int = 1) -> KClass:
        return cls.from_dict({m: n})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __add__(self, other: KClass) -> KClass:
        out = self.as_dict()
        for m, n in other.terms:
            out[m] = out.get(m, 0) + n
        return KClass.from_dict(out)

    def __neg__(self) -> KClass:
        return KClass(tuple((m, -n) for m, n in self.terms))

    def __sub__(self, other: KClass) -> KClass:
        return self + (-other)

    def scale(self, c: int) -> KClass:
        return KClass.from_dict({m: n * c for m, n in self.terms})

    def twist(self, j: int) -> KClass:
        """E -> E (x) O(j)."""
        return KClass(tuple((m + j, n) for m, n in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{n}[O({m})]" for m, n in self.terms)


@lru_cache(maxsize=None)
def _subset_sums(weights: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """(|S|, sum_{j in S} w_j) over all subsets S."""
    out = []
    idx = range(len(weights))
    for r in range(len(weights) + 1):
        for S in combinations(idx, r):
            out.append((r, sum(weights[j] for j in S)))
    return tuple(out)


def orlov_kclass(ws: WeightSystem, q: int, l: int) -> KClass:
    """K-class of Phi_l({a,b}_q) before window reduction."""
    t, m = divmod(q - l, ws.d)
    out: dict[int, int] = {}
    for size, wsum in _subset_sums(ws.weights):
        if wsum <= m:
            key = l + m - wsum
            out[key] = out.get(key, 0) + (-1) ** (size + 1)
    return KClass.from_dict(out)


def koszul_relation(ws: WeightSystem, n: int) -> KClass:
    """sum_S (-1)^{|S|} [O(n - sum_S w)], which vanishes in K(X)."""
    out: dict[int, int] = {}
    for size, wsum in _subset_sums(ws.weights):
        out[n - wsum] = out.get(n - wsum, 0) + (-1) ** size
    return KClass.from_dict(out)


def koszul_reduce(ws: WeightSystem, c: KClass) -> KClass:
    """Canonical representative supported on twists 0..d-1."""
    d = ws.d
    cur = c.as_dict()
    while True:
        live = [m for m, n in cur.items() if n]
        high = [m for m in live if m >= d]
        low = [m for m in live if m < 0]
        if not high and not low:
            return KClass.from_dict(cur)
        if high:
            m = max(high)
            rel = koszul_relation(ws, m).as_dict()  # coefficient of O(m) is +1
        else:
            m = min(low)
            rel = koszul_relation(ws, m + d).as_dict()  # coefficient of O(m) is (-1)^N
        lead = rel[m]
        n = cur[m]
        # subtract (n / lead) * relation; lead is +-1
        factor = n * lead
        for key, val in rel.items():
            cur[key] = cur.get(key, 0) - factor * val
        assert cur[m] == 0


@lru_cache(maxsize=None)
def ch_line(ws: WeightSystem, m: int) -> SectorClass:
    """ch(O(m)) = sum_f e^{2 pi i m f} e^{m p} 1_f in the ambient space."""
    d = ws.d
    sp = space(ws, "ambient")
    data = {}
    for f in ws.frF:
        root = Cyclotomic.zeta(d, int(m * f * d))
        for i in range(sp.truncation(f) + 1):
            data[(f, i)] = root * Fraction(m**i, factorial(i))
    return sp.from_dict(data)


def ch_kclass(ws: WeightSystem, c: KClass) -> SectorClass:
    out = space(ws, "ambient").zero_class()
    for m, n in c.terms:
        out = out + ch_line(ws, m).scale(n)
    return out


def euler_cy(ws: WeightSystem, m: int) -> int:
    """chi(X, O(m)) from the restriction sequence and weighted Serre duality."""
    h = lambda k: weighted_monomial_count(ws, k)  # noqa: E731
    sign = (-1) ** (ws.N - 1)
    return h(m) - h(m - ws.d) + sign * (h(-m - ws.d) - h(-m))


def euler_pairing_cy(ws: WeightSystem, E: KClass, F: KClass) -> int:
    """chi(E, F) with chi(O(a), O(b)) = chi(O(b - a))."""
    total = 0
    for a, na in E.terms:
        for b, nb in F.terms:
            total += na * nb * euler_cy(ws, b - a)
    return total


def spherical_twist(ws: WeightSystem, E: KClass, l: int = 0) -> KClass:
    """[T_{O(l)} E] = [E] - chi(O(l), E) [O(l)]."""
    return E - KClass.line(l, euler_pairing_cy(ws, KClass.line(l), E))


# ---------------------------------------------------------------------------
# ch-level matrices of autoequivalences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AutoeqMatrix:
    label: str
    source: str
    target: str
    matrix: tuple[tuple[Cyclotomic, ...], ...]

    def rows(self) -> list[list[Cyclotomic]]:
        return [list(r) for r in self.matrix]


def _freeze(m) -> tuple[tuple, ...]:
    return tuple(tuple(r) for r in m)


def _columns_matrix(cols: list[SectorClass]) -> list[list[Cyclotomic]]:
    return linalg.transpose([list(c.coeffs) for c in cols])


@lru_cache(maxsize=None)
def line_bundle_basis(ws: WeightSystem) -> tuple[int, ...]:
    """Lowest twists in [0, d-1] whose Chern characters span H_amb."""
    sp = space(ws, "ambient")
    cols = [list(ch_line(ws, m).coeffs) for m in range(ws.d)]
    chosen = linalg.independent_columns(cols, sp.dim)
    if len(chosen) != sp.dim:
        raise IdentityFailure("window line bundles do not span the ambient space")
    return tuple(chosen)


@lru_cache(maxsize=None)
def koszul_basis(ws: WeightSystem) -> tuple[int, ...]:
    """Lowest q in [0, d-1] whose Koszul Chern characters span H_nar."""
    sp = space(ws, "narrow")
    cols = [list(ch_koszul(ws, q).coeffs) for q in range(ws.d)]
    chosen = linalg.independent_columns(cols, sp.dim)
    if len(chosen) != sp.dim:
        raise IdentityFailure("Koszul Chern characters do not span the narrow space")
    return tuple(chosen)


def _kclass_map_matrix(ws: WeightSystem, fn) -> list[list[Cyclotomic]]:
    """Matrix on H_amb of a map given on K-classes, via the line-bundle basis."""
    basis = line_bundle_basis(ws)
    src = _columns_matrix([ch_line(ws, m) for m in basis])
    img = _columns_matrix([ch_kclass(ws, fn(KClass.line(m))) for m in basis])
    M = linalg.matmul(img, linalg.inverse(src))
    # the map must be well defined on numerical K-theory: check on the whole window
    for m in range(-ws.d, 2 * ws.d):
        lhs = linalg.matvec(M, list(ch_line(ws, m).coeffs))
        rhs = list(ch_kclass(ws, fn(KClass.line(m))).coeffs)
        if not all((a - b).is_zero() for a, b in zip(lhs, rhs)):
            raise IdentityFailure(f"map does not descend to Chern characters (twist {m})")
    return M


def tensor_matrix(ws: WeightSystem, j: int) -> list[list[Cyclotomic]]:
    """Multiplication by ch(O(j)) on H_amb."""
    sp = space(ws, "ambient")
    d = ws.d
    M = linalg.zeros(sp.dim, sp.dim, Cyclotomic.zero(d))
    for f in ws.frF:
        T = sp.truncation(f)
        root = Cyclotomic.zeta(d, int(j * f * d))
        for i in range(T + 1):
            for n in range(T + 1 - i):
                M[sp.index[(f, i + n)]][sp.index[(f, i)]] = root * Fraction(j**n, factorial(n))
    return M


def grading_shift_matrix(ws: WeightSystem, n: int = 1) -> list[list[Cyclotomic]]:
    """ch({a,b}_q) -> ch({a,b}_{q+n}) on H_nar: sector k scales by zeta^{nk}."""
    sp = space(ws, "narrow")
    d = ws.d
    M = linalg.zeros(sp.dim, sp.dim, Cyclotomic.zero(d))
    for k in sp.basis:
        M[sp.index[k]][sp.index[k]] = Cyclotomic.zeta(d, n * k)
    return M


def spherical_matrix(ws: WeightSystem, l: int = 0) -> list[list[Cyclotomic]]:
    return _kclass_map_matrix(ws, lambda E: spherical_twist(ws, E, l))


def orlov_matrix(ws: WeightSystem, l: int) -> list[list[Cyclotomic]]:
    """H_nar -> H_amb matrix sending ch({a,b}_q) to ch(Phi_l {a,b}_q)."""
    qs = koszul_basis(ws)
    src = _columns_matrix([ch_koszul(ws, q) for q in qs])
    img = _columns_matrix([ch_kclass(ws, orlov_kclass(ws, q, l)) for q in qs])
    return linalg.matmul(img, linalg.inverse(src))


def autoeq_matrix(ws: WeightSystem, functor: str, param: int = 0) -> AutoeqMatrix:
    """Exact ch-level matrix of one of: tensor, grading_shift, spherical, orlov."""
    if functor == "tensor":
        return AutoeqMatrix(f"O({param})", "ambient", "ambient", _freeze(tensor_matrix(ws, param)))
    if functor == "grading_shift":
        return AutoeqMatrix(f"({param})", "narrow", "narrow", _freeze(grading_shift_matrix(ws, param)))
    if functor == "spherical":
        return AutoeqMatrix(f"T_O({param})", "ambient", "ambient", _freeze(spherical_matrix(ws, param)))
    if functor == "orlov":
        return AutoeqMatrix(f"Phi_{param}", "narrow", "ambient", _freeze(orlov_matrix(ws, param)))
    raise ValueError(f"unknown functor {functor!r}")


def _is_identity(M) -> bool:
    return all(
        (M[i][j] - (1 if i == j else 0)).is_zero() for i in range(len(M)) for j in range(len(M))
    )


def monodromy_check(ws: WeightSystem, exponent: int | None = None) -> dict:
    """Exact check of (O(-1) T_O^{-1})^d = id and Phi_0 Phi_1^{-1} = T_O on ch."""
    d = ws.d
    e = d if exponent is None else exponent
    T = spherical_matrix(ws, 0)
    A = linalg.matmul(tensor_matrix(ws, -1), linalg.inverse(T))
    cycle = _is_identity(linalg.matpow(A, e))
    P = linalg.matmul(orlov_matrix(ws, 0), linalg.inverse(orlov_matrix(ws, 1)))
    spherical = linalg.equal(P, T)
    S = grading_shift_matrix(ws, 1)
    shift_order = _is_identity(linalg.matpow(S, d))
    return {
        "weights": list(ws.weights),
        "exponent": e,
        "conifold_cycle_identity": cycle,
        "orlov_ratio_is_spherical": spherical,
        "grading_shift_order_d": shift_order,
        "pass": cycle and spherical and shift_order,
    }


def inv_ch_koszul(ws: WeightSystem, q: int) -> SectorClass:
    return inv_map(ch_koszul(ws, q))


def inv_ch_kclass(ws: WeightSystem, c: KClass) -> SectorClass:
    return inv_map(ch_kclass(ws, c))
