"""Narrow, extended, ambient and Chen-Ruan state spaces.

A :class:`StateSpace` fixes an ordered basis; a :class:`SectorClass` is a
coefficient vector over that basis.  FJRW basis labels are the sector
index k (the element phi_{k-1}); GW labels are pairs (f, i) for p^i 1_f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Sequence

from .arith import Cyclotomic, NilpotentPoly, ZLaurent, frac_part
from .geometry import WeightSystem
from . import linalg

KINDS = ("narrow", "extended", "ambient", "crp")


@dataclass(frozen=True)
class StateSpace:
    ws: WeightSystem
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown state space {self.kind!r}")

    @property
    def is_fjrw(self) -> bool:
        return self.kind in ("narrow", "extended")

    @cached_property
    def basis(self) -> tuple[Hashable, ...]:
        ws = self.ws
        if self.kind == "narrow":
            return tuple(ws.narrow)
        if self.kind == "extended":
            return tuple(range(1, ws.d + 1))
        out = []
        for f in ws.frF:
            for i in range(self.truncation(f) + 1):
                out.append((f, i))
        return tuple(out)

    @cached_property
    def index(self) -> dict:
        return {b: n for n, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def truncation(self, f: Fraction) -> int:
        """Top power of p on sector f (-1 for an empty sector)."""
        n = self.ws.sector_dim(f)
        return n - 2 if self.kind == "ambient" else n - 1

    @cached_property
    def sectors(self) -> tuple:
        if self.is_fjrw:
            return self.basis
        return tuple(self.ws.frF)

    # gradings -------------------------------------------------------------
    def degree(self, label) -> Fraction:
        ws = self.ws
        if self.is_fjrw:
            k = label
            return 2 * ws.age(k - 1)
        f, i = label
        return 2 * i + 2 * ws.sector_age(f)

    def grading(self, label) -> Fraction:
        return self.degree(label) / 2

    def deg0(self, label) -> int:
        if self.is_fjrw:
            return -2
        return 2 * label[1]

    # involution and Galois action ----------------------------------------------
    def inv_label(self, label):
        d = self.ws.d
        if self.is_fjrw:
            k = (d - label) % d
            return d if (k == 0 and self.kind == "extended") else k
        f, i = label
        return (self.ws.bar(f), i)

    def galois_factor(self, label) -> Cyclotomic:
        """Diagonal entry of G (FJRW) or of its linear part dG (GW)."""
        d = self.ws.d
        if self.is_fjrw:
            return Cyclotomic.zeta(d, -(label - 1))
        f = label[0]
        return Cyclotomic.zeta(d, int(f * d))

    # pairings ----------------------------------------------------------------
    def top_intersection(self, f: Fraction) -> Fraction:
        """Integral of the top power of p over the sector f."""
        prod = 1
        for w in self.ws.weights:
            if (f * w).denominator == 1:
                prod *= w
        if self.kind == "ambient":
            return Fraction(self.ws.d, prod)
        return Fraction(1, prod)

    def pairing_entry(self, a, b) -> Fraction:
        """Untwisted pairing of two basis labels (narrow or ambient)."""
        ws = self.ws
        if self.kind == "narrow":
            return Fraction(1, ws.d) if a + b == ws.d else Fraction(0)
        if self.kind == "ambient":
            (f, i), (g, j) = a, b
            if g != ws.bar(f):
                return Fraction(0)
            if i + j != self.truncation(f):
                return Fraction(0)
            return self.top_intersection(f)
        raise ValueError("twisted spaces need pair_twisted")

    def twisted_pairing_entry(self, a, b) -> ZLaurent:
        """e_T-twisted pairing with lambda_j = -q_j lambda, as a polynomial in lambda."""
        ws = self.ws
        if self.kind == "extended":
            h, k = a - 1, b - 1
            if (h + k - (ws.d - 2)) % ws.d:
                return ZLaurent()
            c = Fraction(1, ws.d)
            npow = 0
            for qj in ws.q:
                if frac_part(qj * (h + 1)) == 0:
                    c *= -qj
                    npow += 1
            return ZLaurent.monomial(c, 0, npow)
        if self.kind == "crp":
            (f, i), (g, j) = a, b
            if g != ws.bar(f):
                return ZLaurent()
            top = self.truncation(f)
            vol = self.top_intersection(f)
            out = ZLaurent()
            if i + j == top:
                out = out + ZLaurent.monomial(vol, 0, 1)
            if i + j + 1 == top:
                out = out + ZLaurent.monomial(ws.d * vol, 0, 0)
            return out
        raise ValueError("untwisted spaces use pairing_entry")

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        return [[self.pairing_entry(a, b) for b in self.basis] for a in self.basis]

    @cached_property
    def twisted_gram(self) -> list[list[ZLaurent]]:
        return [[self.twisted_pairing_entry(a, b) for b in self.basis] for a in self.basis]

    # construction helpers -----------------------------------------------------
    def zero_class(self, zero=None) -> SectorClass:
        z = Cyclotomic.zero(self.ws.d) if zero is None else zero
        return SectorClass(self, tuple(z for _ in self.basis))

    def from_dict(self, data: dict, zero=None) -> SectorClass:
        z = Cyclotomic.zero(self.ws.d) if zero is None else zero
        return SectorClass(self, tuple(data.get(b, z) for b in self.basis))

    def from_sector_polys(self, polys: dict, zero=None) -> SectorClass:
        """GW side: sector f -> list/NilpotentPoly of p-coefficients."""
        z = Cyclotomic.zero(self.ws.d) if zero is None else zero
        data = {}
        for f, poly in polys.items():
            coeffs = poly.coeffs if isinstance(poly, NilpotentPoly) else poly
            for i in range(self.truncation(f) + 1):
                if i < len(coeffs):
                    data[(f, i)] = coeffs[i]
        return self.from_dict(data, z)


@dataclass(frozen=True)
class SectorClass:
    space: StateSpace
    coeffs: tuple

    def __getitem__(self, label):
        return self.coeffs[self.space.index[label]]

    def as_dict(self) -> dict:
        return dict(zip(self.space.basis, self.coeffs))

    def sector_poly(self, f: Fraction) -> NilpotentPoly:
        T = self.space.truncation(f)
        return NilpotentPoly([self[(f, i)] for i in range(T + 1)], T)

    def map(self, fn: Callable) -> SectorClass:
        return SectorClass(self.space, tuple(fn(c) for c in self.coeffs))

    def __add__(self, other: SectorClass) -> SectorClass:
        return SectorClass(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: SectorClass) -> SectorClass:
        return SectorClass(self.space, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> SectorClass:
        return SectorClass(self.space, tuple(-a for a in self.coeffs))

    def scale(self, c) -> SectorClass:
        return SectorClass(self.space, tuple(a * c for a in self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SectorClass):
            return NotImplemented
        return self.space == other.space and all(
            (a - b).is_zero() if hasattr(a - b, "is_zero") else a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.space, self.coeffs))

    def is_zero(self) -> bool:
        return all((c.is_zero() if hasattr(c, "is_zero") else c == 0) for c in self.coeffs)


@lru_cache(maxsize=None)
def space(ws: WeightSystem, kind: str) -> StateSpace:
    return StateSpace(ws, kind)


def degree(ws: WeightSystem, label, side: str) -> Fraction:
    return space(ws, side).degree(label)


def _bilinear(a: SectorClass, b: SectorClass, gram) -> object:
    acc = None
    for i, x in enumerate(a.coeffs):
        if _zero(x):
            continue
        for j, y in enumerate(b.coeffs):
            g = gram[i][j]
            if _zero(g) or _zero(y):
                continue
            term = x * y * g
            acc = term if acc is None else acc + term
    if acc is None:
        return a.coeffs[0] * 0 if a.coeffs else 0
    return acc


def _zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def pair_narrow(a: SectorClass, b: SectorClass):
    return _bilinear(a, b, a.space.gram)


def pair_ambient(a: SectorClass, b: SectorClass):
    return _bilinear(a, b, a.space.gram)


def pair_twisted(a: SectorClass, b: SectorClass, lam=None):
    """Twisted pairing; symbolic in lambda when ``lam`` is None."""
    sp = a.space
    acc = None
    for i, x in enumerate(a.coeffs):
        if _zero(x):
            continue
        for j, y in enumerate(b.coeffs):
            g = sp.twisted_gram[i][j]
            if g.is_zero() or _zero(y):
                continue
            gval = g if lam is None else g.substitute(1, lam)
            term = gval * (x * y)
            acc = term if acc is None else acc + term
    if acc is None:
        return ZLaurent() if lam is None else 0
    return acc


def inv_map(a: SectorClass) -> SectorClass:
    sp = a.space
    data = {sp.inv_label(b): c for b, c in zip(sp.basis, a.coeffs)}
    return SectorClass(sp, tuple(data[b] for b in sp.basis))


def galois(a: SectorClass) -> SectorClass:
    sp = a.space
    return SectorClass(sp, tuple(c * sp.galois_factor(b) for b, c in zip(sp.basis, a.coeffs)))


def deg0_operator(a: SectorClass) -> SectorClass:
    sp = a.space
    return SectorClass(sp, tuple(c * sp.deg0(b) for b, c in zip(sp.basis, a.coeffs)))


def grading_operator(a: SectorClass) -> SectorClass:
    sp = a.space
    return SectorClass(sp, tuple(c * sp.grading(b) for b, c in zip(sp.basis, a.coeffs)))


def deg0_and_grading(a: SectorClass) -> tuple[SectorClass, SectorClass]:
    return deg0_operator(a), grading_operator(a)


def gram_matrix(sp: StateSpace) -> list[list[Cyclotomic]]:
    d = sp.ws.d
    return [[Cyclotomic.from_rational(d, x) for x in row] for row in sp.gram]


def is_nondegenerate(sp: StateSpace) -> bool:
    g = gram_matrix(sp)
    return linalg.rank(g) == sp.dim


def basis_vector(sp: StateSpace, label) -> SectorClass:
    d = sp.ws.d
    return sp.from_dict({label: Cyclotomic.one(d)})


def describe(ws: WeightSystem) -> dict:
    """JSON-ready summary of bases, degrees and Gram matrices."""
    out: dict = {
        "weights": list(ws.weights),
        "d": ws.d,
        "N": ws.N,
        "hc": ws.hc,
        "Nar": list(ws.narrow),
        "frF": [str(f) for f in ws.frF],
        "N_k": {str(k): ws.fixed_count(k) for k in range(ws.d)},
        "v_c": str(ws.conifold),
        "spaces": {},
    }
    for kind in KINDS:
        sp = space(ws, kind)
        entry = {
            "basis": [_label_str(b, sp) for b in sp.basis],
            "degrees": [str(sp.degree(b)) for b in sp.basis],
        }
        if kind in ("narrow", "ambient"):
            entry["gram"] = [[str(x) for x in row] for row in sp.gram]
        else:
            entry["twisted_gram"] = [[repr(x) for x in row] for row in sp.twisted_gram]
        out["spaces"][kind] = entry
    return out


def _label_str(label, sp: StateSpace) -> str:
    if sp.is_fjrw:
        return f"phi_{label - 1}"
    f, i = label
    return f"p^{i} 1_{f}"


def galois_is_isometry(sp: StateSpace) -> bool:
    """e^{-2 pi i/d} G (FJRW) or dG (GW) preserves the untwisted pairing, exactly."""
    d = sp.ws.d
    shift = Cyclotomic.zeta(d, -1) if sp.is_fjrw else Cyclotomic.one(d)
    for a in sp.basis:
        for b in sp.basis:
            g = sp.pairing_entry(a, b)
            if not g:
                continue
            factor = shift * shift * sp.galois_factor(a) * sp.galois_factor(b)
            if not (factor - Cyclotomic.one(d)).is_zero():
                return False
    return True
