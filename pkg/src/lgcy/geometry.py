"""Weight systems and the index sets they determine."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd

from .arith import frac_part

CATALOG: dict[str, tuple[int, ...]] = {
    "quintic": (1, 1, 1, 1, 1),
    "11112": (1, 1, 1, 1, 2),
    "sextic": (1, 1, 1, 1, 1, 1),
    "11222": (1, 1, 2, 2, 2),
    "11114": (1, 1, 1, 1, 4),
}


class WeightSystemError(ValueError):
    pass


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]
    d: int = field(init=False)

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if not w:
            raise WeightSystemError("empty weight list")
        if any(x <= 0 for x in w):
            raise WeightSystemError("weights must be positive")
        if reduce(gcd, w) != 1:
            raise WeightSystemError(f"weights {w} are not coprime")
        d = sum(w)
        bad = [x for x in w if d % x]
        if bad:
            raise WeightSystemError(f"Gorenstein condition fails: {bad} do not divide d={d}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "d", d)

    @property
    def N(self) -> int:
        return len(self.weights)

    @property
    def hc(self) -> int:
        return self.N - 2

    @cached_property
    def q(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(w, self.d) for w in self.weights)

    def label(self) -> str:
        return ",".join(map(str, self.weights))

    # index sets ---------------------------------------------------------
    def fixed_count(self, k: int) -> int:
        """N_k = #{j : k w_j = 0 mod d}."""
        return sum(1 for w in self.weights if (k * w) % self.d == 0)

    def is_narrow(self, k: int) -> bool:
        return self.fixed_count(k) == 0

    @cached_property
    def narrow(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.d) if self.is_narrow(k))

    @cached_property
    def frF(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(k, self.d) for k in range(self.d) if not self.is_narrow(k))

    def sector_dim(self, f: Fraction) -> int:
        """N_f = #{j : f w_j in Z} (dimension of P(w)_f plus one)."""
        return sum(1 for w in self.weights if (f * w).denominator == 1)

    @staticmethod
    def bar(f: Fraction) -> Fraction:
        """The involution f -> <1 - f>."""
        return frac_part(1 - f)

    @cached_property
    def conifold(self) -> Fraction:
        v = Fraction(1, self.d**self.d)
        for w in self.weights:
            v *= w**w
        return v

    def age(self, k: int) -> Fraction:
        """sum_j <k q_j>."""
        return sum((frac_part(k * qj) for qj in self.q), Fraction(0))

    def sector_age(self, f: Fraction) -> Fraction:
        """sum_j <f w_j>."""
        return sum((frac_part(f * w) for w in self.weights), Fraction(0))


@dataclass(frozen=True)
class SectorTable:
    narrow: tuple[int, ...]
    frF: tuple[Fraction, ...]
    fixed: dict
    conifold: Fraction


def build_weight_system(weights) -> WeightSystem:
    return WeightSystem(tuple(weights))


def parse_weights(text: str) -> WeightSystem:
    """Parse "1,1,1,1,2" or a catalog name."""
    if text in CATALOG:
        return WeightSystem(CATALOG[text])
    try:
        ws = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise WeightSystemError(f"cannot parse weights {text!r}") from exc
    return WeightSystem(tuple(ws))


def sector_table(ws: WeightSystem) -> SectorTable:
    return SectorTable(
        narrow=ws.narrow,
        frF=ws.frF,
        fixed={k: ws.fixed_count(k) for k in range(ws.d)},
        conifold=ws.conifold,
    )


def weighted_monomial_count(ws: WeightSystem, m: int) -> int:
    """Coefficient of t^m in prod_j 1/(1 - t^{w_j})."""
    if m < 0:
        return 0
    counts = [1] + [0] * m
    for w in ws.weights:
        for i in range(w, m + 1):
            counts[i] += counts[i - w]
    return counts[m]


def catalog() -> list[WeightSystem]:
    return [WeightSystem(w) for w in CATALOG.values()]
