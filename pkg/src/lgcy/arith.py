"""Exact and high-precision arithmetic shared by every other module.

Rationals are :class:`fractions.Fraction`.  Roots of unity live in
:class:`Cyclotomic`, a dense vector over Q reduced modulo the cyclotomic
polynomial, so equality is decided coefficientwise.  Powers of 2*pi*i are
tracked as an integer grade by :class:`GradedScalar` instead of being
evaluated.  Numeric work goes through mpmath at an explicit precision.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Callable, Iterable, Sequence, Union

import mpmath

Rational = Fraction
RationalLike = Union[int, Fraction]

DEFAULT_PRECISION_BITS = 256


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return quot, num[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for e in range(1, m):
        if m % e == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(e)))
            assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coordinates of zeta_m^e for e = 0..m-1."""
    phi = cyclotomic_polynomial(m)
    n = len(phi) - 1
    rows = []
    for e in range(m):
        dense = [0] * (e + 1)
        dense[e] = 1
        _, rem = _poly_divmod(dense, list(phi))
        rem = list(rem) + [0] * (n - len(rem))
        rows.append(tuple(Fraction(x) for x in rem[:n]))
    return tuple(rows)


def _reduce_dense(m: int, dense: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a coefficient vector indexed by powers of zeta_m (any length)."""
    table = _power_table(m)
    n = len(table[0])
    out = [Fraction(0)] * n
    for e, c in enumerate(dense):
        if c:
            row = table[e % m]
            for i in range(n):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _mul_reduce(m: int, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    dense = [Fraction(0)] * (2 * len(a) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    dense[i + j] += x * y
    return _reduce_dense(m, dense)


class Cyclotomic:
    """Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[RationalLike]):
        self.order = order
        c = tuple(Fraction(x) for x in coeffs)
        n = len(cyclotomic_polynomial(order)) - 1
        if len(c) != n:
            c = _reduce_dense(order, c)
        self.coeffs = c
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> Cyclotomic:
        return cls(order, [0] * (len(cyclotomic_polynomial(order)) - 1))

    @classmethod
    def one(cls, order: int) -> Cyclotomic:
        return cls.from_rational(order, 1)

    @classmethod
    def from_rational(cls, order: int, value: RationalLike) -> Cyclotomic:
        n = len(cyclotomic_polynomial(order)) - 1
        return cls(order, [Fraction(value)] + [Fraction(0)] * (n - 1))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> Cyclotomic:
        return cls(order, _power_table(order)[power % order])

    @classmethod
    def from_powers(cls, order: int, weights: dict[int, RationalLike]) -> Cyclotomic:
        """Sum of ``c * zeta^e`` over the given exponent map."""
        dense = [Fraction(0)] * order
        for e, c in weights.items():
            dense[e % order] += Fraction(c)
        return cls(order, _reduce_dense(order, dense))

    # coercion -----------------------------------------------------------
    def _coerce(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return other
            return None
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return None

    def embed(self, order: int) -> Cyclotomic:
        """Image under zeta_m -> zeta_M^(M/m) for a multiple M of m."""
        if order % self.order:
            raise ValueError("target order must be a multiple")
        step = order // self.order
        dense = [Fraction(0)] * order
        for e, c in enumerate(self.coeffs):
            dense[(e * step) % order] += c
        return Cyclotomic(order, _reduce_dense(order, dense))

    def _align(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        if other.order == self.order:
            return self, other
        m = self.order * other.order // gcd(self.order, other.order)
        return self.embed(m), other.embed(m)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Cyclotomic):
                a, b = self._align(other)
                return a + b
            return NotImplemented
        return Cyclotomic(self.order, [x + y for x, y in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Cyclotomic):
                a, b = self._align(other)
                return a - b
            return NotImplemented
        return Cyclotomic(self.order, [x - y for x, y in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Cyclotomic.zero(self.order)
            return Cyclotomic(self.order, [x * other for x in self.coeffs])
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Cyclotomic):
                a, b = self._align(other)
                return a * b
            return NotImplemented
        return Cyclotomic(self.order, _mul_reduce(self.order, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def multiplication_matrix(self) -> list[list[Fraction]]:
        n = len(self.coeffs)
        cols = []
        for i in range(n):
            basis = Cyclotomic.zeta(self.order, i)
            cols.append((self * basis).coeffs)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return Cyclotomic.from_rational(self.order, 1 / self.coeffs[0])
        n = len(self.coeffs)
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        return Cyclotomic(self.order, _solve_rational(self.multiplication_matrix(), rhs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [x / other for x in self.coeffs])
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> Cyclotomic:
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"non-rational cyclotomic residue: {self}")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                a, b = self._align(other)
                return a.coeffs == b.coeffs
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs)) if not self.is_rational() else hash(self.coeffs[0])
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # misc ---------------------------------------------------------------
    def conjugate(self) -> Cyclotomic:
        """Complex conjugate, i.e. zeta -> zeta^-1."""
        return Cyclotomic.from_powers(self.order, {-e: c for e, c in enumerate(self.coeffs) if c})

    def to_complex(self, prec: int = DEFAULT_PRECISION_BITS):
        with mpmath.workprec(prec):
            z = mpmath.exp(2j * mpmath.pi / self.order)
            acc = mpmath.mpc(0)
            for e, c in enumerate(self.coeffs):
                if c:
                    acc += mpmath.mpf(c.numerator) / c.denominator * z**e
            return acc

    def __repr__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if e == 0 else f"{c}*z{self.order}^{e}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}


def cyclotomic_arith(a: Cyclotomic, b: Cyclotomic | None, op: str) -> Cyclotomic:
    """Dispatcher for add, mul and inv."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# graded scalars: value * (2*pi*i)^n
# ---------------------------------------------------------------------------


class MixedGradeError(ArithmeticError):
    pass


class GradedScalar:
    __slots__ = ("value", "twopi")

    def __init__(self, value: Cyclotomic, twopi: int = 0):
        self.value = value
        self.twopi = twopi

    @classmethod
    def rational(cls, order: int, x: RationalLike, twopi: int = 0) -> GradedScalar:
        return cls(Cyclotomic.from_rational(order, x), twopi)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedScalar(Cyclotomic.from_rational(self.value.order, other), 0)
        if not isinstance(other, GradedScalar):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.twopi != other.twopi:
            raise MixedGradeError(f"cannot add (2 pi i)^{self.twopi} and (2 pi i)^{other.twopi} exactly")
        return GradedScalar(self.value + other.value, self.twopi)

    __radd__ = __add__

    def __neg__(self) -> GradedScalar:
        return GradedScalar(-self.value, self.twopi)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedScalar):
            return GradedScalar(self.value * other.value, self.twopi + other.twopi)
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return GradedScalar(self.value * other, self.twopi)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> GradedScalar:
        return GradedScalar(self.value.inverse(), -self.twopi)

    def __truediv__(self, other):
        if isinstance(other, GradedScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return GradedScalar(self.value / other, self.twopi)
        if isinstance(other, Cyclotomic):
            return GradedScalar(self.value * other.inverse(), self.twopi)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedScalar):
            if self.is_zero() and other.is_zero():
                return True
            return self.twopi == other.twopi and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return (self.twopi == 0 or other == 0) and self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.twopi)) if not self.is_zero() else 0

    def to_complex(self, prec: int = DEFAULT_PRECISION_BITS):
        with mpmath.workprec(prec):
            return self.value.to_complex(prec) * (2j * mpmath.pi) ** self.twopi

    def __repr__(self) -> str:
        return f"({self.value})" + (f"*(2pi i)^{self.twopi}" if self.twopi else "")


def rational_part(a: GradedScalar | Cyclotomic) -> Fraction:
    """Rational value of an ungraded scalar; raises if an irrational part survives."""
    if isinstance(a, GradedScalar):
        if a.twopi != 0 and not a.is_zero():
            raise ValueError("scalar carries a nonzero power of 2 pi i")
        a = a.value
    return a.rational_value()


# ---------------------------------------------------------------------------
# truncated polynomials in a nilpotent variable
# ---------------------------------------------------------------------------


class NilpotentPoly:
    """Polynomial c_0 + c_1 p + ... + c_T p^T with p^(T+1) = 0.

    Coefficients may be any ring elements supporting + and *; ``zero`` is
    the additive identity of that ring.  ``T = -1`` encodes the zero space.
    """

    __slots__ = ("T", "coeffs")

    def __init__(self, coeffs: Sequence, T: int | None = None, zero=0):
        coeffs = list(coeffs)
        if T is None:
            T = len(coeffs) - 1
        if len(coeffs) < T + 1:
            coeffs = coeffs + [zero] * (T + 1 - len(coeffs))
        self.T = T
        self.coeffs = tuple(coeffs[: T + 1]) if T >= 0 else ()

    @classmethod
    def constant(cls, c, T: int, zero=0) -> NilpotentPoly:
        return cls([c], T, zero)

    def _zero(self):
        return self.coeffs[0] * 0 if self.coeffs else 0

    def __add__(self, other):
        if isinstance(other, NilpotentPoly):
            T = min(self.T, other.T)
            return NilpotentPoly([a + b for a, b in zip(self.coeffs[: T + 1], other.coeffs[: T + 1])], T)
        if self.T < 0:
            return self
        return NilpotentPoly([self.coeffs[0] + other] + list(self.coeffs[1:]), self.T)

    __radd__ = __add__

    def __neg__(self) -> NilpotentPoly:
        return NilpotentPoly([-c for c in self.coeffs], self.T)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NilpotentPoly):
            T = min(self.T, other.T)
            if T < 0:
                return NilpotentPoly([], -1)
            a, b = self.coeffs, other.coeffs
            out = []
            for n in range(T + 1):
                acc = a[0] * b[n]
                for i in range(1, n + 1):
                    acc = acc + a[i] * b[n - i]
                out.append(acc)
            return NilpotentPoly(out, T)
        return NilpotentPoly([c * other for c in self.coeffs], self.T)

    def __rmul__(self, other):
        return NilpotentPoly([other * c for c in self.coeffs], self.T)

    def map(self, fn: Callable) -> NilpotentPoly:
        return NilpotentPoly([fn(c) for c in self.coeffs], self.T)

    def truncate(self, T: int) -> NilpotentPoly:
        return NilpotentPoly(self.coeffs[: T + 1], min(T, self.T)) if T >= 0 else NilpotentPoly([], -1)

    def inverse(self) -> NilpotentPoly:
        """Multiplicative inverse; the constant term must be invertible."""
        if self.T < 0:
            return self
        c0 = self.coeffs[0]
        inv0 = 1 / c0 if not hasattr(c0, "inverse") else c0.inverse()
        out = [inv0]
        for n in range(1, self.T + 1):
            acc = self.coeffs[1] * out[n - 1]
            for i in range(2, n + 1):
                acc = acc + self.coeffs[i] * out[n - i]
            out.append(-(acc * inv0))
        return NilpotentPoly(out, self.T)

    def __truediv__(self, other):
        if isinstance(other, NilpotentPoly):
            return self * other.inverse()
        return NilpotentPoly([c / other for c in self.coeffs], self.T)

    def __pow__(self, n: int) -> NilpotentPoly:
        if n < 0:
            return self.inverse() ** (-n)
        one = self._one()
        result = NilpotentPoly.constant(one, self.T)
        for _ in range(n):
            result = result * self
        return result

    def _one(self):
        c0 = self.coeffs[0]
        if isinstance(c0, Cyclotomic):
            return Cyclotomic.one(c0.order)
        if isinstance(c0, GradedScalar):
            return GradedScalar(Cyclotomic.one(c0.value.order))
        return c0 * 0 + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, NilpotentPoly):
            return NotImplemented
        return self.T == other.T and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.T, self.coeffs))

    def is_zero(self) -> bool:
        return all((c.is_zero() if hasattr(c, "is_zero") else c == 0) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"NilpotentPoly({list(self.coeffs)}, T={self.T})"


def exp_series(T: int, scale: RationalLike = 1) -> list[Fraction]:
    """Coefficients of exp(scale * p) up to p^T."""
    s = Fraction(scale)
    out, term = [], Fraction(1)
    for n in range(T + 1):
        out.append(term)
        term = term * s / (n + 1)
    return out


def series_exp(c: Sequence, T: int, one=1):
    """exp of a power series with zero constant term, truncated at T."""
    out = [one] + [one * 0] * T
    # f' = g' f recursion
    for n in range(1, T + 1):
        acc = one * 0
        for k in range(1, n + 1):
            if k < len(c):
                acc = acc + c[k] * out[n - k] * k
        out[n] = acc / n
    return out


# ---------------------------------------------------------------------------
# Laurent polynomials in z (and polynomials in lambda)
# ---------------------------------------------------------------------------


class ZLaurent:
    """Finite sum of c * z^a * lambda^b with a in Z, b >= 0."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], object] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c) -> ZLaurent:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c, zpow: int = 0, lpow: int = 0) -> ZLaurent:
        return cls({(zpow, lpow): c})

    @classmethod
    def linear(cls, zc, lc=0, const=0) -> ZLaurent:
        """zc*z + lc*lambda + const."""
        return cls({(1, 0): zc, (0, 1): lc, (0, 0): const})

    def __add__(self, other):
        if not isinstance(other, ZLaurent):
            other = ZLaurent.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ZLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> ZLaurent:
        return ZLaurent({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ZLaurent):
            if other == 0:
                return ZLaurent()
            return ZLaurent({k: v * other for k, v in self.terms.items()})
        out: dict[tuple[int, int], object] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return ZLaurent(out)

    __rmul__ = __mul__

    def inverse(self) -> ZLaurent:
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials are invertible in ZLaurent")
        (a, b), c = next(iter(self.terms.items()))
        if b:
            raise ZeroDivisionError("lambda is not invertible")
        return ZLaurent({(-a, 0): 1 / c if not hasattr(c, "inverse") else c.inverse()})

    def __truediv__(self, other):
        if isinstance(other, ZLaurent):
            return self * other.inverse()
        return ZLaurent({k: v / other for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, ZLaurent):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {(0, 0): other}

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def split(self) -> tuple[ZLaurent, ZLaurent]:
        """(negative z-power part, non-negative z-power part)."""
        neg = {k: v for k, v in self.terms.items() if k[0] < 0}
        pos = {k: v for k, v in self.terms.items() if k[0] >= 0}
        return ZLaurent(neg), ZLaurent(pos)

    def z_range(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        zs = [k[0] for k in self.terms]
        return min(zs), max(zs)

    def substitute(self, z, lam):
        """Numeric evaluation at given z, lambda (any ring supporting **)."""
        acc = 0
        for (a, b), c in self.terms.items():
            acc = acc + c * z**a * lam**b
        return acc

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            parts.append(f"{c}*z^{a}*l^{b}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Gamma function and friends
# ---------------------------------------------------------------------------


def _is_nonpositive_integer(x) -> bool:
    x = mpmath.mpmathify(x)
    return mpmath.im(x) == 0 and mpmath.re(x) <= 0 and mpmath.re(x) == mpmath.floor(mpmath.re(x))


def gamma_complex(x, prec: int = DEFAULT_PRECISION_BITS):
    """Gamma(x) to working precision ``prec``; raises at the poles."""
    with mpmath.workprec(prec):
        if _is_nonpositive_integer(x):
            raise ZeroDivisionError(f"Gamma has a pole at {x}")
        return mpmath.gamma(mpmath.mpmathify(x))


def rgamma_complex(x, prec: int = DEFAULT_PRECISION_BITS):
    """1/Gamma(x), entire (zero at the poles of Gamma)."""
    with mpmath.workprec(prec):
        return mpmath.rgamma(mpmath.mpmathify(x))


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def gamma_nilpotent(c, w: RationalLike, T: int, prec: int = DEFAULT_PRECISION_BITS) -> NilpotentPoly:
    """Taylor expansion of Gamma(c + w*x) in x, truncated at x^T."""
    with mpmath.workprec(prec + 20):
        c = _to_mp(c)
        if _is_nonpositive_integer(c):
            raise ZeroDivisionError(f"Gamma has a pole at {c}")
        w = _to_mp(w)
        log_coeffs = [mpmath.mpf(0)]
        for n in range(1, T + 1):
            log_coeffs.append(mpmath.polygamma(n - 1, c) * w**n / mpmath.factorial(n))
        ex = series_exp(log_coeffs, T, one=mpmath.mpf(1))
        g0 = mpmath.gamma(c)
        coeffs = [g0 * e for e in ex]
    with mpmath.workprec(prec):
        return NilpotentPoly([+x for x in coeffs], T)


def rgamma_nilpotent(c, w: RationalLike, T: int, prec: int = DEFAULT_PRECISION_BITS) -> NilpotentPoly:
    """Taylor expansion of 1/Gamma(c + w*x); also valid at the poles of Gamma."""
    with mpmath.workprec(prec + 20):
        cm = _to_mp(c)
        if not _is_nonpositive_integer(cm):
            coeffs = gamma_nilpotent(cm, w, T, prec + 20).inverse().coeffs
        else:
            # 1/Gamma(s) = Gamma(1-s) sin(pi s)/pi, and sin(pi(c+wx)) = (-1)^c sin(pi w x)
            wm = _to_mp(w)
            refl = gamma_nilpotent(1 - cm, -wm, T, prec + 20)
            sign = -1 if int(mpmath.re(cm)) % 2 else 1
            sin_c = [mpmath.mpf(0)] * (T + 1)
            for k in range(0, T + 1):
                if k % 2 == 1:
                    sin_c[k] = sign * (-1) ** (k // 2) * (mpmath.pi * wm) ** k / mpmath.factorial(k) / mpmath.pi
            coeffs = (refl * NilpotentPoly(sin_c, T)).coeffs
    with mpmath.workprec(prec):
        return NilpotentPoly([+x for x in coeffs], T)


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(n):
        acc += comb(n + 1, k) * bernoulli_number(k)
    return -acc / (n + 1)


def bernoulli_poly(n: int, x: RationalLike) -> Fraction:
    if n < 0:
        raise ValueError("n must be non-negative")
    x = Fraction(x)
    return sum((comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)), Fraction(0))


def frac_part(x: RationalLike) -> Fraction:
    """<x> = x - floor(x) in [0, 1)."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)
