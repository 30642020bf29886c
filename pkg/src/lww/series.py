"""Exact truncated power series in z over the rationals.

ZSeries is the arithmetic substrate for every identity check: a tuple of
Fraction coefficients c_0..c_{nmax}, closed under ring ops at fixed
truncation order. SpatialSeries maps lattice points (or finite-graph
vertices) to ZSeries with finite support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .core import PreconditionError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ZSeries:
    coeffs: tuple  # length nmax+1

    @property
    def nmax(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def zero(nmax: int) -> "ZSeries":
        return ZSeries((ZERO,) * (nmax + 1))

    @staticmethod
    def one(nmax: int) -> "ZSeries":
        return ZSeries((ONE,) + (ZERO,) * nmax)

    @staticmethod
    def const(c, nmax: int) -> "ZSeries":
        return ZSeries((Fraction(c),) + (ZERO,) * nmax)

    @staticmethod
    def monomial(c, power: int, nmax: int) -> "ZSeries":
        if power > nmax:
            return ZSeries.zero(nmax)
        co = [ZERO] * (nmax + 1)
        co[power] = Fraction(c)
        return ZSeries(tuple(co))

    @staticmethod
    def of(coeffs, nmax: int) -> "ZSeries":
        co = [Fraction(c) for c in coeffs][: nmax + 1]
        co += [ZERO] * (nmax + 1 - len(co))
        return ZSeries(tuple(co))

    def _check(self, other: "ZSeries"):
        if self.nmax != other.nmax:
            raise PreconditionError("mismatched truncation orders")

    def __add__(self, other: "ZSeries") -> "ZSeries":
        self._check(other)
        return ZSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        self._check(other)
        return ZSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ZSeries":
        return ZSeries(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, ZSeries):
            self._check(other)
            n = self.nmax
            a, b = self.coeffs, other.coeffs
            out = [ZERO] * (n + 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j in range(n + 1 - i):
                    bj = b[j]
                    if bj != 0:
                        out[i + j] += ai * bj
            return ZSeries(tuple(out))
        c = Fraction(other)
        return ZSeries(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def shift(self, k: int) -> "ZSeries":
        """Multiply by z^k."""
        if k == 0:
            return self
        n = self.nmax
        return ZSeries((ZERO,) * min(k, n + 1) + self.coeffs[: max(0, n + 1 - k)])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def leq(self, other: "ZSeries") -> bool:
        """Coefficientwise <=."""
        self._check(other)
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def nonneg(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def derivative(self) -> "ZSeries":
        """d/dz on coefficients; the top coefficient is lost to truncation."""
        n = self.nmax
        co = [Fraction(k) * self.coeffs[k] for k in range(1, n + 1)] + [ZERO]
        return ZSeries(tuple(co))

    def eval_at(self, z) -> Fraction:
        z = Fraction(z)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def to_json(self) -> list:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @staticmethod
    def from_json(data, nmax=None) -> "ZSeries":
        co = [Fraction(s) for s in data]
        return ZSeries.of(co, nmax if nmax is not None else len(co) - 1)


def exp_series(a: ZSeries) -> ZSeries:
    """Truncated exp(a); a must have zero constant term (keeps coefficients rational)."""
    if a.coeffs[0] != 0:
        raise PreconditionError("exp needs zero constant term")
    n = a.nmax
    out = ZSeries.one(n)
    term = ZSeries.one(n)
    # a^k/k! vanishes beyond k = nmax since a = O(z)
    for k in range(1, n + 1):
        term = term * a
        if term.is_zero():
            break
        out = out + term * Fraction(1, factorial(k))
    return out


def reciprocal(a: ZSeries) -> ZSeries:
    """Truncated 1/a; a must have nonzero constant term."""
    if a.coeffs[0] == 0:
        raise PreconditionError("reciprocal needs nonzero constant term")
    n = a.nmax
    inv0 = 1 / a.coeffs[0]
    out = [inv0] + [ZERO] * n
    for k in range(1, n + 1):
        s = ZERO
        for j in range(1, k + 1):
            if a.coeffs[j] != 0:
                s += a.coeffs[j] * out[k - j]
        out[k] = -inv0 * s
    return ZSeries(tuple(out))


def log1p_series(a: ZSeries) -> ZSeries:
    """Truncated log(1+a); a must have zero constant term."""
    if a.coeffs[0] != 0:
        raise PreconditionError("log1p needs zero constant term")
    n = a.nmax
    out = ZSeries.zero(n)
    term = ZSeries.one(n)
    for k in range(1, n + 1):
        term = term * a
        if term.is_zero():
            break
        out = out + term * Fraction((-1) ** (k + 1), k)
    return out


@dataclass(frozen=True)
class SpatialSeries:
    """Finitely supported map point -> ZSeries at a common truncation order."""

    data: tuple  # sorted tuple of (point, ZSeries) with nonzero series
    nmax: int

    @staticmethod
    def build(mapping: dict, nmax: int) -> "SpatialSeries":
        items = []
        for x, s in mapping.items():
            if not isinstance(s, ZSeries):
                s = ZSeries.of(s, nmax)
            if s.nmax != nmax:
                raise PreconditionError("mismatched truncation orders")
            if not s.is_zero():
                items.append((x, s))
        items.sort(key=lambda kv: kv[0])
        return SpatialSeries(tuple(items), nmax)

    @staticmethod
    def delta(origin, nmax: int) -> "SpatialSeries":
        return SpatialSeries.build({origin: ZSeries.one(nmax)}, nmax)

    def as_dict(self) -> dict:
        return dict(self.data)

    def at(self, x) -> ZSeries:
        for p, s in self.data:
            if p == x:
                return s
        return ZSeries.zero(self.nmax)

    def support(self):
        return [p for p, _ in self.data]

    def __add__(self, other: "SpatialSeries") -> "SpatialSeries":
        out = dict(self.data)
        for x, s in other.data:
            out[x] = out[x] + s if x in out else s
        return SpatialSeries.build(out, self.nmax)

    def __sub__(self, other: "SpatialSeries") -> "SpatialSeries":
        out = dict(self.data)
        for x, s in other.data:
            out[x] = out[x] - s if x in out else -s
        return SpatialSeries.build(out, self.nmax)

    def scale(self, s) -> "SpatialSeries":
        if isinstance(s, ZSeries):
            return SpatialSeries.build({x: v * s for x, v in self.data}, self.nmax)
        return SpatialSeries.build({x: v * Fraction(s) for x, v in self.data}, self.nmax)

    def sum_over_x(self) -> ZSeries:
        acc = ZSeries.zero(self.nmax)
        for _, s in self.data:
            acc = acc + s
        return acc

    def to_json(self) -> list:
        return [{"x": list(x), "coeffs": s.to_json()} for x, s in self.data]

    @staticmethod
    def from_json(data, nmax: int) -> "SpatialSeries":
        return SpatialSeries.build(
            {tuple(e["x"]): ZSeries.from_json(e["coeffs"], nmax) for e in data}, nmax
        )


def spatial_convolve(a: SpatialSeries, b: SpatialSeries) -> SpatialSeries:
    """(a*b)(x) = sum_y a(y) b(x-y) on the lattice (points are int tuples)."""
    if a.nmax != b.nmax:
        raise PreconditionError("mismatched truncation orders")
    out = {}
    for y, sa in a.data:
        for w, sb in b.data:
            x = tuple(p + q for p, q in zip(y, w))
            prod = sa * sb
            out[x] = out[x] + prod if x in out else prod
    return SpatialSeries.build(out, a.nmax)


def spatial_inverse(a: SpatialSeries) -> SpatialSeries:
    """Convolution inverse: a * inv = delta_0, solved order by order.

    Requires a(0) to have nonzero constant term and all other points to
    vanish at order zero.
    """
    n = a.nmax
    d = len(a.data[0][0]) if a.data else 0
    origin = (0,) * d
    a0 = a.at(origin)
    if a0.coeffs[0] == 0:
        raise PreconditionError("a(0) needs nonzero constant term")
    for x, s in a.data:
        if x != origin and s.coeffs[0] != 0:
            raise PreconditionError("off-origin constant terms must vanish")
    inv0 = 1 / a0.coeffs[0]
    # coefficients inv[k][x]
    inv = [dict() for _ in range(n + 1)]
    inv[0][origin] = inv0
    a_co = {x: s.coeffs for x, s in a.data}
    for k in range(1, n + 1):
        rhs = {}
        # sum_{j<k} sum_y a_{k-j}(y) inv_j(x-y) must cancel
        for y, co in a_co.items():
            for j in range(0, k):
                c_a = co[k - j]
                if c_a == 0:
                    continue
                if k - j == 0 and y == origin:
                    continue
                for xz, c_i in inv[j].items():
                    x = tuple(p + q for p, q in zip(y, xz))
                    rhs[x] = rhs.get(x, ZERO) + c_a * c_i
        for x, v in rhs.items():
            if v != 0:
                inv[k][x] = -inv0 * v
    support = set()
    for row in inv:
        support.update(row)
    out = {}
    for x in support:
        out[x] = ZSeries(tuple(inv[k].get(x, ZERO) for k in range(n + 1)))
    return SpatialSeries.build(out, n)
