"""Truncated formal q-series with exponents on the lattice (1/d)Z.

A :class:`QSeries` stores integer lattice indices ``e`` (exponent ``e/d``)
mapped to exact nonzero coefficients, plus a truncation index: everything at
index >= ``trunc`` is unknown.  Arithmetic propagates truncation
conservatively so a result never claims more precision than its inputs.

The constructors at the bottom build the concrete series (divisor-sum
Lambert series, Eisenstein series, eta cubed, the lacunary S3 sums and the
theta-4 derivatives) directly from their defining expansions.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .exact_arith import RationalLike, as_rational, bernoulli, rational_from_str, rational_to_str

Coeff = Union[int, Fraction]

__all__ = [
    "QSeries",
    "LatticeMismatchError",
    "qs_add",
    "qs_mul",
    "qs_scale",
    "relattice",
    "substitute_power",
    "divisor_power_sums",
    "phi_series",
    "eisenstein_P",
    "eisenstein_Q",
    "eisenstein_R",
    "eisenstein_series",
    "eta_cubed_product",
    "s3_direct",
    "theta4_deriv_direct",
]


class LatticeMismatchError(ValueError):
    """Operands live on different exponent lattices; re-lattice first."""


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class QSeries:
    """Immutable truncated series ``sum c_e q^(e/denom)`` for ``0 <= e < trunc``."""

    __slots__ = ("denom", "trunc", "_coeffs")

    def __init__(self, coeffs: Mapping[int, RationalLike], trunc: int, denom: int = 1):
        if denom < 1:
            raise ValueError("lattice denominator must be positive")
        if trunc < 0:
            raise ValueError("truncation index must be nonnegative")
        self.denom = denom
        self.trunc = trunc
        clean: dict[int, Coeff] = {}
        for e in sorted(coeffs):
            c = coeffs[e]
            c = _norm(c if isinstance(c, int) and not isinstance(c, bool) else as_rational(c))
            if not c:
                continue
            if e < 0:
                raise ValueError("negative exponents are not supported")
            if e < trunc:
                clean[int(e)] = c
        self._coeffs = clean

    @classmethod
    def _raw(cls, coeffs: dict[int, Coeff], trunc: int, denom: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj.denom = denom
        obj.trunc = trunc
        obj._coeffs = coeffs
        return obj

    @classmethod
    def from_list(cls, values, denom: int = 1, trunc: int | None = None) -> "QSeries":
        """Dense construction: ``values[e]`` is the coefficient at lattice index ``e``."""
        t = len(values) if trunc is None else trunc
        return cls._raw(
            {e: _norm(v) for e, v in enumerate(values[:t]) if v}, t, denom
        )

    @classmethod
    def one(cls, trunc: int, denom: int = 1) -> "QSeries":
        return cls._raw({0: 1} if trunc > 0 else {}, trunc, denom)

    # access

    def __getitem__(self, index: int) -> Fraction:
        """Coefficient at lattice index ``index``; raises past the truncation."""
        if index >= self.trunc:
            raise IndexError(f"index {index} is beyond truncation {self.trunc}")
        return Fraction(self._coeffs.get(index, 0))

    def coefficient(self, exponent: RationalLike) -> Fraction:
        """Coefficient of ``q^exponent``; exponent must lie on this lattice."""
        x = as_rational(exponent) * self.denom
        if x.denominator != 1:
            raise LatticeMismatchError(f"exponent {exponent} not on lattice 1/{self.denom}")
        return self[x.numerator]

    def items(self) -> Iterator[tuple[int, Fraction]]:
        for e, c in self._coeffs.items():
            yield e, Fraction(c)

    def ord(self) -> int:
        """Lowest stored lattice index; a zero series reports its truncation."""
        return next(iter(self._coeffs), self.trunc)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.denom, self.trunc, self._coeffs) == (other.denom, other.trunc, other._coeffs)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        shown = list(self._coeffs.items())[:6]
        body = " + ".join(f"({c})q^({e}/{self.denom})" for e, c in shown) or "0"
        more = " + ..." if len(self._coeffs) > 6 else ""
        return f"QSeries({body}{more}; trunc={self.trunc}/{self.denom})"

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {trunc}")
        return QSeries._raw({e: c for e, c in self._coeffs.items() if e < trunc}, trunc, self.denom)

    # arithmetic

    def _check(self, other: "QSeries") -> None:
        if self.denom != other.denom:
            raise LatticeMismatchError(
                f"lattice 1/{self.denom} vs 1/{other.denom}; re-lattice before combining"
            )

    def __add__(self, other: object) -> "QSeries":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = QSeries.one(self.trunc, self.denom) * other
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        t = min(self.trunc, other.trunc)
        out = {e: c for e, c in self._coeffs.items() if e < t}
        for e, c in other._coeffs.items():
            if e >= t:
                break
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return QSeries._raw(dict(sorted(out.items())), t, self.denom)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -c for e, c in self._coeffs.items()}, self.trunc, self.denom)

    def __sub__(self, other: object) -> "QSeries":
        if isinstance(other, QSeries):
            return self + (-other)
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: object) -> "QSeries":
        return (-self) + other

    def __mul__(self, other: object) -> "QSeries":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        a, b = self._coeffs, other._coeffs
        t = min(self.trunc + other.ord(), other.trunc + self.ord())
        if not a or not b:
            return QSeries._raw({}, t, self.denom)
        if len(a) > len(b):
            a, b = b, a
        b_items = list(b.items())
        acc: dict[int, Coeff] = {}
        for i, ca in a.items():
            if i >= t:
                break
            lim = t - i
            for j, cb in b_items:
                if j >= lim:
                    break
                k = i + j
                acc[k] = acc.get(k, 0) + ca * cb
        out = {k: _norm(acc[k]) for k in sorted(acc) if acc[k]}
        return QSeries._raw(out, t, self.denom)

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> "QSeries":
        c = _norm(as_rational(c))
        if not c:
            return QSeries._raw({}, self.trunc, self.denom)
        return QSeries._raw(
            {e: _norm(v * c) for e, v in self._coeffs.items()}, self.trunc, self.denom
        )

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries.one(self.trunc if self.ord() == 0 else self.trunc * n, self.denom)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def relattice(self, d_new: int) -> "QSeries":
        if d_new < 1 or d_new % self.denom:
            raise LatticeMismatchError(
                f"can only refine lattice 1/{self.denom} to a multiple, not 1/{d_new}"
            )
        f = d_new // self.denom
        return QSeries._raw({e * f: c for e, c in self._coeffs.items()}, self.trunc * f, d_new)

    def substitute_power(self, k: int) -> "QSeries":
        """q -> q^k."""
        if k < 1:
            raise ValueError("power must be a positive integer")
        return QSeries._raw({e * k: c for e, c in self._coeffs.items()}, self.trunc * k, self.denom)

    def shift(self, s: int) -> "QSeries":
        """Multiply by q^(s/denom) for a nonnegative lattice shift ``s``."""
        if s < 0:
            raise ValueError("only nonnegative shifts are supported")
        return QSeries._raw({e + s: c for e, c in self._coeffs.items()}, self.trunc + s, self.denom)

    # serialization

    def to_json(self) -> dict:
        return {
            "denom": self.denom,
            "trunc": self.trunc,
            "coeffs": {str(e): rational_to_str(c) for e, c in self._coeffs.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "QSeries":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {int(e): rational_from_str(c) for e, c in data["coeffs"].items()}
        return cls(coeffs, int(data["trunc"]), int(data["denom"]))


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def qs_scale(a: QSeries, c: RationalLike) -> QSeries:
    return a.scale(c)


def relattice(a: QSeries, d_new: int) -> QSeries:
    return a.relattice(d_new)


def substitute_power(a: QSeries, k: int) -> QSeries:
    return a.substitute_power(k)


# -- constructors ------------------------------------------------------------

def divisor_power_sums(nu: int, trunc: int) -> list[int]:
    """``s[m] = sigma_nu(m)`` for ``0 <= m < trunc`` (with ``s[0] = 0``), by sieving over divisors."""
    s = [0] * max(trunc, 0)
    for d in range(1, trunc):
        p = d**nu
        for m in range(d, trunc, d):
            s[m] += p
    return s


def phi_series(nu: int, trunc: int) -> QSeries:
    """sum_{n>=1} n^nu q^n / (1 - q^n) = sum_{m>=1} sigma_nu(m) q^m."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    return QSeries.from_list(divisor_power_sums(nu, trunc))


def _lambert_eisenstein(c0: int, factor: int, nu: int, trunc: int) -> QSeries:
    s = divisor_power_sums(nu, trunc)
    vals = [factor * x for x in s]
    if trunc > 0:
        vals[0] = c0
    return QSeries.from_list(vals)


def eisenstein_P(trunc: int) -> QSeries:
    return _lambert_eisenstein(1, -24, 1, trunc)


def eisenstein_Q(trunc: int) -> QSeries:
    return _lambert_eisenstein(1, 240, 3, trunc)


def eisenstein_R(trunc: int) -> QSeries:
    return _lambert_eisenstein(1, -504, 5, trunc)


def eisenstein_series(two_n: int, trunc: int) -> QSeries:
    """Normalized E_{2n} = 1 - (4n / B_{2n}) sum sigma_{2n-1}(m) q^m (the holomorphic P for 2n = 2)."""
    if two_n < 2 or two_n % 2:
        raise ValueError("weight must be even and >= 2")
    if two_n == 2:
        return eisenstein_P(trunc)
    factor = -Fraction(2 * two_n) / bernoulli(two_n)
    return QSeries.one(trunc) + phi_series(two_n - 1, trunc).scale(factor)


def eta_cubed_product(trunc: int) -> QSeries:
    """q^(1/8) prod_{n>=1} (1 - q^n)^3 on the 1/8 lattice, multiplied out factor by factor."""
    if trunc <= 1:
        return QSeries._raw({}, max(trunc, 0), 8)
    # integer-exponent part needed for lattice indices 8k + 1 < trunc
    n_int = (trunc - 2) // 8 + 1
    c = [0] * n_int
    c[0] = 1
    for n in range(1, n_int):
        for _ in range(3):
            for k in range(n_int - 1, n - 1, -1):
                c[k] -= c[k - n]
    coeffs = {8 * k + 1: v for k, v in enumerate(c) if v and 8 * k + 1 < trunc}
    return QSeries._raw(coeffs, trunc, 8)


def s3_direct(m: int, trunc: int) -> QSeries:
    """sum over a = 1 (mod 4) of a^m q^(a^2/8), i.e. lattice index a^2 on the 1/8 lattice."""
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be an odd positive integer")
    coeffs: dict[int, Coeff] = {}
    k = 0
    while True:
        a = (-1) ** k * (2 * k + 1)  # 1, -3, 5, -7, ...
        if a * a >= trunc:
            break
        coeffs[a * a] = a**m
        k += 1
    return QSeries._raw(coeffs, max(trunc, 0), 8)


def theta4_deriv_direct(order: int, trunc: int) -> QSeries:
    """The 2nu-th z-derivative at z = 0 of 1 + 2 sum (-1)^n q^(n^2) cos(2nz)."""
    if order < 0 or order % 2:
        raise ValueError("theta_4 is even in z: only even derivative orders are nonzero")
    nu = order // 2
    coeffs: dict[int, Coeff] = {}
    if nu == 0 and trunc > 0:
        coeffs[0] = 1
    sign = (-1) ** nu
    n = 1
    while n * n < trunc:
        coeffs[n * n] = 2 * sign * (-1) ** n * (2 * n) ** order
        n += 1
    return QSeries._raw(coeffs, max(trunc, 0), 1)
