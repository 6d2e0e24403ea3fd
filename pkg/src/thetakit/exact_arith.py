"""Exact rational arithmetic and the small combinatorial helpers built on it.

Rationals are :class:`fractions.Fraction` throughout; this module adds the
canonical ``"num/den"`` text form, Bernoulli numbers, binomials and the
partition multiplicity vectors used by the Faa di Bruno sums.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "MultiplicityVector",
    "as_rational",
    "rational_to_str",
    "rational_from_str",
    "bernoulli",
    "binomial",
    "partition_multiplicities",
]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return rational_from_str(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rational_to_str(x: RationalLike) -> str:
    """Canonical serialization: lowest terms, sign on the numerator, always ``num/den``."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    """Parse ``"num/den"`` or a bare integer ``"n"``.

    Floats and decimal notation are rejected: they would smuggle rounding in.
    """
    text = s.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        num, den = num.strip(), den.strip()
        if not _is_int_literal(num) or not den.isdigit():
            raise ValueError(f"malformed rational: {s!r}")
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {s!r}")
        return Fraction(int(num), int(den))
    if not _is_int_literal(text):
        raise ValueError(f"malformed rational: {s!r}")
    return Fraction(int(text))


def _is_int_literal(s: str) -> bool:
    body = s[1:] if s[:1] in "+-" else s
    return body.isdigit()


_bernoulli_lock = threading.Lock()
_bernoulli_memo: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2.

    Uses sum_{k=0}^{n} C(n+1, k) B_k = 0, extended as far as needed and memoized.
    """
    if n < 0:
        raise ValueError("bernoulli index must be nonnegative")
    if n >= 3 and n % 2 == 1:
        return Fraction(0)
    with _bernoulli_lock:
        memo = _bernoulli_memo
        while len(memo) <= n:
            m = len(memo)
            if m >= 3 and m % 2 == 1:
                memo.append(Fraction(0))
                continue
            acc = sum((math.comb(m + 1, k) * memo[k] for k in range(m)), Fraction(0))
            memo.append(-acc / (m + 1))
        return memo[n]


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class MultiplicityVector:
    """A partition of ``n`` written as multiplicities: part ``j`` occurs ``m[j-1]`` times."""

    n: int
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.m) != self.n:
            raise ValueError(f"expected {self.n} multiplicities, got {len(self.m)}")
        if any(x < 0 for x in self.m):
            raise ValueError("multiplicities must be nonnegative")
        if sum(j * mj for j, mj in enumerate(self.m, start=1)) != self.n:
            raise ValueError(f"{self.m} is not a partition of {self.n}")

    @property
    def parts(self) -> int:
        """Total number of parts, m_1 + ... + m_n."""
        return sum(self.m)

    def items(self) -> Iterator[tuple[int, int]]:
        """(part size, multiplicity) pairs with nonzero multiplicity."""
        for j, mj in enumerate(self.m, start=1):
            if mj:
                yield j, mj


def partition_multiplicities(n: int) -> list[MultiplicityVector]:
    """All multiplicity vectors of ``n``, in descending lexicographic order of (m_1, ..., m_n).

    For n = 3 this is (3,0,0), (1,1,0), (0,0,1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: list[MultiplicityVector] = []
    prefix = [0] * n

    def fill(j: int, remaining: int) -> None:
        # parts j..n remain to be assigned; j is 1-based
        if j > n:
            if remaining == 0:
                out.append(MultiplicityVector(n, tuple(prefix)))
            return
        for mj in range(remaining // j, -1, -1):
            prefix[j - 1] = mj
            fill(j + 1, remaining - j * mj)
        prefix[j - 1] = 0

    fill(1, n)
    return out
