"""Eisenstein series E_{2n} and Lambert series Phi_{2n-1} as polynomials in Q and R.

The trusted route is an isobaric ansatz: write E_{2n} as an unknown
combination of the monomials Q^a R^b of weight 2n, match q-coefficients
against the directly expanded Eisenstein series and solve the exact linear
system.  Ten coefficients beyond the ones used in the solve are then checked.

:func:`eisenstein_recursion` is an independent, experimental route through
Ramanujan's quadratic recursion; it is only ever compared, never trusted.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import bernoulli, binomial
from .graded_poly import ONE, ZERO, GradedPoly, P, Q, R
from .qseries import eisenstein_Q, eisenstein_R, eisenstein_series

VALIDATION_MARGIN = 10

__all__ = [
    "EisensteinSolveError",
    "AnsatzSolution",
    "EisensteinEntry",
    "RecursionComparison",
    "weight_monomials",
    "solve_eisenstein",
    "eisenstein_poly",
    "phi_poly",
    "eisenstein_entry",
    "eisenstein_recursion",
    "compare_recursion",
]


class EisensteinSolveError(RuntimeError):
    """The ansatz system was singular or failed validation; this is always a bug."""


@dataclass(frozen=True)
class AnsatzSolution:
    weight: int
    monomials: tuple[tuple[int, int], ...]  # (a, b) for Q^a R^b
    poly: GradedPoly
    solved_coefficients: int
    validated_coefficients: int


@dataclass(frozen=True)
class EisensteinEntry:
    weight: int
    e_poly: GradedPoly
    phi_poly: GradedPoly


def weight_monomials(two_n: int) -> list[tuple[int, int]]:
    """Exponent pairs (a, b) with 4a + 6b = two_n, largest power of Q first."""
    return [(a, (two_n - 4 * a) // 6) for a in range(two_n // 4, -1, -1) if (two_n - 4 * a) % 6 == 0]


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals for a square system."""
    n = len(rows)
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise EisensteinSolveError(f"singular ansatz system at column {col}")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@functools.lru_cache(maxsize=None)
def solve_eisenstein(two_n: int) -> AnsatzSolution:
    if two_n < 4 or two_n % 2:
        raise ValueError("ansatz weights are even and >= 4")
    mons = weight_monomials(two_n)
    k = len(mons)
    trunc = k + VALIDATION_MARGIN
    target = eisenstein_series(two_n, trunc)
    q_ser, r_ser = eisenstein_Q(trunc), eisenstein_R(trunc)
    mon_series = [(q_ser**a) * (r_ser**b) for a, b in mons]
    rows = [[Fraction(s[i]) for s in mon_series] for i in range(trunc)]
    rhs = [target[i] for i in range(trunc)]
    x = _solve_exact(rows[:k], rhs[:k])
    for i in range(k, trunc):
        lhs = sum((c * v for c, v in zip(rows[i], x)), Fraction(0))
        if lhs != rhs[i]:
            raise EisensteinSolveError(
                f"weight {two_n}: ansatz disagrees with the series at q^{i} ({lhs} != {rhs[i]})"
            )
    poly = sum((c * Q**a * R**b for c, (a, b) in zip(x, mons)), ZERO)
    return AnsatzSolution(two_n, tuple(mons), poly, k, trunc - k)


@functools.lru_cache(maxsize=None)
def eisenstein_poly(two_n: int) -> GradedPoly:
    """E_{2n} as an isobaric polynomial: P, Q, R for weights 2, 4, 6, else solved in Q and R."""
    if two_n < 2 or two_n % 2:
        raise ValueError(f"weight must be even and >= 2, got {two_n}")
    if two_n == 2:
        return P
    if two_n == 4:
        return Q
    if two_n == 6:
        return R
    return solve_eisenstein(two_n).poly


@functools.lru_cache(maxsize=None)
def phi_poly(k: int) -> GradedPoly:
    """Phi_k = sum n^k q^n / (1 - q^n) for odd k, in terms of P (k = 1) or Q and R."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"Phi index must be odd and >= 1, got {k}")
    if k == 1:
        return (ONE - P) / 24
    two_n = k + 1
    return (ONE - eisenstein_poly(two_n)) * (bernoulli(two_n) / (2 * two_n))


def eisenstein_entry(two_n: int) -> EisensteinEntry:
    return EisensteinEntry(two_n, eisenstein_poly(two_n), phi_poly(two_n - 1))


# -- experimental quadratic recursion ----------------------------------------

def _s1_scale(two_m: int) -> Fraction:
    # S_{1,2m} = (-1)^(m-1) B_{2m} / (4m) * E_{2m}
    m = two_m // 2
    return (-1) ** (m - 1) * bernoulli(two_m) / (4 * m)


@functools.lru_cache(maxsize=None)
def _recursion_e(two_m: int) -> GradedPoly:
    if two_m == 4:
        return Q
    if two_m == 6:
        return R
    return eisenstein_recursion(two_m - 2)


def eisenstein_recursion(n: int) -> GradedPoly:
    """E_{n+2} from Ramanujan's quadratic recursion in the S_{1,2m} normalisation.

    Seeds are E_4 = Q and E_6 = R; every lower weight is produced by the
    recursion itself, so the result shares nothing with :func:`eisenstein_poly`
    beyond Bernoulli numbers.  The symbol S_{1,2m} is read as
    (-1)^(m-1) B_{2m}/(4m) E_{2m}, the only normalisation given for it.
    A sum term is halved when its index equals (n-2)/4.
    """
    if n % 2 or n <= 4:
        raise ValueError("recursion needs an even n > 4")

    def s1(two_m: int) -> GradedPoly:
        return _recursion_e(two_m) * _s1_scale(two_m)

    total = s1(4) * s1(n - 2) * (-20 * binomial(n - 2, 2))
    top = (n - 2) // 4
    for k in range(1, top + 1):
        c = Fraction(binomial(n - 2, 2 * k) * ((n + 3 - 5 * k) * (n - 8 - 5 * k) - 5 * (k - 2) * (k + 3)))
        if k == top and (n - 2) % 4 == 0:
            c /= 2
        total = total + s1(2 * k + 2) * s1(n - 2 * k) * c
    lhs_factor = -Fraction((n + 2) * (n + 3), 2 * n * (n - 1))
    s_top = total / lhs_factor
    return s_top / _s1_scale(n + 2)


@dataclass(frozen=True)
class RecursionComparison:
    n: int
    weight: int
    recursion_poly: GradedPoly
    ansatz_poly: GradedPoly

    @property
    def agrees(self) -> bool:
        return self.recursion_poly == self.ansatz_poly

    @property
    def difference(self) -> GradedPoly:
        return self.recursion_poly - self.ansatz_poly

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weight": self.weight,
            "agrees": self.agrees,
            "recursion": self.recursion_poly.to_json(),
            "ansatz": self.ansatz_poly.to_json(),
        }


def compare_recursion(n: int) -> RecursionComparison:
    return RecursionComparison(n, n + 2, eisenstein_recursion(n), eisenstein_poly(n + 2))
