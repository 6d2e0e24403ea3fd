"""Exact q-series verification of the closed forms.

Each check builds two series that share no construction beyond QSeries
arithmetic: the left side straight from a defining series (lacunary theta
sums, divisor sums), the right side by substituting Eisenstein series into
the closed-form polynomial (times the eta^3 product or theta_4(0) where
needed).  The first ``window`` lattice slots, zeros included, must agree.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact_arith import rational_to_str
from .graded_poly import GradedPoly
from .qseries import (
    QSeries,
    eisenstein_P,
    eisenstein_Q,
    eisenstein_R,
    eisenstein_series,
    eta_cubed_product,
    phi_series,
    s3_direct,
    theta4_deriv_direct,
)

__all__ = [
    "TruncationError",
    "Mismatch",
    "VerificationReport",
    "compare_series",
    "substitute_series",
    "verify_theta1",
    "verify_theta4",
    "verify_phi",
    "verify_eisenstein",
    "verify",
]


class TruncationError(ValueError):
    """A series is not known far enough to fill the requested window."""


@dataclass(frozen=True)
class Mismatch:
    index: int
    denom: int
    lhs: Fraction
    rhs: Fraction

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.index, self.denom)

    def to_json(self) -> dict:
        return {
            "exponent": rational_to_str(self.exponent),
            "lhs": rational_to_str(self.lhs),
            "rhs": rational_to_str(self.rhs),
        }


@dataclass(frozen=True)
class VerificationReport:
    target: str
    order: int
    window: int
    first_mismatch: Optional[Mismatch] = None

    def __post_init__(self) -> None:
        if self.window <= 0:
            raise ValueError("window must be positive")

    @property
    def verdict(self) -> str:
        return "match" if self.first_mismatch is None else "mismatch"

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "order": self.order,
            "window": self.window,
            "verdict": self.verdict,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_json(),
        }


def compare_series(lhs: QSeries, rhs: QSeries, window: int) -> Optional[Mismatch]:
    """First lattice slot below ``window`` where the series differ, or None."""
    if window < 1:
        raise ValueError("window must be >= 1")
    if lhs.denom != rhs.denom:
        raise ValueError("series live on different lattices")
    for s, side in ((lhs, "left"), (rhs, "right")):
        if s.trunc < window:
            raise TruncationError(
                f"{side} series known to index {s.trunc}, window needs {window}"
            )
    for i in range(window):
        a, b = lhs[i], rhs[i]
        if a != b:
            return Mismatch(i, lhs.denom, a, b)
    return None


@functools.lru_cache(maxsize=32)
def _generator_series(trunc: int) -> tuple[QSeries, ...]:
    half = (trunc + 1) // 2
    level1 = (eisenstein_P(trunc), eisenstein_Q(trunc), eisenstein_R(trunc))
    level2 = tuple(
        f(half).substitute_power(2).truncate(trunc) for f in (eisenstein_P, eisenstein_Q, eisenstein_R)
    )
    return level1 + level2


def substitute_series(poly: GradedPoly, trunc: int) -> QSeries:
    """The d = 1 series of ``poly`` with P, Q, R at q and P2, Q2, R2 at q^2."""
    # integer arithmetic inside the convolutions, one rational scale at the end
    scale, prim = poly.content()
    return prim.evaluate(_generator_series(trunc), QSeries.one(trunc)).scale(scale)


def verify_theta1(nu: int, window: int = 200, poly: GradedPoly | None = None) -> VerificationReport:
    """S3(2nu+1) against eta^3 * c_nu(P, Q, R) on the 1/8 lattice."""
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    if poly is None:
        from .theta1_derivatives import s3_coeff_poly

        poly = s3_coeff_poly(nu)
    lhs = s3_direct(2 * nu + 1, window)
    # eta^3 starts at index 1, so c_nu is needed to lattice index window - 1
    int_trunc = (window - 1 + 7) // 8 + 1
    rhs = eta_cubed_product(window) * substitute_series(poly, int_trunc).relattice(8)
    return VerificationReport("theta1", 2 * nu + 1, window, compare_series(lhs, rhs, window))


def verify_theta4(nu: int, window: int = 100, poly: GradedPoly | None = None) -> VerificationReport:
    """theta_4^(2nu)(0) against theta_4(0) * r_{2nu} on the integer lattice."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if poly is None:
        from .theta4_derivatives import theta4_ratio_poly

        poly = theta4_ratio_poly(nu)
    lhs = theta4_deriv_direct(2 * nu, window)
    rhs = theta4_deriv_direct(0, window) * substitute_series(poly, window)
    return VerificationReport("theta4", 2 * nu, window, compare_series(lhs, rhs, window))


def verify_phi(k: int, window: int = 60, poly: GradedPoly | None = None) -> VerificationReport:
    if k < 1 or k % 2 == 0:
        raise ValueError("Phi index must be odd and >= 1")
    if poly is None:
        from .eisenstein_table import phi_poly

        poly = phi_poly(k)
    lhs = phi_series(k, window)
    return VerificationReport("phi", k, window, compare_series(lhs, substitute_series(poly, window), window))


def verify_eisenstein(two_n: int, window: int = 60, poly: GradedPoly | None = None) -> VerificationReport:
    if two_n < 2 or two_n % 2:
        raise ValueError("weight must be even and >= 2")
    if poly is None:
        from .eisenstein_table import eisenstein_poly

        poly = eisenstein_poly(two_n)
    lhs = eisenstein_series(two_n, window)
    return VerificationReport(
        "eisenstein", two_n, window, compare_series(lhs, substitute_series(poly, window), window)
    )


def verify(target: str, order: int, window: int) -> VerificationReport:
    """Dispatch by target name; ``order`` is the derivative order, Phi index or weight."""
    if target == "theta1":
        if order < 1 or order % 2 == 0:
            raise ValueError("theta1 derivative order must be odd and >= 1")
        return verify_theta1((order - 1) // 2, window)
    if target == "theta4":
        if order < 2 or order % 2:
            raise ValueError("theta4 derivative order must be even and >= 2")
        return verify_theta4(order // 2, window)
    if target == "phi":
        return verify_phi(order, window)
    if target == "eisenstein":
        return verify_eisenstein(order, window)
    raise ValueError(f"unknown target {target!r}")
