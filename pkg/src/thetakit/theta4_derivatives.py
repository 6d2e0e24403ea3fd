"""Even derivatives of theta_4 at the origin, relative to theta_4(0).

From theta_4'/theta_4 = 4 sum q^n sin(2nz) / (1 - q^{2n}) the even
log-derivatives at z = 0 are

    L_{2nu} = (-1)^(nu-1) 2 4^nu (Phi_{2nu-1}(q) - Phi_{2nu-1}(q^2)),

and theta_4(z)/theta_4(0) = exp(sum_k L_{2k} z^{2k}/(2k)!) turns them into the
ratios r_{2nu} = theta_4^(2nu)(0)/theta_4(0) through a sum over partitions
of nu.  The inverse direction (log of the ratio series, Faa di Bruno with
f = log) is kept as an independent consistency check.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .exact_arith import MultiplicityVector, partition_multiplicities
from .graded_poly import ONE, ZERO, GradedPoly, human_factored, latex_scale, render_latex_integer
from .eisenstein_table import phi_poly

__all__ = [
    "Theta4ClosedForm",
    "IdenticallyZero",
    "log_theta4_deriv_poly",
    "bell_terms",
    "faa_di_bruno_log_terms",
    "faa_di_bruno_log_relation",
    "theta4_ratio_poly",
    "theta4_closed_form",
    "theta4_derivative",
]


@functools.lru_cache(maxsize=None)
def log_theta4_deriv_poly(nu: int, sign_corrected: bool = True) -> GradedPoly:
    """L_{2nu} = d^{2nu}/dz^{2nu} log theta_4(z) at z = 0.

    ``sign_corrected=False`` drops the (-1)^(nu-1) coming from the odd
    derivatives of sin(2nz); that variant is wrong for even nu and exists
    only so the discrepancy can be demonstrated.
    """
    if nu < 1:
        raise ValueError("nu must be >= 1")
    phi = phi_poly(2 * nu - 1)
    sign = (-1) ** (nu - 1) if sign_corrected else 1
    return (phi - phi.to_level2()) * (sign * 2 * 4**nu)


def bell_terms(nu: int) -> list[tuple[Fraction, MultiplicityVector]]:
    """Coefficients of r_{2nu} = sum coeff * prod L_{2k}^{m_k} over partitions of nu."""
    out = []
    for mv in partition_multiplicities(nu):
        c = Fraction(math.factorial(2 * nu))
        for k, mk in mv.items():
            c /= math.factorial(2 * k) ** mk * math.factorial(mk)
        out.append((c, mv))
    return out


def faa_di_bruno_log_terms(nu: int) -> list[tuple[Fraction, MultiplicityVector]]:
    """Coefficients of L_{2nu} = sum coeff * prod r_{2k}^{m_k} over partitions of nu.

    Faa di Bruno for log(g) with g(0) = 1: only even derivatives of g survive,
    so a partition of 2nu into even parts 2k (multiplicity m_k) is a partition
    of nu, and the outer factor is log^{(M)}(1) = (-1)^(M-1) (M-1)!, M = sum m_k.
    """
    out = []
    for mv in partition_multiplicities(nu):
        M = mv.parts
        c = Fraction(math.factorial(2 * nu) * (-1) ** (M - 1) * math.factorial(M - 1))
        for k, mk in mv.items():
            c /= math.factorial(mk) * math.factorial(2 * k) ** mk
        out.append((c, mv))
    return out


def _combine(
    terms: list[tuple[Fraction, MultiplicityVector]], factor: Callable[[int], GradedPoly]
) -> GradedPoly:
    acc = ZERO
    for c, mv in terms:
        t = ONE * c
        for k, mk in mv.items():
            t = t * factor(k) ** mk
        acc = acc + t
    return acc


def faa_di_bruno_log_relation(
    nu: int, ratios: Callable[[int], GradedPoly] | None = None
) -> GradedPoly:
    """L_{2nu} rebuilt from the ratio polynomials r_{2k}, k <= nu (defaults to :func:`theta4_ratio_poly`)."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    return _combine(faa_di_bruno_log_terms(nu), ratios or theta4_ratio_poly)


@functools.lru_cache(maxsize=None)
def theta4_ratio_poly(nu: int, sign_corrected: bool = True) -> GradedPoly:
    """r_{2nu} = theta_4^(2nu)(0) / theta_4(0) in P, Q, R, P2, Q2, R2."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    return _combine(bell_terms(nu), lambda k: log_theta4_deriv_poly(k, sign_corrected))


@dataclass(frozen=True)
class Theta4ClosedForm:
    """theta_4^(2nu)(0) = w * ratio_poly, where w stands for theta_4(0, q)."""

    nu: int
    ratio_poly: GradedPoly
    prefactor: str = "w"

    @property
    def order(self) -> int:
        return 2 * self.nu

    def to_json(self) -> dict:
        return {
            "kind": "theta4",
            "nu": self.nu,
            "prefactor": "theta4_at_0",
            "poly": self.ratio_poly.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Theta4ClosedForm":
        if data.get("kind") != "theta4":
            raise ValueError("not a theta4 closed form")
        return cls(int(data["nu"]), GradedPoly.from_json(data["poly"]))

    def render(self, fmt: str = "human") -> str:
        if fmt == "json":
            return json.dumps(self.to_json())
        if fmt == "human":
            body = human_factored(self.ratio_poly)
            if not body.startswith("("):
                body = f"({body})"
            return f"θ₄^({self.order})(0) = {body}·w"
        if fmt == "latex":
            scale, prim = self.ratio_poly.content()
            inner = render_latex_integer(prim)
            return f"\\vartheta_4^{{({self.order})}}(0)={latex_scale(scale)}({inner})w"
        raise ValueError(f"unknown format {fmt!r}")


@dataclass(frozen=True)
class IdenticallyZero:
    """Answer for odd derivative orders: theta_4 is even in z."""

    order: int

    def to_json(self) -> dict:
        return {"kind": "theta4", "order": self.order, "identically_zero": True}

    def render(self, fmt: str = "human") -> str:
        if fmt == "json":
            return json.dumps(self.to_json())
        if fmt == "latex":
            return f"\\vartheta_4^{{({self.order})}}(0)=0"
        return f"θ₄^({self.order})(0) = 0 (identically zero: theta_4 is even in z)"


def theta4_closed_form(nu: int) -> Theta4ClosedForm:
    return Theta4ClosedForm(nu, theta4_ratio_poly(nu))


def theta4_derivative(order: int) -> Union[Theta4ClosedForm, IdenticallyZero]:
    """Closed form for any positive derivative order; odd orders come back as :class:`IdenticallyZero`."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if order % 2:
        return IdenticallyZero(order)
    return theta4_closed_form(order // 2)
