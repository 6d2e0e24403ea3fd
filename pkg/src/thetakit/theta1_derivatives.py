"""Odd derivatives of theta_1 at the origin.

With S3(m) = sum_{a = 1 mod 4} a^m q^(a^2/8) we have S3(2nu+1) = eta^3 c_nu(P, Q, R)
for an isobaric polynomial c_nu of weight 2nu, and
theta_1^(2nu+1)(0) = 2 (-1)^nu S3(2nu+1).

The c_nu come from differentiating theta_1' = theta_1 (cot z + 4 sum g_n sin 2nz),
g_n = q^n / (1 - q^n), 2nu times at z = 0:

    (2nu/(2nu+1)) c_nu = sum_k B_{2k} 2^{2k}/(2k) C(2nu, 2k-1) c_{nu-k}
                         - 2 sum_l C(2nu, 2l-1) 2^{2l} Phi_{2l-1} c_{nu-l}
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import bernoulli, binomial
from .graded_poly import ONE, ZERO, GradedPoly, human_factored, latex_scale, render_latex_integer
from .eisenstein_table import phi_poly

__all__ = ["Theta1ClosedForm", "s3_coeff_poly", "theta1_closed_form", "b_coefficients"]


@functools.lru_cache(maxsize=None)
def s3_coeff_poly(nu: int) -> GradedPoly:
    """c_nu with S3(2nu+1) = eta^3 * c_nu(P, Q, R)."""
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    if nu == 0:
        return ONE
    two_nu = 2 * nu
    acc = ZERO
    for k in range(1, nu + 1):
        c = bernoulli(2 * k) * 2 ** (2 * k) / (2 * k) * binomial(two_nu, 2 * k - 1)
        acc = acc + s3_coeff_poly(nu - k) * c
    for l in range(1, nu + 1):
        c = -2 * binomial(two_nu, 2 * l - 1) * 2 ** (2 * l)
        acc = acc + phi_poly(2 * l - 1) * s3_coeff_poly(nu - l) * c
    return acc * Fraction(two_nu + 1, two_nu)


def b_coefficients(nu: int) -> dict[tuple[int, int, int], Fraction]:
    """(i, j, k) -> b_ijk, the coefficient of P^i Q^j R^k in c_nu; always i + 2j + 3k = nu."""
    return {k[:3]: c for k, c in s3_coeff_poly(nu).terms.items()}


@dataclass(frozen=True)
class Theta1ClosedForm:
    """theta_1^(2nu+1)(0) = sign_factor * eta^3 * coeff_poly."""

    nu: int
    coeff_poly: GradedPoly
    sign_factor: int
    prefactor: str = "eta_cubed"

    @property
    def order(self) -> int:
        return 2 * self.nu + 1

    def to_json(self) -> dict:
        return {
            "kind": "theta1",
            "nu": self.nu,
            "sign": self.sign_factor,
            "prefactor": "eta^3",
            "poly": self.coeff_poly.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Theta1ClosedForm":
        if data.get("kind") != "theta1":
            raise ValueError("not a theta1 closed form")
        return cls(int(data["nu"]), GradedPoly.from_json(data["poly"]), int(data["sign"]))

    def render(self, fmt: str = "human") -> str:
        if fmt == "json":
            return json.dumps(self.to_json())
        if fmt == "human":
            lhs = f"θ₁^({self.order})(0)"
            body = f"{self.sign_factor}·η³"
            if self.coeff_poly != ONE:
                body += f"·{_paren(human_factored(self.coeff_poly))}"
            return f"{lhs} = {body}"
        if fmt == "latex":
            lhs = "\\vartheta_1'(0)" if self.nu == 0 else f"\\vartheta_1^{{({self.order})}}(0)"
            scale, prim = self.coeff_poly.content()
            sign = str(self.sign_factor)
            if self.coeff_poly == ONE:
                return f"{lhs}={sign}\\eta^3"
            inner = render_latex_integer(prim)
            return f"{lhs}={sign}\\cdot{latex_scale(scale)}\\eta^3({inner})"
        raise ValueError(f"unknown format {fmt!r}")


def _paren(s: str) -> str:
    return s if s.startswith("(") else f"({s})"


def theta1_closed_form(nu: int) -> Theta1ClosedForm:
    return Theta1ClosedForm(nu, s3_coeff_poly(nu), 2 * (-1) ** nu)
