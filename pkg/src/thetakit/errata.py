"""Printed closed forms and identities from the source literature that the oracle refutes.

Each finding re-states the printed value verbatim, evaluates it exactly and
records the evidence.  ``refuted`` is computed, not asserted: if a future
change made a printed value pass, the report would say so.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_arith import bernoulli, binomial, rational_to_str
from .graded_poly import ONE, ZERO, GradedPoly, P, Q, R
from .eisenstein_table import phi_poly
from .theta1_derivatives import s3_coeff_poly
from .theta4_derivatives import theta4_ratio_poly
from .verifier import verify_theta1, verify_theta4

__all__ = [
    "ErratumFinding",
    "PRINTED_S3_9",
    "printed_s3_recurrence_poly",
    "sine_product_derivative",
    "errata_report",
]

# S3(9) as printed: (1/9) eta^3 (35P^4 - 84P^2Q - 12Q^2 + 64PR)
PRINTED_S3_9 = (35 * P**4 - 84 * P**2 * Q - 12 * Q**2 + 64 * P * R) / 9


@dataclass(frozen=True)
class ErratumFinding:
    id: str
    description: str
    printed: str
    corrected: str
    refuted: bool
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "printed": self.printed,
            "corrected": self.corrected,
            "refuted": self.refuted,
            "evidence": self.evidence,
        }


@functools.lru_cache(maxsize=None)
def printed_s3_recurrence_poly(nu: int) -> GradedPoly:
    """c_nu from the S3 recurrence with its printed signs.

    (1 - 1/(2nu+1)) S3(2nu+1) = -sum_n |B_{n+1}|/(n+1) 2^{n+1} C(2nu, n) S3(2nu-n)
                                 - 2 sum_l C(2nu, 2l-1) 2^{2l} S3(2(nu-l)+1) Phi_{2l-1}
    Lower S3 values come from the same printed recurrence.
    """
    if nu == 0:
        return ONE
    acc = ZERO
    for n in range(1, 2 * nu):
        b = abs(bernoulli(n + 1))
        if b:
            acc = acc - printed_s3_recurrence_poly((2 * nu - n - 1) // 2) * (
                b / (n + 1) * 2 ** (n + 1) * binomial(2 * nu, n)
            )
    for l in range(1, nu + 1):
        acc = acc - phi_poly(2 * l - 1) * printed_s3_recurrence_poly(nu - l) * (
            2 * binomial(2 * nu, 2 * l - 1) * 2 ** (2 * l)
        )
    return acc / (1 - Fraction(1, 2 * nu + 1))


def _sin_taylor(c: int, n_terms: int) -> list[Fraction]:
    out = [Fraction(0)] * n_terms
    for k in range(1, n_terms, 2):
        out[k] = Fraction((-1) ** ((k - 1) // 2) * c**k, math.factorial(k))
    return out


def sine_product_derivative(n: int, m: int, nu: int) -> Fraction:
    """d^{2nu}/dz^{2nu} [sin(2nz) sin((2m+1)z)] at z = 0, by multiplying Taylor series."""
    size = 2 * nu + 1
    a, b = _sin_taylor(2 * n, size), _sin_taylor(2 * m + 1, size)
    coeff = sum((a[i] * b[2 * nu - i] for i in range(2 * nu + 1)), Fraction(0))
    return coeff * math.factorial(2 * nu)


def _printed_sine_product_derivative(n: int, m: int, nu: int) -> Fraction:
    # both bracketed powers are (2m+1-2n)^{2nu}
    x = (2 * m + 1 - 2 * n) ** (2 * nu)
    return Fraction((-1) ** nu, 2) * (x - x)


def errata_report(window: int = 200) -> list[ErratumFinding]:
    findings = []

    printed = verify_theta1(4, window, PRINTED_S3_9)
    fixed = verify_theta1(4, window)
    findings.append(
        ErratumFinding(
            "s3_9_denominator",
            "Closed form of S3(9) is printed with denominator 9; the leading coefficient must be 1, "
            "which forces denominator 3.",
            "S3(9) = (1/9) eta^3 (35P^4 - 84P^2Q - 12Q^2 + 64PR)",
            "S3(9) = (1/3) eta^3 (35P^4 - 84P^2Q - 12Q^2 + 64PR)",
            not printed.ok and fixed.ok,
            {"printed": printed.to_json(), "corrected": fixed.to_json()},
        )
    )

    unsigned = verify_theta4(2, min(window, 100), theta4_ratio_poly(2, sign_corrected=False))
    signed = verify_theta4(2, min(window, 100))
    findings.append(
        ErratumFinding(
            "theta4_log_derivative_sign",
            "The even log-derivatives of theta_4 at 0 are printed without the factor (-1)^(nu-1) "
            "produced by the odd derivatives of sin(2nz); the fourth derivative comes out with the wrong sign.",
            "L_{2nu} = 2*4^nu (Phi_{2nu-1}(q) - Phi_{2nu-1}(q^2))",
            "L_{2nu} = (-1)^(nu-1) 2*4^nu (Phi_{2nu-1}(q) - Phi_{2nu-1}(q^2))",
            not unsigned.ok and signed.ok,
            {"printed": unsigned.to_json(), "corrected": signed.to_json()},
        )
    )

    lit = printed_s3_recurrence_poly(1)
    lit_report = verify_theta1(1, window, lit)
    findings.append(
        ErratumFinding(
            "s3_recurrence_signs",
            "The S3 recurrence as printed gives S3(3) = -eta^3 (1 + 24 Phi_1) instead of eta^3 P.",
            f"S3(3)/eta^3 = {lit}",
            f"S3(3)/eta^3 = {s3_coeff_poly(1)}",
            lit != s3_coeff_poly(1) and not lit_report.ok,
            {"printed": lit_report.to_json(), "corrected": verify_theta1(1, window).to_json()},
        )
    )

    samples = [(n, m, nu) for nu in (1, 2) for n in (1, 2) for m in (0, 1)]
    worst = max(samples, key=lambda s: abs(sine_product_derivative(*s)))
    actual = sine_product_derivative(*worst)
    findings.append(
        ErratumFinding(
            "sine_product_derivative_degenerate",
            "The even derivative of sin(2nz) sin((2m+1)z) at 0 is printed as a difference of two "
            "identical powers, i.e. identically 0.",
            "(-1)^nu/2 [(2m+1-2n)^{2nu} - (2m+1-2n)^{2nu}]",
            "(-1)^nu/2 [(2m+1-2n)^{2nu} - (2m+1+2n)^{2nu}]",
            actual != _printed_sine_product_derivative(*worst),
            {
                "n": worst[0],
                "m": worst[1],
                "nu": worst[2],
                "printed_value": rational_to_str(_printed_sine_product_derivative(*worst)),
                "actual_value": rational_to_str(actual),
            },
        )
    )
    return findings
