"""Exact closed forms for derivatives of the Jacobi theta functions at the origin.

theta_1^(2nu+1)(0) and theta_4^(2nu)(0) are expressed as isobaric polynomials in
Ramanujan's Eisenstein series P, Q, R (and P2, Q2, R2 at q^2), and every closed
form can be checked against direct q-series expansions.
"""

from .exact_arith import bernoulli, binomial, partition_multiplicities
from .graded_poly import GradedPoly, P, Q, R, P2, Q2, R2
from .qseries import QSeries
from .eisenstein_table import eisenstein_poly, phi_poly
from .theta1_derivatives import s3_coeff_poly, theta1_closed_form
from .theta4_derivatives import theta4_closed_form, theta4_ratio_poly
from .verifier import verify_eisenstein, verify_phi, verify_theta1, verify_theta4

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memoized closed form and series (used for cold-start timings)."""
    from . import eisenstein_table, theta1_derivatives, theta4_derivatives, verifier, errata

    for fn in (
        eisenstein_table.solve_eisenstein,
        eisenstein_table.eisenstein_poly,
        eisenstein_table.phi_poly,
        eisenstein_table._recursion_e,
        theta1_derivatives.s3_coeff_poly,
        theta4_derivatives.log_theta4_deriv_poly,
        theta4_derivatives.theta4_ratio_poly,
        verifier._generator_series,
        errata.printed_s3_recurrence_poly,
    ):
        fn.cache_clear()
