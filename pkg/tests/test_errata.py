import json
from fractions import Fraction

from thetakit.errata import (
    PRINTED_S3_9,
    errata_report,
    printed_s3_recurrence_poly,
    sine_product_derivative,
)
from thetakit.graded_poly import P

from goldens import S3_9_PRINTED


def test_expected_findings_are_refuted():
    findings = {f.id: f for f in errata_report(200)}
    assert set(findings) == {
        "s3_9_denominator",
        "theta4_log_derivative_sign",
        "s3_recurrence_signs",
        "sine_product_derivative_degenerate",
    }
    assert all(f.refuted for f in findings.values())
    ev = findings["s3_9_denominator"].evidence
    assert ev["printed"]["first_mismatch"] == {"exponent": "1/8", "lhs": "1/1", "rhs": "1/3"}
    assert ev["corrected"]["verdict"] == "match"
    json.dumps([f.to_json() for f in findings.values()])


def test_printed_transcription():
    assert PRINTED_S3_9 == S3_9_PRINTED


def test_printed_recurrence_gives_p_minus_2():
    # -(1 + 24 Phi_1) with Phi_1 = (1 - P)/24
    assert printed_s3_recurrence_poly(1) == P - 2


def test_sine_product_closed_form():
    # product-to-sum: (-1)^nu/2 [(2m+1-2n)^{2nu} - (2m+1+2n)^{2nu}]
    for n in range(1, 4):
        for m in range(0, 3):
            for nu in range(1, 4):
                a, b = 2 * m + 1 - 2 * n, 2 * m + 1 + 2 * n
                expected = Fraction((-1) ** nu, 2) * (a ** (2 * nu) - b ** (2 * nu))
                assert sine_product_derivative(n, m, nu) == expected
    assert sine_product_derivative(1, 0, 1) == 4
