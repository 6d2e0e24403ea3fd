import json
from fractions import Fraction

import pytest

from thetakit.graded_poly import P, Q, R, evaluate_all_ones, weight_of
from thetakit.theta1_derivatives import (
    Theta1ClosedForm,
    b_coefficients,
    s3_coeff_poly,
    theta1_closed_form,
)
from thetakit.verifier import verify_theta1

from goldens import S3_9_CORRECT, S3_9_PRINTED, S3_PRINTED


@pytest.mark.parametrize("nu", sorted(S3_PRINTED))
def test_printed_closed_forms(nu):
    assert s3_coeff_poly(nu) == S3_PRINTED[nu]


def test_nu4_denominator():
    assert s3_coeff_poly(4) == S3_9_CORRECT
    assert s3_coeff_poly(4) != S3_9_PRINTED
    assert evaluate_all_ones(S3_9_PRINTED) == Fraction(1, 3)


@pytest.mark.parametrize("nu", range(0, 13))
def test_weight_and_normalization(nu):
    c = s3_coeff_poly(nu)
    assert weight_of(c) == 2 * nu
    assert evaluate_all_ones(c) == 1
    assert c.uses_only("PQR")
    for (i, j, k) in b_coefficients(nu):
        assert i + 2 * j + 3 * k == nu


@pytest.mark.parametrize("nu", range(0, 11))
def test_oracle(nu):
    report = verify_theta1(nu, 200)
    assert report.verdict == "match", report.to_json()


def test_b_coefficients():
    assert b_coefficients(0) == {(0, 0, 0): 1}
    assert b_coefficients(2) == {(2, 0, 0): Fraction(5, 3), (0, 1, 0): Fraction(-2, 3)}
    assert b_coefficients(3) == {
        (3, 0, 0): Fraction(35, 9),
        (1, 1, 0): Fraction(-14, 3),
        (0, 0, 1): Fraction(16, 9),
    }


class TestClosedForm:
    def test_bundles(self):
        f0 = theta1_closed_form(0)
        assert (f0.sign_factor, f0.prefactor, f0.coeff_poly) == (2, "eta_cubed", 1)
        f4 = theta1_closed_form(4)
        assert f4.sign_factor == 2 and f4.coeff_poly == S3_9_CORRECT
        f5 = theta1_closed_form(5)
        assert f5.sign_factor == -2 and f5.coeff_poly == S3_PRINTED[5]

    def test_render(self):
        assert theta1_closed_form(0).render() == "θ₁^(1)(0) = 2·η³"
        assert theta1_closed_form(2).render("latex") == "\\vartheta_1^{(5)}(0)=2\\cdot\\frac{1}{3}\\eta^3(5P^2-2Q)"
        assert theta1_closed_form(1).render() == "θ₁^(3)(0) = -2·η³·(P)"
        assert "(1/9)(385*P^5" in theta1_closed_form(5).render()

    def test_json(self):
        data = json.loads(theta1_closed_form(3).render("json"))
        assert data["kind"] == "theta1" and data["nu"] == 3 and data["sign"] == -2
        assert data["prefactor"] == "eta^3"
        assert Theta1ClosedForm.from_json(data) == theta1_closed_form(3)

    def test_negative_nu(self):
        with pytest.raises(ValueError):
            s3_coeff_poly(-1)
