"""Tests for the structured entire-function family and the s_beta pencil.

Oracles are closed forms: exp(-i pi z) evaluates through the scalar
exponential, polynomial conjugation acts on coefficients, and the
pencil of exp(-i pi z) is sin/cos with known normalization.
"""

import cmath
import math

import numpy as np
import pytest

from debranges import (
    CanonicalProduct,
    ComplexExponential,
    ConfigurationError,
    HypothesisViolationError,
    LinearCombination,
    MalformedFunctionError,
    NotNormalizableError,
    PointwiseProduct,
    Polynomial,
    RemovedZeroQuotient,
    ValidationRejectedError,
    ZeroSequence,
    beta_at,
    normalize_gauge,
    s_beta,
    validate_hermite_biehler,
)
from debranges.functions import (
    HBValidationReport,
    HermiteBiehlerFunction,
    polynomial_coefficients,
)

from conftest import integer_lattice

PW_RATE = np.pi
# -(z+i)^2 = 1 - 2iz - z^2, ascending coefficients
NEG_SQUARE = Polynomial((1.0, -2.0j, -1.0))


def random_points(rng, n=12, box=4.0):
    pts = rng.uniform(-box, box, size=(n, 2))
    return pts[:, 0] + 1j * pts[:, 1]


@pytest.fixture(scope="module")
def pw():
    return normalize_gauge(ComplexExponential(PW_RATE))


@pytest.fixture(scope="module")
def poly():
    return normalize_gauge(NEG_SQUARE)


class TestEvaluation:
    def test_exponential_at_origin(self):
        assert ComplexExponential(PW_RATE)(0.0) == 1.0 + 0.0j

    def test_negative_square_at_origin(self):
        assert NEG_SQUARE(0.0) == 1.0 + 0.0j

    def test_exponential_at_i(self):
        # exp(-i pi i) = exp(pi) = 23.140692632779267
        val = ComplexExponential(PW_RATE)(1.0j)
        assert abs(val - 23.140692632779267) < 1e-12

    def test_vectorized_evaluation(self, rng):
        z = random_points(rng)
        f = ComplexExponential(PW_RATE)
        vals = f(z)
        assert vals.shape == z.shape
        np.testing.assert_allclose(vals, np.exp(-1j * np.pi * z), rtol=1e-13)

    def test_linear_combination(self, rng):
        f = LinearCombination((2.0, -1.0j), (NEG_SQUARE, ComplexExponential(PW_RATE)))
        z = random_points(rng, n=6)
        expected = 2.0 * NEG_SQUARE(z) - 1.0j * np.exp(-1j * np.pi * z)
        np.testing.assert_allclose(f(z), expected, rtol=1e-13)

    def test_pointwise_product(self, rng):
        f = PointwiseProduct(NEG_SQUARE, ComplexExponential(PW_RATE))
        z = random_points(rng, n=6)
        np.testing.assert_allclose(f(z), NEG_SQUARE(z) * np.exp(-1j * np.pi * z),
                                   rtol=1e-13)

    @pytest.mark.parametrize("bad", [
        lambda: ComplexExponential(float("inf")),
        lambda: Polynomial(()),
        lambda: Polynomial((float("nan"),)),
        lambda: LinearCombination((1.0,), ()),
        lambda: LinearCombination((1.0, 2.0), (NEG_SQUARE,)),
    ])
    def test_malformed_constructions_rejected(self, bad):
        with pytest.raises(MalformedFunctionError):
            bad()

    def test_exact_variants_carry_zero_error(self):
        val, err = NEG_SQUARE.evaluate_with_error(1.5 + 0.5j)
        assert err == 0.0
        assert val == NEG_SQUARE(1.5 + 0.5j)

    def test_truncated_product_carries_error_bound(self):
        f = CanonicalProduct(integer_lattice(10_000))
        val, err = f.evaluate_with_error(7.5)
        assert err > 0.0
        assert abs(val - math.sin(math.pi * 7.5) / math.pi) < 1e-6


class TestSharpConjugation:
    def test_exponential_flips_sign(self, rng):
        f = ComplexExponential(PW_RATE).sharp()
        z = random_points(rng, n=6)
        np.testing.assert_allclose(f(z), np.exp(1j * np.pi * z), rtol=1e-13)

    def test_real_polynomial_is_fixed(self, rng):
        p = Polynomial((-1.0, 0.0, 1.0))  # z^2 - 1
        z = random_points(rng, n=6)
        np.testing.assert_allclose(p.sharp()(z), p(z), rtol=1e-14)

    def test_negative_square_maps_to_mirror(self, rng):
        # -(z+i)^2 -> -(z-i)^2 = 1 + 2iz - z^2
        sharp = NEG_SQUARE.sharp()
        assert sharp.coeffs == (1.0 + 0.0j, 2.0j, -1.0 + 0.0j)
        z = random_points(rng, n=6)
        np.testing.assert_allclose(sharp(z), -((z - 1j) ** 2), rtol=1e-13)

    @pytest.mark.parametrize("f", [
        ComplexExponential(PW_RATE),
        NEG_SQUARE,
        LinearCombination((0.5j, 1.0), (NEG_SQUARE, ComplexExponential(2.0))),
        PointwiseProduct(NEG_SQUARE, ComplexExponential(1.0)),
    ])
    def test_sharp_is_involution(self, f, rng):
        z = random_points(rng, n=8)
        np.testing.assert_allclose(f.sharp().sharp()(z), f(z), rtol=1e-12)

    @pytest.mark.parametrize("f", [
        ComplexExponential(PW_RATE),
        NEG_SQUARE,
        PointwiseProduct(NEG_SQUARE, ComplexExponential(1.0)),
    ])
    def test_sharp_equals_reflected_conjugate(self, f, rng):
        # f#(z) = conj(f(conj z)) pointwise
        z = random_points(rng, n=8)
        lhs = f.sharp()(z)
        rhs = np.conj(f(np.conj(z)))
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


class TestDerivatives:
    def test_exponential_derivative(self):
        f = ComplexExponential(PW_RATE)
        z = 0.3
        expected = -1j * np.pi * cmath.exp(-1j * np.pi * z)
        assert abs(f.derivative_at(z) - expected) < 1e-12

    def test_polynomial_derivative_exact(self):
        p = Polynomial((-1.0, 0.0, 1.0))
        assert p.derivative_at(2.0) == 4.0 + 0.0j
        assert p.derivative_at(2.0, order=2) == 2.0 + 0.0j

    def test_product_rule(self):
        f = PointwiseProduct(NEG_SQUARE, ComplexExponential(PW_RATE))
        z = 0.7 + 0.2j
        h = 1e-6
        fd = (f(z + h) - f(z - h)) / (2.0 * h)
        assert abs(f.derivative_at(z) - fd) < 1e-7

    def test_unsupported_order_rejected(self):
        with pytest.raises(ConfigurationError):
            NEG_SQUARE.derivative_at(0.0, order=3)

    def test_canonical_product_derivative_at_member(self):
        f = CanonicalProduct(integer_lattice(10_000))
        assert abs(f.derivative_at(1.0) + 1.0) < 1e-7
        assert abs(f.derivative_at(0.0) - 1.0) < 1e-7


class TestRemovedZeroQuotient:
    def test_far_from_removed_point(self):
        q = RemovedZeroQuotient(Polynomial((-1.0, 0.0, 1.0)), (1.0,))
        # (z^2-1)/(z-1) = z+1
        assert abs(q(3.0) - 4.0) < 1e-12

    def test_taylor_form_at_removed_point(self):
        q = RemovedZeroQuotient(Polynomial((-1.0, 0.0, 1.0)), (1.0,))
        assert abs(q(1.0) - 2.0) < 1e-10
        assert abs(q(1.0 + 1e-7) - (2.0 + 1e-7)) < 1e-9

    def test_sharp_conjugates_removed_points(self, rng):
        q = RemovedZeroQuotient(Polynomial((1.0j, 0.0, 1.0)), (0.5 + 0.2j,))
        z = random_points(rng, n=6)
        np.testing.assert_allclose(q.sharp()(z), np.conj(q(np.conj(z))),
                                   rtol=1e-10)


class TestPolynomialCoefficients:
    def test_recovers_negative_square(self):
        coeffs, residual = polynomial_coefficients(NEG_SQUARE, 2)
        np.testing.assert_allclose(coeffs, [1.0, -2.0j, -1.0], atol=1e-12)
        assert residual < 1e-12

    def test_residual_flags_non_polynomial(self):
        _, residual = polynomial_coefficients(ComplexExponential(PW_RATE), 2)
        assert residual > 1e-3


class TestHermiteBiehlerValidation:
    def test_exponential_accepted_on_named_grid(self):
        report = validate_hermite_biehler(
            ComplexExponential(PW_RATE),
            upper=[1.0j, 1.0 + 1.0j, 2.0j], real=[0.0, 0.5, 1.0])
        assert report.accepted
        # margin attained at height 1: e^pi - e^-pi
        expected = math.exp(math.pi) - math.exp(-math.pi)
        assert abs(report.margin_upper - expected) < 1e-10
        assert report.min_real_modulus == pytest.approx(1.0, abs=1e-12)

    def test_negative_square_accepted(self):
        report = validate_hermite_biehler(NEG_SQUARE, upper=[1.0j], real=[0.0])
        assert report.accepted
        # |e(i)| = 4 while e#(i) = 0
        assert report.margin_upper == pytest.approx(4.0, abs=1e-12)

    def test_real_constant_rejected_with_zero_margin(self):
        report = validate_hermite_biehler(Polynomial((1.0,)))
        assert not report.accepted
        assert report.margin_upper == 0.0

    def test_empty_grid_rejected(self):
        with pytest.raises(ConfigurationError):
            validate_hermite_biehler(NEG_SQUARE, upper=[], real=[])

    def test_non_interior_upper_sample_rejected(self):
        with pytest.raises(ConfigurationError):
            validate_hermite_biehler(NEG_SQUARE, upper=[1.0 + 0.0j], real=[0.0])


class TestNormalizeGauge:
    def test_phase_rotation_of_square(self, rng):
        # (z+i)^2 has e(0) = -1; normalization flips the sign.
        e = Polynomial((-1.0, 2.0j, 1.0))
        hb = normalize_gauge(e)
        assert hb(0.0) == pytest.approx(1.0, abs=1e-14)
        assert hb.gamma0 == pytest.approx(math.pi / 2, abs=1e-14)
        z = random_points(rng, n=6)
        np.testing.assert_allclose(hb(z), NEG_SQUARE(z), rtol=1e-13)

    def test_already_normalized_is_unchanged(self):
        hb = normalize_gauge(ComplexExponential(PW_RATE))
        assert hb.e is not None
        assert hb(0.0) == 1.0 + 0.0j
        assert hb.gamma0 == pytest.approx(math.pi / 2, abs=1e-14)

    def test_scaled_exponential_records_arcsin_gauge(self):
        e = LinearCombination((2.0,), (ComplexExponential(PW_RATE),))
        hb = normalize_gauge(e)
        assert hb(0.0) == pytest.approx(2.0, abs=1e-14)
        assert hb.gamma0 == pytest.approx(math.pi / 6, abs=1e-14)
        assert complex(hb(0.0)).real * math.sin(hb.gamma0) == pytest.approx(1.0, abs=1e-14)

    def test_small_origin_value_is_lifted(self):
        e = LinearCombination((0.5,), (ComplexExponential(PW_RATE),))
        hb = normalize_gauge(e)
        assert hb(0.0) == pytest.approx(1.0, abs=1e-14)
        assert hb.gamma0 == pytest.approx(math.pi / 2, abs=1e-14)

    def test_origin_zero_is_not_normalizable(self):
        with pytest.raises(NotNormalizableError):
            normalize_gauge(Polynomial((0.0, 1.0)))

    def test_validation_rejection_propagates(self):
        with pytest.raises(ValidationRejectedError):
            normalize_gauge(Polynomial((-1.0, 0.0, 1.0)))


class TestSBetaPencil:
    def test_pw_beta_zero_is_sine(self, pw, rng):
        s = s_beta(pw, 0.0)
        z = random_points(rng, n=10)
        np.testing.assert_allclose(s.function(z), np.sin(np.pi * z),
                                   rtol=1e-12, atol=1e-12)

    def test_pw_beta_half_pi_is_minus_cosine(self, pw, rng):
        s = s_beta(pw, math.pi / 2)
        z = random_points(rng, n=10)
        np.testing.assert_allclose(s.function(z), -np.cos(np.pi * z),
                                   rtol=1e-12, atol=1e-12)

    def test_poly_pencil_members(self, poly, rng):
        z = random_points(rng, n=10)
        s0 = s_beta(poly, 0.0)
        shalf = s_beta(poly, math.pi / 2)
        np.testing.assert_allclose(s0.function(z), 2.0 * z, rtol=1e-13, atol=1e-13)
        np.testing.assert_allclose(shalf.function(z), z ** 2 - 1.0,
                                   rtol=1e-13, atol=1e-13)

    @pytest.mark.parametrize("beta", [0.0, 0.3, math.pi / 2, 2.8])
    def test_real_on_real_axis(self, pw, beta):
        s = s_beta(pw, beta)
        x = np.linspace(-5.0, 5.0, 41).astype(complex)
        vals = s.function(x)
        assert np.max(np.abs(vals.imag)) < 1e-12

    @pytest.mark.parametrize("hb_name", ["pw", "poly"])
    def test_pencil_is_trigonometric_in_beta(self, hb_name, pw, poly, rng):
        hb = pw if hb_name == "pw" else poly
        s0 = s_beta(hb, 0.0)
        s1 = s_beta(hb, math.pi / 2)
        z = random_points(rng, n=8)
        for beta in (0.4, 1.1, 2.9):
            lhs = s_beta(hb, beta).function(z)
            rhs = math.cos(beta) * s0.function(z) + math.sin(beta) * s1.function(z)
            np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-10)

    def test_beta_reduced_mod_pi_with_warning(self, pw, rng):
        with pytest.warns(UserWarning):
            s = s_beta(pw, math.pi)
        assert s.beta == pytest.approx(0.0, abs=1e-12)
        z = random_points(rng, n=5)
        np.testing.assert_allclose(s.function(z), np.sin(np.pi * z),
                                   rtol=1e-12, atol=1e-12)

    def test_rejects_unnormalized_input(self):
        with pytest.raises(ConfigurationError):
            s_beta(ComplexExponential(PW_RATE), 0.0)

    def test_rejects_non_finite_beta(self, pw):
        with pytest.raises(MalformedFunctionError):
            s_beta(pw, float("nan"))


class TestBetaAt:
    def test_pw_at_one(self, pw):
        assert beta_at(pw, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_pw_at_half(self, pw):
        assert beta_at(pw, 0.5) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_poly_at_origin(self, poly):
        assert beta_at(poly, 0.0) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("hb_name", ["pw", "poly"])
    def test_every_point_belongs_to_its_pencil_member(self, hb_name, pw, poly, rng):
        hb = pw if hb_name == "pw" else poly
        xs = rng.uniform(-3.0, 3.0, size=25)
        betas = beta_at(hb, xs)
        assert np.all((betas >= 0.0) & (betas < math.pi))
        for x, b in zip(xs, betas):
            s = s_beta(hb, float(b))
            assert abs(s.function(complex(x))) <= 1e-10 * s.scale_at(x)

    def test_vanishing_e_raises(self):
        fake_report = HBValidationReport(True, 1.0, 1.0, 1, 1)
        broken = HermiteBiehlerFunction(Polynomial((0.0, 1.0)), math.pi / 2,
                                        fake_report)
        with pytest.raises(HypothesisViolationError):
            beta_at(broken, 0.0)
