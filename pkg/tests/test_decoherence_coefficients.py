import math

import pytest

from models.errors import DomainError
from models.results import CONVENTION_MASSIVE, CONVENTION_MASSLESS, CoefficientResult
from models.specs import EmissionSpec, QuadratureSpec
from numerics.quadrature import UnitDirection, integrate_sphere
from physics.decoherence_coefficients import (
    emission_log_coefficient,
    interference_coefficient,
    interference_coefficient_massless,
    interference_coefficient_massless_small_angle,
    interference_coefficient_small_angle,
    massless_core,
    massless_small_angle_core,
)
from physics.kinematics import build_elastic_cm, superpose
from physics.soft_radiation import branch_difference_density, eikonal_bracket_density
from physics.special_functions import d_weinberg_deriv

pytestmark = pytest.mark.unit


def _leg_directions(pair):
    return [UnitDirection.from_vector(v.x, v.y, v.z) for v, _ in pair.legs()]


class TestCoefficientResult:
    def test_total_is_product(self):
        result = CoefficientResult.from_parts(0.5, 3.0, -2.0, CONVENTION_MASSIVE)
        assert result.total == -3.0

    def test_inconsistent_total_rejected(self):
        with pytest.raises(ValueError):
            CoefficientResult(
                bracket_value=0.5,
                log_factor=3.0,
                prefactor=-2.0,
                total=1.0,
                convention_tag=CONVENTION_MASSIVE,
            )


class TestEmissionLogCoefficient:
    def test_forward_is_zero(self, emission_spec):
        result = emission_log_coefficient(build_elastic_cm(1.0, 1.0, 0.0), emission_spec)
        assert result.bracket_value == 0.0
        assert result.total == 0.0

    def test_static_limit(self, emission_spec):
        result = emission_log_coefficient(build_elastic_cm(1.0, 1e-6, 1.0), emission_spec)
        assert abs(result.bracket_value) < 1e-10

    def test_factors(self, emission_spec):
        result = emission_log_coefficient(build_elastic_cm(1.0, 1.0, 1.0), emission_spec)
        assert result.log_factor == pytest.approx(math.log(1e6), rel=1e-15)
        assert result.prefactor == pytest.approx(8.0 * math.pi / (2.0 * math.pi**2), rel=1e-15)
        assert result.convention_tag == CONVENTION_MASSIVE

    def test_matches_quadrature(self, emission_spec, tight_quad):
        kin = build_elastic_cm(1.0, 1.0, math.pi / 2)
        result = emission_log_coefficient(kin, emission_spec)
        integral = integrate_sphere(lambda k: eikonal_bracket_density(kin, k), tight_quad)
        expected = (
            emission_spec.kappa**2
            * emission_spec.m0_squared
            * emission_spec.log_factor
            * integral.value
            / (2.0 * (2.0 * math.pi) ** 3)
        )
        assert result.total == pytest.approx(expected, rel=1e-6)

    def test_scales_with_amplitude(self):
        kin = build_elastic_cm(1.0, 1.0, 1.0)
        one = emission_log_coefficient(kin, EmissionSpec(lambda_ir=1e-3, lambda_uv=1.0))
        three = emission_log_coefficient(
            kin, EmissionSpec(lambda_ir=1e-3, lambda_uv=1.0, m0_squared=3.0)
        )
        assert three.total == pytest.approx(3.0 * one.total, rel=1e-14)

    def test_large_momentum_near_forward(self, emission_spec):
        kin = build_elastic_cm(1.0, 1e3, 1e-9)
        result = emission_log_coefficient(kin, emission_spec)
        # Bracket -> (-t/2m^2) [D'(p.q'/m^2) - D'(1)] as theta -> 0.
        x_far, offset = kin.bracket_arguments()
        expected = offset * (d_weinberg_deriv(x_far) - d_weinberg_deriv(1.0))
        assert result.bracket_value == pytest.approx(expected, rel=1e-6)
        assert emission_log_coefficient(build_elastic_cm(1.0, 1e3, 0.0), emission_spec).total == 0.0

    def test_rejects_massless(self, emission_spec):
        with pytest.raises(DomainError):
            emission_log_coefficient(build_elastic_cm(0.0, 1.0, 1.0), emission_spec)

    def test_rejects_inverted_window(self):
        with pytest.raises(ValueError):
            EmissionSpec(lambda_ir=1.0, lambda_uv=1e-3)


class TestInterferenceCoefficient:
    def test_zero_angle_is_exactly_zero(self, emission_spec):
        pair = superpose(build_elastic_cm(1.0, 1.0, 0.7), 0.0)
        result = interference_coefficient(pair, emission_spec)
        assert result.bracket_value == 0.0
        assert result.total == 0.0

    def test_negative_for_positive_amplitude_product(self, emission_spec):
        pair = superpose(build_elastic_cm(1.0, 1.0, math.pi / 2), 0.3)
        result = interference_coefficient(pair, emission_spec)
        assert result.bracket_value > 0.0
        assert result.total < 0.0

    def test_matches_branch_difference_quadrature(self, emission_spec, tight_quad):
        pair = superpose(build_elastic_cm(1.0, 1.0, math.pi / 2), 0.1)
        result = interference_coefficient(pair, emission_spec, m1m2_re=0.8)
        integral = integrate_sphere(lambda k: branch_difference_density(pair, k), tight_quad)
        expected = -(emission_spec.kappa**2) * 0.8 * integral.value * emission_spec.log_factor / 2.0
        assert result.total == pytest.approx(expected, rel=1e-6)

    @pytest.mark.slow
    def test_quadrature_oracle_random(self, rng, emission_spec, tight_quad):
        for _ in range(10):
            mass = rng.uniform(0.5, 2.0)
            kin = build_elastic_cm(mass, rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.9))
            pair = superpose(kin, rng.uniform(0.05, 1.5))
            result = interference_coefficient(pair, emission_spec)
            integral = integrate_sphere(lambda k: branch_difference_density(pair, k), tight_quad)
            expected = -(emission_spec.kappa**2) * integral.value * emission_spec.log_factor / 2.0
            assert result.total == pytest.approx(expected, rel=1e-6)

    def test_branch_swap_symmetry(self, rng, emission_spec):
        for _ in range(10):
            kin = build_elastic_cm(rng.uniform(0.5, 2.0), rng.uniform(0.2, 2.0), rng.uniform(0, 3.0))
            pair = superpose(kin, rng.uniform(0.01, 2.0))
            direct = interference_coefficient(pair, emission_spec)
            swapped = interference_coefficient(pair.swapped(), emission_spec)
            assert swapped.total == pytest.approx(direct.total, rel=1e-12)

    def test_rejects_massless(self, emission_spec):
        pair = superpose(build_elastic_cm(0.0, 1.0, 1.0), 0.2)
        with pytest.raises(DomainError):
            interference_coefficient(pair, emission_spec)


class TestInterferenceSmallAngle:
    def test_zero_angle(self, emission_spec):
        kin = build_elastic_cm(1.0, 1.0, 1.0)
        assert interference_coefficient_small_angle(kin, 0.0, emission_spec).total == 0.0

    def test_static_scattering_vanishes(self, emission_spec):
        kin = build_elastic_cm(1.0, 1e-9, 1.0)
        result = interference_coefficient_small_angle(kin, 0.3, emission_spec)
        assert abs(result.bracket_value) < 1e-15

    def test_matches_exact_at_small_angle(self, emission_spec):
        kin = build_elastic_cm(1.0, 1.0, math.pi / 2)
        exact = interference_coefficient(superpose(kin, 0.01), emission_spec)
        approx = interference_coefficient_small_angle(kin, 0.01, emission_spec)
        assert approx.convention_tag == exact.convention_tag
        assert exact.total / approx.total == pytest.approx(1.0, abs=1e-3)

    def test_deviation_is_second_order(self, emission_spec):
        kin = build_elastic_cm(1.0, 1.0, math.pi / 2)
        constants = []
        for phi in (0.2, 0.1, 0.05, 0.025):
            exact = interference_coefficient(superpose(kin, phi), emission_spec).total
            approx = interference_coefficient_small_angle(kin, phi, emission_spec).total
            constants.append((exact / approx - 1.0) / phi**2)
        assert constants[-1] != 0.0
        for a, b in zip(constants[1:], constants[2:]):
            assert a / b == pytest.approx(1.0, abs=0.02)

    def test_large_momentum_zero_angle(self, emission_spec):
        kin = build_elastic_cm(1.0, 1e3, 0.7)
        result = interference_coefficient(superpose(kin, 0.0), emission_spec)
        assert result.total == 0.0
        assert interference_coefficient_small_angle(kin, 0.0, emission_spec).total == 0.0

    @pytest.mark.parametrize("phi", [1e-9, 1e-6])
    def test_large_momentum_tiny_angle(self, emission_spec, phi):
        kin = build_elastic_cm(1.0, 1e3, 0.7)
        exact = interference_coefficient(superpose(kin, phi), emission_spec)
        approx = interference_coefficient_small_angle(kin, phi, emission_spec)
        assert exact.total < 0.0
        assert exact.total / approx.total == pytest.approx(1.0, rel=1e-6)

    def test_rejects_massless(self, emission_spec):
        with pytest.raises(DomainError):
            interference_coefficient_small_angle(build_elastic_cm(0.0, 1.0, 1.0), 0.1, emission_spec)


class TestMassless:
    def test_core_reference(self):
        assert massless_small_angle_core(1.0, 0.02) == pytest.approx(-2.0420067e-3, rel=1e-6)
        assert 2.0 * math.log(math.sin(0.01)) - 1.0 == pytest.approx(-10.21037, abs=1e-5)

    def test_exact_matches_small_angle(self, emission_spec):
        pair = superpose(build_elastic_cm(0.0, 1.0, math.pi / 2), 0.02)
        exact = interference_coefficient_massless(pair, None, emission_spec)
        approx = interference_coefficient_massless_small_angle(1.0, 0.02, emission_spec)
        assert exact.convention_tag == approx.convention_tag == CONVENTION_MASSLESS
        assert exact.total == pytest.approx(approx.total, rel=1e-3)

    def test_small_angle_deviation_scaling(self, emission_spec):
        # Relative deviation is (s^2/2)(1 + s^2/3) / (2 ln s - 1) with s = sin(phi/2).
        for phi in (0.2, 0.05, 0.01):
            pair = superpose(build_elastic_cm(0.0, 1.0, math.pi / 2), phi)
            exact = interference_coefficient_massless(pair, None, emission_spec).total
            approx = interference_coefficient_massless_small_angle(1.0, phi, emission_spec).total
            s = math.sin(0.5 * phi)
            scaled = (exact / approx - 1.0) * (2.0 * math.log(s) - 1.0) / (0.5 * s * s)
            assert scaled == pytest.approx(1.0, abs=1e-2)

    def test_vanishes_at_small_angle(self, emission_spec):
        pair = superpose(build_elastic_cm(0.0, 1.0, math.pi / 2), 1e-4)
        result = interference_coefficient_massless(pair, None, emission_spec)
        bound = 1e-6 * emission_spec.kappa**2 * pair.base.s * emission_spec.log_factor
        assert abs(result.total) < bound

    def test_conservation_term_vanishes(self):
        pair = superpose(build_elastic_cm(0.0, 1.0, 1.3), 0.4)
        q11, q12, q12_prime = pair.invariants()
        assert abs(q11 - q12 - q12_prime) <= 1e-12 * pair.base.s

    def test_explicit_s(self, emission_spec):
        pair = superpose(build_elastic_cm(0.0, 1.0, 1.0), 0.5)
        implicit = interference_coefficient_massless(pair, None, emission_spec)
        explicit = interference_coefficient_massless(pair, 4.0, emission_spec)
        assert explicit.total == pytest.approx(implicit.total, rel=1e-14)
        assert explicit.bracket_value == pytest.approx(
            massless_core(*pair.invariants(), 4.0), rel=1e-15
        )

    def test_massive_limit(self, emission_spec):
        phi = 0.5
        massless = superpose(build_elastic_cm(0.0, 1.0, math.pi / 2), phi)
        massive = superpose(build_elastic_cm(1e-3, 1.0, math.pi / 2), phi)
        core = interference_coefficient_massless(massless, None, emission_spec).bracket_value
        bracket = interference_coefficient(massive, emission_spec).bracket_value
        assert (1e-3) ** 2 * bracket == pytest.approx(2.0 * core, rel=1e-3)

    @pytest.mark.slow
    def test_matches_guarded_quadrature(self):
        pair = superpose(build_elastic_cm(0.0, 1.0, math.pi / 2), 0.5)
        quad = QuadratureSpec(rel_tol=1e-6, max_subdivisions=1000)
        integral = integrate_sphere(
            lambda k: branch_difference_density(pair, k),
            quad,
            singular_directions=_leg_directions(pair),
        )
        core = massless_core(*pair.invariants(), pair.base.s)
        assert core == pytest.approx(0.460561, rel=1e-5)
        expected = (2.0 * math.pi) ** -3 * 16.0 * math.pi * core
        assert integral.value == pytest.approx(expected, rel=1e-4)

    def test_rejects_massive_pair(self, emission_spec):
        pair = superpose(build_elastic_cm(1.0, 1.0, 1.0), 0.5)
        with pytest.raises(DomainError):
            interference_coefficient_massless(pair, None, emission_spec)

    def test_rejects_coincident_branches(self, emission_spec):
        pair = superpose(build_elastic_cm(0.0, 1.0, math.pi / 2), 0.0)
        with pytest.raises(DomainError):
            interference_coefficient_massless(pair, None, emission_spec)

    @pytest.mark.parametrize("Q, phi", [(1.0, 0.0), (1.0, -0.1), (1.0, 1.6), (0.0, 0.1)])
    def test_small_angle_rejects(self, emission_spec, Q, phi):
        with pytest.raises(DomainError):
            interference_coefficient_massless_small_angle(Q, phi, emission_spec)

    def test_small_angle_sign(self, emission_spec):
        result = interference_coefficient_massless_small_angle(1.0, 0.1, emission_spec)
        assert result.bracket_value < 0.0
        assert result.prefactor > 0.0
