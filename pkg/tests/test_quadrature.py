import math

import pytest

from models.errors import QuadratureError
from models.specs import QuadratureSpec
from numerics.quadrature import UnitDirection, integrate_interval, integrate_sphere

pytestmark = pytest.mark.unit

_ANALYTIC_INTEGRALS = [
    (lambda x: x * x, 0.0, 1.0, 1.0 / 3.0),
    (lambda x: x**5, 0.0, 2.0, 64.0 / 6.0),
    (math.exp, 0.0, 1.0, math.e - 1.0),
    (math.sin, 0.0, math.pi, 2.0),
    (math.cos, 0.0, 0.5 * math.pi, 1.0),
    (lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0, 0.25 * math.pi),
    (math.sqrt, 0.0, 1.0, 2.0 / 3.0),
    (lambda x: 1.0 / math.sqrt(x), 0.0, 1.0, 2.0),
    (math.log1p, 0.0, 1.0, 2.0 * math.log(2.0) - 1.0),
    (lambda x: math.exp(-x * x), 0.0, 2.0, 0.5 * math.sqrt(math.pi) * math.erf(2.0)),
    (lambda x: x * math.exp(x), 0.0, 1.0, 1.0),
    (lambda x: 1.0 / x, 1.0, math.e, 1.0),
    (lambda x: math.cos(x) ** 2, 0.0, math.pi, 0.5 * math.pi),
    (lambda x: 1.0 / math.cosh(x) ** 2, 0.0, 1.0, math.tanh(1.0)),
    (math.log, 0.0, 1.0, -1.0),
    (lambda x: x * math.sin(x), 0.0, math.pi, math.pi),
    (lambda x: 1.0 / (1.0 + x), 0.0, 1.0, math.log(2.0)),
    (lambda x: math.exp(-x) * math.sin(x), 0.0, math.pi, 0.5 * (1.0 + math.exp(-math.pi))),
    (lambda x: math.sin(10.0 * x) ** 2, 0.0, math.pi, 0.5 * math.pi),
    (lambda x: 1.0 / (x * x + 0.01), -1.0, 1.0, 20.0 * math.atan(10.0)),
]


class TestUnitDirection:
    def test_unit_norm(self, rng):
        for _ in range(100):
            k = UnitDirection(z=rng.uniform(-1, 1), azimuth=rng.uniform(0, 2 * math.pi))
            assert math.fsum(c * c for c in k.vector) == pytest.approx(1.0, abs=1e-14)

    def test_from_vector(self):
        k = UnitDirection.from_vector(0.0, 3.0, 4.0)
        assert k.z == pytest.approx(0.8)
        assert k.azimuth == pytest.approx(math.pi / 2)

    def test_from_zero_vector(self):
        with pytest.raises(ValueError):
            UnitDirection.from_vector(0.0, 0.0, 0.0)


class TestIntegrateInterval:
    def test_polynomial(self, tight_quad):
        result = integrate_interval(lambda x: x * x, 0.0, 1.0, tight_quad)
        assert result.value == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_sine(self, tight_quad):
        result = integrate_interval(math.sin, 0.0, math.pi, tight_quad)
        assert result.value == pytest.approx(2.0, abs=1e-12)

    def test_polar_kernel(self, tight_quad):
        result = integrate_interval(
            lambda z: (1 - z * z) ** 2 / (1 - 0.5 * z) ** 2, -1.0, 1.0, tight_quad
        )
        assert result.value == pytest.approx(1.19989, abs=1e-5)
        bracket = 1.0 - 4.0 / 3.0 * 0.125 - 0.75 * math.log(3.0)
        assert result.value == pytest.approx(4.0 / 0.5**5 * bracket, abs=1e-8)

    def test_breakpoints(self, tight_quad):
        result = integrate_interval(lambda x: abs(x - 0.3), 0.0, 1.0, tight_quad, points=[0.3, 5.0])
        assert result.value == pytest.approx(0.5 * (0.09 + 0.49), abs=1e-12)

    def test_linearity(self, tight_quad):
        f, g = math.exp, math.cos
        combined = integrate_interval(lambda x: 2.0 * f(x) - 3.0 * g(x), 0.0, 2.0, tight_quad)
        parts = 2.0 * integrate_interval(f, 0.0, 2.0, tight_quad).value - 3.0 * integrate_interval(
            g, 0.0, 2.0, tight_quad
        ).value
        assert combined.value == pytest.approx(parts, rel=1e-9)

    def test_deterministic(self, tight_quad):
        first = integrate_interval(lambda x: math.log1p(x) / (1 + x * x), 0.0, 1.0, tight_quad)
        second = integrate_interval(lambda x: math.log1p(x) / (1 + x * x), 0.0, 1.0, tight_quad)
        assert first == second

    def test_non_convergence_carries_estimate(self):
        spec = QuadratureSpec(rel_tol=1e-12, max_subdivisions=2)
        with pytest.raises(QuadratureError) as info:
            integrate_interval(lambda x: math.sin(200.0 * x) ** 2, 0.0, 10.0, spec)
        assert math.isfinite(info.value.value)
        assert info.value.error_estimate > 0.0

    @pytest.mark.parametrize("f, a, b, truth", _ANALYTIC_INTEGRALS)
    def test_error_estimate_bounds_true_error(self, f, a, b, truth):
        result = integrate_interval(f, a, b, QuadratureSpec(rel_tol=1e-8))
        # Allow for the rounding of the reference value itself.
        slack = 4.0 * math.ulp(truth)
        assert abs(result.value - truth) <= 10.0 * result.error_estimate + slack

    @pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
    def test_rejects_bad_interval(self, tight_quad, a, b):
        with pytest.raises(ValueError):
            integrate_interval(lambda x: x, a, b, tight_quad)


class TestIntegrateSphere:
    def test_constant(self, tight_quad):
        assert integrate_sphere(lambda k: 1.0, tight_quad).value == pytest.approx(
            4.0 * math.pi, abs=1e-10
        )

    def test_second_moment(self, tight_quad):
        assert integrate_sphere(lambda k: k.z**2, tight_quad).value == pytest.approx(
            4.0 * math.pi / 3.0, abs=1e-10
        )

    def test_symmetric_shortcut_agrees(self, tight_quad):
        full = integrate_sphere(lambda k: 1.0 / (1.2 - k.z), tight_quad)
        symmetric = integrate_sphere(lambda k: 1.0 / (1.2 - k.z), tight_quad, azimuth_symmetric=True)
        assert full.value == pytest.approx(symmetric.value, rel=1e-9)
        assert symmetric.value == pytest.approx(2.0 * math.pi * math.log(2.2 / 0.2), rel=1e-10)

    def test_azimuth_dependent(self, tight_quad):
        result = integrate_sphere(lambda k: k.vector[0] ** 2, tight_quad)
        assert result.value == pytest.approx(4.0 * math.pi / 3.0, abs=1e-10)

    def test_singular_directions_add_excluded_measure(self):
        spec = QuadratureSpec(rel_tol=1e-8, singularity_guard=1e-6)
        axis = UnitDirection(z=0.0, azimuth=0.0)
        plain = integrate_sphere(lambda k: 1.0, spec)
        guarded = integrate_sphere(lambda k: 1.0, spec, singular_directions=[axis])
        # The cap may or may not be sampled; either way the excluded measure is in the error.
        assert abs(guarded.value - plain.value) <= 1e-6 + 1e-8
        assert guarded.error_estimate >= 1e-6

    def test_guarded_integrand_never_evaluated_on_axis(self):
        spec = QuadratureSpec(rel_tol=1e-8)
        axis = UnitDirection(z=1.0, azimuth=0.0)

        def f(k: UnitDirection) -> float:
            if k.z >= 1.0:
                raise AssertionError("evaluated on the singular axis")
            return 1.0 - k.z

        result = integrate_sphere(f, spec, azimuth_symmetric=True, singular_directions=[axis])
        assert result.value == pytest.approx(4.0 * math.pi, rel=1e-8)
