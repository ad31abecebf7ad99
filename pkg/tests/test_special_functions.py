import math

import pytest
import numpy as np
from scipy import integrate

from models.errors import DomainError
from physics.special_functions import (
    D_DERIV_SERIES_SWITCH,
    D_INCREMENT_SWITCH,
    D_LARGE_X,
    D_SERIES_SWITCH,
    EULER_GAMMA,
    cosine_integral,
    d_weinberg,
    d_weinberg_deriv,
    d_weinberg_increment,
    entire_cosine_integral,
)

pytestmark = pytest.mark.unit


def _d_closed(x: float) -> float:
    return (2.0 * x * x - 1.0) / math.sqrt(x * x - 1.0) * math.acosh(x)


def _d_near_one(y: float) -> float:
    """Closed form at x = 1 + y without forming x^2 - 1."""
    r = math.sqrt(y * (2.0 + y))
    x = 1.0 + y
    return (2.0 * x * x - 1.0) * math.log1p(y + r) / r


class TestDWeinberg:
    def test_at_one(self):
        assert d_weinberg(1.0) == 1.0

    def test_reference_value(self):
        assert d_weinberg(2.0) == pytest.approx(5.322422, rel=1e-6)

    @pytest.mark.parametrize("x", [1.0001, 1.0005, 1.01, 1.5, 3.0, 50.0])
    def test_matches_closed_form(self, x):
        assert d_weinberg(x) == pytest.approx(_d_closed(x), rel=1e-9)

    def test_continuous_across_series_switch(self):
        x = 1.0 + D_SERIES_SWITCH
        below, above = d_weinberg(x * (1 - 1e-15)), d_weinberg(x * (1 + 1e-15))
        assert below == pytest.approx(above, rel=1e-13)

    def test_large_argument(self):
        x = 1e6
        assert d_weinberg(x) == pytest.approx(2.0 * x * math.log(2.0 * x), rel=1e-6)

    def test_increasing(self):
        xs = [1.0 + 0.05 * i for i in range(60)]
        values = [d_weinberg(x) for x in xs]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_increasing_on_log_grid(self):
        xs = 1.0 + np.logspace(-10, 250, 1000)
        values = [d_weinberg(float(x)) for x in xs]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_series_and_closed_form_agree(self):
        for y in np.logspace(-10, -2, 200):
            y = float(y)
            assert d_weinberg(1.0 + y) == pytest.approx(_d_near_one(y), rel=1e-10)

    def test_huge_argument(self):
        x = 1e200
        assert d_weinberg(x) == pytest.approx(2.0 * x * math.log(2.0 * x), rel=1e-12)

    def test_continuous_across_large_x_switch(self):
        below = d_weinberg(D_LARGE_X * (1 - 1e-15))
        above = d_weinberg(D_LARGE_X * (1 + 1e-15))
        assert below == pytest.approx(above, rel=1e-13)

    def test_overflow_is_domain_error(self):
        with pytest.raises(DomainError):
            d_weinberg(1.7e308)

    @pytest.mark.parametrize("x", [0.999, 0.0, -2.0, math.nan, math.inf])
    def test_rejects(self, x):
        with pytest.raises(DomainError):
            d_weinberg(x)


class TestDWeinbergDeriv:
    def test_at_one(self):
        assert d_weinberg_deriv(1.0) == pytest.approx(11.0 / 3.0, rel=1e-15)

    def test_reference_value(self):
        assert d_weinberg_deriv(2.0) == pytest.approx(4.86782, rel=1e-5)

    @pytest.mark.parametrize("x", [1.001, 1.05, 1.3, 2.0, 7.5, 40.0])
    def test_matches_finite_difference(self, x):
        h = 1e-6 * x
        numeric = (d_weinberg(x + h) - d_weinberg(x - h)) / (2.0 * h)
        assert d_weinberg_deriv(x) == pytest.approx(numeric, rel=1e-7)

    def test_continuous_across_series_switch(self):
        x = 1.0 + D_DERIV_SERIES_SWITCH
        below = d_weinberg_deriv(x * (1 - 1e-15))
        above = d_weinberg_deriv(x * (1 + 1e-15))
        assert below == pytest.approx(above, rel=1e-12)

    def test_large_argument(self):
        x = 1e6
        assert d_weinberg_deriv(x) == pytest.approx(2.0 * (1.0 + math.log(2.0 * x)), rel=1e-9)

    def test_huge_argument(self):
        x = 1e200
        assert d_weinberg_deriv(x) == pytest.approx(2.0 * (1.0 + math.log(2.0 * x)), rel=1e-12)

    def test_continuous_across_large_x_switch(self):
        below = d_weinberg_deriv(D_LARGE_X * (1 - 1e-15))
        above = d_weinberg_deriv(D_LARGE_X * (1 + 1e-15))
        assert below == pytest.approx(above, rel=1e-9)

    def test_positive_on_log_grid(self):
        for x in 1.0 + np.logspace(-10, 300, 400):
            assert d_weinberg_deriv(float(x)) > 0.0

    def test_rejects_below_one(self):
        with pytest.raises(DomainError):
            d_weinberg_deriv(0.5)


class TestDWeinbergIncrement:
    def test_zero_step(self):
        assert d_weinberg_increment(1.0, 0.0) == 0.0
        assert d_weinberg_increment(2e6, 0.0) == 0.0

    @pytest.mark.parametrize("x, h", [(1.0, 0.1), (1.0, 0.45), (2.0, 0.3), (50.0, 5.0), (3.0, 40.0)])
    def test_matches_direct_difference(self, x, h):
        direct = d_weinberg(x + h) - d_weinberg(x)
        assert d_weinberg_increment(x, h) == pytest.approx(direct, rel=1e-12)

    @pytest.mark.parametrize("x", [1.0, 1.5, 2e6, 1e100])
    def test_small_step_limit(self, x):
        h = 1e-9 * (x + 1.0)
        assert d_weinberg_increment(x, h) == pytest.approx(h * d_weinberg_deriv(x), rel=1e-7)

    def test_continuous_at_switch(self):
        x = 2.0
        h = D_INCREMENT_SWITCH * (x + 1.0)
        below = d_weinberg_increment(x, h * (1 - 1e-15))
        above = d_weinberg_increment(x, h * (1 + 1e-15))
        assert below == pytest.approx(above, rel=1e-12)

    @pytest.mark.parametrize("x, h", [(0.5, 0.1), (1.0, -1e-3), (1.0, math.nan), (math.inf, 1.0)])
    def test_rejects(self, x, h):
        with pytest.raises(DomainError):
            d_weinberg_increment(x, h)


class TestCosineIntegrals:
    def test_ci_reference(self):
        assert cosine_integral(1.0) == pytest.approx(0.3374039229, rel=1e-10)

    def test_ci_small_argument(self):
        x = 1e-6
        assert cosine_integral(x) - (EULER_GAMMA + math.log(x)) == pytest.approx(0.0, abs=1e-10)

    def test_ci_asymptotic(self):
        x = 100.0
        expected = math.sin(x) / x * (1.0 - 2.0 / x**2) - math.cos(x) / x**2 * (1.0 - 6.0 / x**2)
        assert abs(cosine_integral(x)) < 0.011
        assert cosine_integral(x) == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize("x", [0.0, -1.0, math.nan])
    def test_ci_rejects(self, x):
        with pytest.raises(DomainError):
            cosine_integral(x)

    def test_cin_zero(self):
        assert entire_cosine_integral(0.0) == 0.0

    def test_cin_at_one(self):
        expected = EULER_GAMMA - cosine_integral(1.0)
        assert entire_cosine_integral(1.0) == pytest.approx(expected, rel=1e-14)
        assert entire_cosine_integral(1.0) == pytest.approx(0.2398117420, rel=1e-9)

    @pytest.mark.parametrize("x", [1e-6, 0.01, 0.4, 0.99, 1.5, 10.0, 300.0])
    def test_cin_matches_quadrature(self, x):
        reference, _ = integrate.quad(
            lambda u: (1.0 - math.cos(u)) / u if u > 0 else 0.0,
            0.0,
            x,
            epsrel=1e-13,
            epsabs=0.0,
            limit=500,
        )
        assert entire_cosine_integral(x) == pytest.approx(reference, rel=1e-9)

    def test_cin_small_argument(self):
        assert entire_cosine_integral(1e-4) == pytest.approx(0.25e-8, rel=1e-8)

    def test_cin_continuous_at_switch(self):
        below = entire_cosine_integral(1.0 - 1e-12)
        above = entire_cosine_integral(1.0 + 1e-12)
        assert below == pytest.approx(above, rel=1e-10)

    def test_cin_rejects_negative(self):
        with pytest.raises(DomainError):
            entire_cosine_integral(-0.1)
