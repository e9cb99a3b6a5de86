import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from fmqubit.config import DephasingReservoir, Modulation
from fmqubit.dephasing import (
    QuadratureError,
    dephasing_exponent,
    modulation_independence_certificate,
    ohmic_density,
    ohmic_zero_temperature,
)


def scipy_exponent(alpha, s, theta, wc, t):
    """Gamma~ and gamma3 by QUADPACK, with breakpoints at the oscillation nodes."""
    b = wc * t
    if b == 0:
        return 0.0, 0.0

    def w(x):
        coth = 1.0 if theta == 0 else 1.0 / math.tanh(x / (2 * theta))
        return math.exp(-x) * coth * x ** (s - 1)

    def f_exp(x):
        return 0.0 if x == 0 else w(x) * 2 * math.sin(b * x / 2) ** 2 / x

    def f_rate(x):
        return 0.0 if x == 0 else w(x) * math.sin(b * x)

    # breakpoints resolve the oscillations and the small-x region
    pts = sorted(set([1e-8, 1e-6, 1e-4, 1e-2] + [k * math.pi / b for k in range(1, int(40 * b / math.pi))]))
    pts = [p for p in pts if p < 40][:95]
    kw = dict(limit=5000, epsabs=1e-13, epsrel=1e-11, points=pts)
    return 2 * alpha * wc ** (s - 1) * quad(f_exp, 0, 40, **kw)[0], alpha * wc**s * quad(f_rate, 0, 40, **kw)[0]


class TestDensity:
    def test_value(self):
        assert ohmic_density(2.0, 0.1, 1.0, 3.0) == pytest.approx(0.1 * 6.0 * math.exp(-2.0))

    def test_array(self):
        assert ohmic_density(np.array([0.0, 1.0]), 1.0).tolist() == [0.0, math.exp(-1.0)]

    @pytest.mark.parametrize("kw", [{"s": 0.0}, {"s": -1.0}])
    def test_bad_exponent(self, kw):
        with pytest.raises(ValueError):
            ohmic_density(1.0, 0.1, **kw)

    def test_negative_frequency(self):
        with pytest.raises(ValueError):
            ohmic_density(-1.0, 0.1)


class TestZeroTemperatureClosedForm:
    @pytest.mark.parametrize("wc", [0.5, 1.0, 3.0])
    def test_matches(self, wc):
        t = np.linspace(0, 100 / wc, 1001)
        d = dephasing_exponent(DephasingReservoir(alpha=0.3, s=1.0, theta2=0.0, omega_c_over_gamma=wc), t)
        g3, gt = ohmic_zero_temperature(t, 0.3, wc)
        assert np.max(np.abs(d.gamma_tilde - gt)) < 1e-8
        assert np.max(np.abs(d.gamma3 - g3)) < 1e-8

    def test_closed_form_against_scipy(self):
        for t in (0.3, 4.0, 40.0):
            gt, g3 = scipy_exponent(1.0, 1.0, 0.0, 1.0, t)
            ref_g3, ref_gt = ohmic_zero_temperature(np.array([t]), 1.0)
            assert gt == pytest.approx(ref_gt[0], rel=1e-9)
            assert g3 == pytest.approx(ref_g3[0], rel=1e-9)


class TestFiniteTemperature:
    @pytest.mark.parametrize("theta", [1e-5, 1e-2, 0.3, 1.0])
    @pytest.mark.parametrize("s", [0.5, 1.0, 2.0, 3.0])
    def test_against_scipy(self, theta, s):
        t = np.array([0.0, 0.1, 1.0, 5.0, 20.0])
        d = dephasing_exponent(DephasingReservoir(alpha=0.2, s=s, theta2=theta, omega_c_over_gamma=1.5), t)
        for k, tk in enumerate(t):
            gt, g3 = scipy_exponent(0.2, s, theta, 1.5, tk)
            assert d.gamma_tilde[k] == pytest.approx(gt, rel=1e-7, abs=1e-9)
            assert d.gamma3[k] == pytest.approx(g3, rel=1e-7, abs=1e-9)

    def test_rate_is_half_derivative(self):
        t = np.linspace(0, 20, 4001)
        d = dephasing_exponent(DephasingReservoir(alpha=0.1, theta2=0.5), t)
        deriv = np.gradient(d.gamma_tilde, t, edge_order=2)
        assert np.allclose(deriv, 2 * d.gamma3, atol=1e-5)

    def test_high_temperature_linear_growth(self):
        # classical bath: Gamma~ ~ 4 alpha theta (pi/2) b at large b for s = 1
        theta = 50.0
        t = np.array([200.0, 400.0])
        d = dephasing_exponent(DephasingReservoir(alpha=1.0, theta2=theta), t)
        slope = (d.gamma_tilde[1] - d.gamma_tilde[0]) / 200.0
        assert slope == pytest.approx(2 * math.pi * theta, rel=1e-2)

    @given(theta=st.floats(0, 2), alpha=st.floats(0.001, 1))
    def test_monotone_in_temperature_and_linear_in_alpha(self, theta, alpha):
        t = np.array([0.5, 3.0, 15.0])
        base = dephasing_exponent(DephasingReservoir(alpha=1.0, theta2=theta), t).gamma_tilde
        hotter = dephasing_exponent(DephasingReservoir(alpha=1.0, theta2=theta + 0.1), t).gamma_tilde
        assert np.all(hotter >= base - 1e-12)
        scaled = dephasing_exponent(DephasingReservoir(alpha=alpha, theta2=theta), t).gamma_tilde
        assert np.allclose(scaled, alpha * base, rtol=1e-12, atol=1e-15)

    def test_exponent_non_negative(self):
        t = np.linspace(0, 50, 501)
        for theta in (0.0, 1e-3, 1.0):
            assert np.all(dephasing_exponent(DephasingReservoir(alpha=0.5, theta2=theta), t).gamma_tilde >= 0)


class TestErrors:
    def test_alpha_zero_short_circuit(self):
        d = dephasing_exponent(DephasingReservoir(alpha=0.0), np.linspace(0, 1, 5))
        assert not d.gamma_tilde.any() and not d.gamma3.any()

    def test_bad_exponent(self):
        with pytest.raises(ValueError):
            dephasing_exponent(DephasingReservoir(alpha=0.1, s=0.0), np.linspace(0, 1, 5))

    def test_unreachable_tolerance(self):
        with pytest.raises(QuadratureError) as exc:
            dephasing_exponent(DephasingReservoir(alpha=0.1, theta2=1.0), np.array([0.0, 50.0]), tol=1e-20)
        assert exc.value.time == 50.0
        assert 0.0 <= exc.value.panel_start <= 35.0


class TestModulationIndependence:
    def test_certificate(self):
        t = np.linspace(0, 30, 1501)
        dep = DephasingReservoir(alpha=0.1, theta2=0.01)
        assert modulation_independence_certificate(dep, Modulation(2.40483, 5.0), Modulation(0, 0), t)

    def test_no_modulation_parameter(self):
        import inspect

        assert "modulation" not in inspect.signature(dephasing_exponent).parameters
