import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import j0 as scipy_j0
from scipy.special import jn_zeros

from fmqubit.analysis import (
    DRIVEN_RATIO,
    BracketError,
    GridExtensionError,
    alpha_threshold,
    bessel_j0,
    coherence_time,
    envelope,
    j0_first_zero,
)
from fmqubit.config import DephasingReservoir, DissipativeReservoir, Modulation, SimulationConfig


class TestEnvelope:
    def test_damped_cosine_peaks(self):
        t = np.linspace(0, 20, 20001)
        x = np.exp(-0.1 * t) * np.abs(np.cos(t))
        env = envelope(t, x)
        # maxima where tan t = -0.1, just before each multiple of pi
        assert np.allclose(env.peak_times[1:6], np.pi * np.arange(1, 6) - math.atan(0.1), atol=2e-3)
        idx = np.searchsorted(t, env.peak_times)
        assert np.array_equal(env.values[idx], x[idx])

    def test_monotone_series_is_its_own_envelope(self):
        t = np.linspace(0, 5, 501)
        x = np.exp(-t)
        assert np.array_equal(envelope(t, x).values, x)

    def test_follows_series_after_last_peak(self):
        t = np.linspace(0, 3, 301)
        x = np.where(t < 1, 1 - 0.5 * t, 0.5 + 0.2 * np.sin(np.pi * (t - 1)))
        x[t > 1.5] = np.minimum(x[t > 1.5], 0.7 - 0.3 * (t[t > 1.5] - 1.5))
        env = envelope(t, x)
        last = np.searchsorted(t, env.peak_times[-1])
        assert np.array_equal(env.values[last:], x[last:])

    def test_pchip_between_peaks(self):
        t = np.linspace(0, 30, 3001)
        x = np.exp(-0.05 * t) * (0.6 + 0.4 * np.cos(2 * t))
        lin, cub = envelope(t, x, "linear"), envelope(t, x, "pchip")
        assert np.array_equal(lin.peak_times, cub.peak_times)
        assert np.max(np.abs(lin.values - cub.values)) < 1e-2

    def test_bad_kind(self):
        t = np.linspace(0, 1, 11)
        with pytest.raises(ValueError):
            envelope(t, np.cos(10 * t), "spline")

    def test_shape_checks(self):
        with pytest.raises(ValueError):
            envelope(np.arange(3.0), np.arange(4.0))
        with pytest.raises(ValueError):
            envelope(np.arange(2.0), np.arange(2.0))


class TestCoherenceTime:
    @pytest.mark.parametrize("n", [101, 1001, 10001])
    def test_markovian_exponential(self, n):
        t = np.linspace(0, 5, n)
        assert abs(coherence_time(t, np.exp(-t)) - 1.0) <= t[1] - t[0]

    @given(rate=st.floats(0.05, 5.0), amp=st.floats(0.01, 1.0))
    def test_exponential_rate(self, rate, amp):
        t = np.linspace(0, 30 / rate, 3001)
        tc = coherence_time(t, amp * np.exp(-rate * t))
        assert tc == pytest.approx(1.0 / rate, abs=t[1] - t[0])

    def test_never_crosses(self):
        t = np.linspace(0, 1, 101)
        assert coherence_time(t, np.exp(-0.1 * t)) is None

    def test_explicit_zeta0(self):
        t = np.linspace(0, 5, 5001)
        # the series starts at 0.5 but the level is set from zeta0 = 1
        assert coherence_time(t, 0.5 * np.exp(-t), zeta0=1.0) == pytest.approx(1.0 - math.log(2), abs=1e-3)

    def test_zero_initial_rejected(self):
        t = np.linspace(0, 1, 11)
        with pytest.raises(ValueError):
            coherence_time(t, np.zeros(11))

    def test_revivals_do_not_reset_crossing(self):
        # envelope uses revival peaks: a dip below 1/e between two high peaks is not a crossing
        t = np.linspace(0, 40, 40001)
        x = np.exp(-0.05 * t) * np.abs(np.cos(2 * t))
        assert coherence_time(t, x) == pytest.approx(20.0, abs=0.05)


class TestBesselJ0:
    @pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 2.40483, 5.0, 11.9, 12.1, 20.0, 55.5, 300.0])
    def test_matches_scipy(self, x):
        assert bessel_j0(x) == pytest.approx(scipy_j0(x), abs=1e-12)

    @given(st.floats(-60, 60))
    def test_even_and_bounded(self, x):
        assert bessel_j0(x) == bessel_j0(-x)
        assert abs(bessel_j0(x)) <= 1.0 + 1e-15

    def test_first_zero(self):
        z = j0_first_zero()
        assert z == pytest.approx(jn_zeros(0, 1)[0], abs=1e-14)
        assert abs(bessel_j0(z)) < 1e-15

    def test_driven_ratio_is_zero_to_five_decimals(self):
        assert DRIVEN_RATIO == round(j0_first_zero(), 5)

    def test_non_finite(self):
        with pytest.raises(ValueError):
            bessel_j0(math.inf)


def threshold_config(**deph):
    return SimulationConfig(
        modulation=Modulation(DRIVEN_RATIO, 5.0),
        dissipative=DissipativeReservoir(R=100.0, tau1=2.6e-3),
        dephasing=DephasingReservoir(alpha=0.01, s=1.0, **deph),
        t_max=120.0,
        n_samples=6001,
    )


@pytest.fixture(scope="module")
def result():
    return alpha_threshold(threshold_config(theta2=1e-5))


class TestThreshold:
    def test_sign_change_is_bracketed(self, result):
        lo, hi = result.bracket
        assert lo < result.alpha_th < hi or result.converged_on == "match"
        assert result.trace[0].h > 0 > result.trace[1].h

    def test_coherence_times_match(self, result):
        if result.converged_on == "match":
            assert abs(result.t_c_driven - result.t_c_undriven) <= 0.01 * result.t_c_undriven
        else:
            assert result.bracket[1] - result.bracket[0] <= 1e-3

    def test_driven_wins_below_threshold(self, result):
        below = [it for it in result.trace if it.alpha < result.alpha_th]
        assert all(it.h > 0 for it in below)

    def test_degenerate_bracket(self):
        with pytest.raises(BracketError) as exc:
            alpha_threshold(threshold_config(), alpha_bracket=(0.5, 0.5))
        assert math.isnan(exc.value.h_lo)

    def test_no_sign_change(self):
        with pytest.raises(BracketError) as exc:
            alpha_threshold(threshold_config(), alpha_bracket=(1e-3, 2e-3))
        assert exc.value.h_lo > 0 and exc.value.h_hi > 0

    def test_unmodulated_driven_branch(self):
        # with delta = 0 both branches coincide and h is identically zero
        with pytest.raises(BracketError):
            alpha_threshold(threshold_config(), driven=Modulation(0.0, 5.0))

    def test_grid_too_short(self):
        cfg = threshold_config().with_(**{"t_max": 2.0, "n_samples": 201})
        with pytest.raises(GridExtensionError):
            alpha_threshold(cfg, alpha_bracket=(1e-3, 1e-2))
