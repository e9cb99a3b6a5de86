import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fmqubit.config import (
    DephasingReservoir,
    DissipativeReservoir,
    InitialState,
    Modulation,
    SimulationConfig,
)
from fmqubit.dephasing import dephasing_exponent
from fmqubit.dissipative import solve_amplitude, thermal_decay
from fmqubit.dynamics import QubitTrajectory, combine, positivity_audit, simulate

DRIVEN = Modulation(2.40483, 5.0)


def small(**kw):
    base = dict(modulation=DRIVEN, t_max=20.0, n_samples=2001)
    base.update(kw)
    return SimulationConfig(**base)


class TestCombine:
    def test_channels_multiply(self):
        cfg = small(dissipative=DissipativeReservoir(R=10.0, tau1=2.6),
                    dephasing=DephasingReservoir(alpha=0.05, theta2=0.01))
        res = simulate(cfg)
        amp = np.abs(res.amplitude.c)
        expected = 0.5 * amp ** (2 * cfg.n_bar + 1) * np.exp(-res.dephasing.gamma_tilde)
        assert np.allclose(res.qubit.coherence_abs, expected, rtol=1e-13, atol=0)

    def test_dephasing_does_not_touch_populations(self):
        a = simulate(small(dephasing=DephasingReservoir(alpha=0.0)))
        b = simulate(small(dephasing=DephasingReservoir(alpha=0.7, theta2=0.5)))
        assert np.array_equal(a.qubit.pg, b.qubit.pg)
        assert np.all(b.qubit.coherence_abs <= a.qubit.coherence_abs + 1e-15)

    def test_pe_complements_pg(self):
        q = simulate(small()).qubit
        assert np.allclose(q.pe + q.pg, 1.0)

    def test_grid_mismatch(self):
        t1, t2 = np.linspace(0, 1, 11), np.linspace(0, 1, 12)
        amp = solve_amplitude(DRIVEN, 1.0, t1)
        rates = thermal_decay(amp, 0.0)
        deph = dephasing_exponent(DephasingReservoir(alpha=0.1), t2)
        with pytest.raises(ValueError):
            combine(amp, rates, deph, InitialState(), 0.0)

    def test_phase(self):
        cfg = small(omega0_over_gamma=3.0)
        q = simulate(cfg, with_phase=True).qubit
        t = cfg.times
        raw = 0.5 * (3.0 * t + 2.40483 * np.sin(5.0 * t))
        assert np.allclose(np.exp(1j * q.coherence_phase), np.exp(1j * raw))
        assert simulate(cfg).qubit.coherence_phase is None

    def test_initial_values(self):
        q = simulate(small(initial=InitialState(zeta0=0.3j, pg0=0.2))).qubit
        assert q.coherence_abs[0] == pytest.approx(0.3)
        assert q.pg[0] == pytest.approx(0.2)

    def test_invalid_config_rejected(self):
        from fmqubit.config import ConfigError

        with pytest.raises(ConfigError):
            simulate(small(dissipative=DissipativeReservoir(R=-1.0)))


class TestPositivity:
    def test_plus_state_ok(self):
        q = simulate(small(dephasing=DephasingReservoir(alpha=0.3, theta2=1.0))).qubit
        rep = positivity_audit(q)
        assert rep.ok and rep.n_violations == 0
        assert q.positivity_ok.all()

    def test_detects_violation(self):
        t = np.linspace(0, 1, 5)
        bad = QubitTrajectory(times=t, coherence_abs=np.full(5, 0.6), pg=np.full(5, 0.5),
                              positivity_ok=np.ones(5, bool))
        rep = positivity_audit(bad)
        assert not rep.ok and rep.n_violations == 5
        assert rep.worst_margin == pytest.approx(0.25 - 0.36)

    @given(
        R=st.floats(0.1, 100),
        tau1=st.floats(0, 300),
        alpha=st.floats(0, 1),
        theta2=st.floats(0, 1),
        pg0=st.floats(0, 1),
        frac=st.floats(0, 1),
        driven=st.booleans(),
    )
    def test_any_valid_state_stays_physical(self, R, tau1, alpha, theta2, pg0, frac, driven):
        z0 = frac * np.sqrt(pg0 * (1 - pg0))
        cfg = SimulationConfig(
            modulation=DRIVEN if driven else Modulation(0.0, 0.0),
            dissipative=DissipativeReservoir(R=R, tau1=tau1),
            dephasing=DephasingReservoir(alpha=alpha, theta2=theta2),
            initial=InitialState(zeta0=z0, pg0=pg0),
            t_max=6.0,
            n_samples=401,
        )
        rep = positivity_audit(simulate(cfg).qubit)
        assert rep.worst_margin >= -1e-10
