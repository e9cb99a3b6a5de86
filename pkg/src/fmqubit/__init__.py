"""Exact reduced dynamics of a frequency-modulated qubit in thermal
dissipative and pure-dephasing baths, with coherence-time and
dephasing-threshold analysis."""

__version__ = "0.1.0"

from .analysis import (  # noqa: E402
    BracketError,
    Envelope,
    GridExtensionError,
    ThresholdResult,
    alpha_threshold,
    bessel_j0,
    coherence_time,
    envelope,
    j0_first_zero,
)
from .config import (  # noqa: E402
    ConfigError,
    DephasingReservoir,
    DissipativeReservoir,
    InitialState,
    Modulation,
    NumericOptions,
    SimulationConfig,
    mean_occupation,
    validate,
)
from .dephasing import (  # noqa: E402
    DephasingTrajectory,
    QuadratureError,
    dephasing_exponent,
    modulation_independence_certificate,
    ohmic_density,
)
from .dissipative import (  # noqa: E402
    AmplitudeTrajectory,
    DissipativeRates,
    SolverError,
    dissipative_observables,
    solve_amplitude,
    thermal_decay,
    volterra_oracle,
)
from .dynamics import QubitTrajectory, combine, positivity_audit, simulate  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]
