"""Two-state bacterial persistence model laboratory.

Closed-form mean dynamics, critical-threshold solvers (T_c for periodic mass
killings, delta_c for Poisson killings), an exact event-driven simulator of
the branching dynamics, and the decimation-coupling construction that orders
survival probabilities across killing intensities.
"""

from persistlab._core import (
    CoupledOutcome,
    CouplingSummary,
    CriticalResult,
    EpochTrace,
    KillingSchedule,
    MeanEstimate,
    NumericalError,
    QuadratureSettings,
    Rates,
    SpectralData,
    SurvivalEstimate,
    ValidationError,
    __version__,
    abs_log_mean,
    coupled_run,
    coupling_check,
    decimate,
    delta_c_lower_bound,
    envelope_bounds,
    estimate_mean_offspring,
    estimate_survival,
    find_delta_c,
    find_tc,
    killing_times,
    log_mean_persistent,
    m_prime,
    mean_normal,
    mean_persistent,
    mean_persistent_deriv,
    run_epochs,
    sample_offspring,
    spectral,
    tc_closed_form_balanced,
    y_min_time,
)

__all__ = [
    "CoupledOutcome",
    "CouplingSummary",
    "CriticalResult",
    "EpochTrace",
    "KillingSchedule",
    "MeanEstimate",
    "NumericalError",
    "QuadratureSettings",
    "Rates",
    "SpectralData",
    "SurvivalEstimate",
    "ValidationError",
    "__version__",
    "abs_log_mean",
    "coupled_run",
    "coupling_check",
    "decimate",
    "delta_c_lower_bound",
    "envelope_bounds",
    "estimate_mean_offspring",
    "estimate_survival",
    "find_delta_c",
    "find_tc",
    "killing_times",
    "log_mean_persistent",
    "m_prime",
    "mean_normal",
    "mean_persistent",
    "mean_persistent_deriv",
    "run_epochs",
    "sample_offspring",
    "spectral",
    "tc_closed_form_balanced",
    "y_min_time",
]
