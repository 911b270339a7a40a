#pragma once

#include <cstdint>
#include <vector>

#include "persistlab/errors.hpp"
#include "persistlab/rng.hpp"

namespace persistlab {

/// Transition rates of the two-state model: normal (state 1) bacteria give
/// birth at rate `lambda` and switch to the persistent state at rate `a`;
/// persistent (state 2) bacteria switch back at rate `b` and do nothing else.
struct Rates {
    double lambda = 0;
    double a = 0;
    double b = 0;
};

/// Which positivity contract applies. Solvers and simulators require
/// lambda, a, b > 0; analytic (closed-form) evaluation additionally accepts
/// the degenerate boundary a = 0, used as a test oracle (y(t) = e^{-bt}).
enum class RateContext { Solver, Analytic };

/// Returns `r` unchanged if it satisfies the contract for `context`; throws
/// NonPositiveRateError / NonFiniteError otherwise.
Rates validate_rates(const Rates& r, RateContext context);

/// Mass-killing schedule: either a fixed period T (killings at T, 2T, 3T, ...)
/// or a Poisson stream of intensity delta (i.i.d. exponential gaps).
struct KillingSchedule {
    enum class Kind { DeterministicPeriod, PoissonIntensity };

    Kind kind = Kind::DeterministicPeriod;
    double param = 1.0;  // period T, or intensity delta

    static KillingSchedule deterministic(double period);
    static KillingSchedule poisson(double delta);

    /// Time until the next killing; consumes one draw for the Poisson
    /// variant and none for the deterministic one.
    double next_gap(RngStream& rng) const;
};

/// Materializes every killing time in (0, horizon]. Diagnostic helper; the
/// simulator generates gaps lazily instead.
std::vector<double> killing_times(const KillingSchedule& s, double horizon,
                                  RngStream& rng);

/// Counts of normal (n1) and persistent (n2) bacteria at elapsed time t.
struct PopulationState {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    double t = 0;
};

}  // namespace persistlab
