#include "persistlab/model_core.hpp"

#include <cmath>

namespace persistlab {

namespace {
void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw NonFiniteError(name);
}
}  // namespace

Rates validate_rates(const Rates& r, RateContext context) {
    check_finite(r.lambda, "lambda");
    check_finite(r.a, "a");
    check_finite(r.b, "b");
    if (r.lambda <= 0) throw NonPositiveRateError("lambda");
    if (r.b <= 0) throw NonPositiveRateError("b");
    // the closed forms stay meaningful at a = 0 (y(t) = e^{-bt}); the
    // theorem-level solvers do not.
    if (context == RateContext::Solver ? r.a <= 0 : r.a < 0)
        throw NonPositiveRateError("a");
    return r;
}

KillingSchedule KillingSchedule::deterministic(double period) {
    if (!std::isfinite(period)) throw NonFiniteError("period");
    if (period <= 0) throw NonPositiveRateError("period");
    return {Kind::DeterministicPeriod, period};
}

KillingSchedule KillingSchedule::poisson(double delta) {
    if (!std::isfinite(delta)) throw NonFiniteError("delta");
    if (delta <= 0) throw NonPositiveRateError("delta");
    return {Kind::PoissonIntensity, delta};
}

double KillingSchedule::next_gap(RngStream& rng) const {
    return kind == Kind::DeterministicPeriod ? param : rng.exponential(param);
}

std::vector<double> killing_times(const KillingSchedule& s, double horizon,
                                  RngStream& rng) {
    if (!(horizon > 0)) throw NonPositiveRateError("horizon");
    std::vector<double> times;
    if (s.kind == KillingSchedule::Kind::DeterministicPeriod) {
        // i*T rather than a running sum, so long horizons do not drift
        for (std::int64_t i = 1; static_cast<double>(i) * s.param <= horizon; ++i)
            times.push_back(static_cast<double>(i) * s.param);
    } else {
        for (double t = rng.exponential(s.param); t <= horizon;
             t += rng.exponential(s.param))
            times.push_back(t);
    }
    return times;
}

}  // namespace persistlab
