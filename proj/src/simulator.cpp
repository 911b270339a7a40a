#include "persistlab/simulator.hpp"

#include <cmath>
#include <thread>

namespace persistlab {

PopulationState run_interval(PopulationState state, const Rates& r,
                             double duration, RngStream& rng,
                             const SimLimits& limits) {
    validate_rates(r, RateContext::Solver);
    if (!(duration >= 0) || !std::isfinite(duration))
        throw NonFiniteError("duration");

    const double end = state.t + duration;
    while (true) {
        const double rate_n1 = (r.lambda + r.a) * static_cast<double>(state.n1);
        const double rate_n2 = r.b * static_cast<double>(state.n2);
        const double total = rate_n1 + rate_n2;
        if (total <= 0) break;  // empty population is absorbing

        // fixed per-event consumption order: time draw, then type draw
        const double dt = rng.exponential(total);
        const double u = rng.uniform() * total;
        if (state.t + dt > end) break;
        state.t += dt;

        if (u < r.lambda * static_cast<double>(state.n1)) {
            ++state.n1;  // birth
        } else if (u < rate_n1) {
            --state.n1;  // switch normal -> persistent
            ++state.n2;
        } else {
            --state.n2;  // switch persistent -> normal
            ++state.n1;
        }
        if (state.n1 + state.n2 >= limits.population_cap)
            throw PopulationCapError(state.n1, state.n2, state.t);
    }
    state.t = end;
    return state;
}

PopulationState apply_kill(PopulationState state) {
    state.n1 = 0;
    return state;
}

std::int64_t sample_offspring(const Rates& r, double T, RngStream& rng,
                              const SimLimits& limits) {
    if (!(T > 0)) throw NonPositiveRateError("T");
    PopulationState state{0, 1, 0};
    state = run_interval(state, r, T, rng, limits);
    return apply_kill(state).n2;
}

EpochTrace run_epochs(const Rates& r, const KillingSchedule& s,
                      std::int64_t init_n2, int max_epochs, RngStream& rng,
                      const SimLimits& limits) {
    if (init_n2 < 1) throw ValidationError("run_epochs: init_n2 must be >= 1");
    if (max_epochs < 1) throw ValidationError("run_epochs: max_epochs must be >= 1");

    EpochTrace trace;
    PopulationState state{0, init_n2, 0};
    for (int k = 0; k < max_epochs; ++k) {
        const double gap = s.next_gap(rng);
        if (s.kind == KillingSchedule::Kind::PoissonIntensity)
            trace.schedule_draws.push_back(gap);
        try {
            state = run_interval(state, r, gap, rng, limits);
        } catch (const PopulationCapError&) {
            trace.capped = true;  // explosion; classified as survival
            return trace;
        }
        state = apply_kill(state);
        trace.z.push_back(state.n2);
        if (state.n2 == 0) {
            trace.extinct_at = k;
            break;
        }
    }
    return trace;
}

namespace {

/// Runs fn(i) for i in [0, reps), chunked over `threads` workers. Each call
/// only touches its own replicate slot, so the schedule cannot matter.
template <typename Fn>
void parallel_replicates(std::int64_t reps, int threads, const Fn& fn) {
    if (threads <= 1) {
        for (std::int64_t i = 0; i < reps; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::int64_t chunk = (reps + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(reps, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            for (std::int64_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

MeanEstimate estimate_mean_offspring(const Rates& r, double T,
                                     std::int64_t reps, Seed seed,
                                     const SimLimits& limits, int threads) {
    if (reps < 100)
        throw ValidationError("estimate_mean_offspring: reps must be >= 100");
    validate_rates(r, RateContext::Solver);

    std::vector<std::int64_t> draws(static_cast<std::size_t>(reps));
    parallel_replicates(reps, threads, [&](std::int64_t i) {
        RngStream rng = RngStream::for_replicate(seed, static_cast<std::uint64_t>(i));
        draws[static_cast<std::size_t>(i)] = sample_offspring(r, T, rng, limits);
    });

    double sum = 0;
    for (auto v : draws) sum += static_cast<double>(v);
    const double mean = sum / static_cast<double>(reps);
    double ss = 0;
    for (auto v : draws) {
        const double d = static_cast<double>(v) - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(reps - 1);
    return {mean, std::sqrt(var / static_cast<double>(reps)), reps};
}

void wilson_interval(std::int64_t successes, std::int64_t n, double& lo,
                     double& hi) {
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    lo = std::fmax(0.0, center - half);
    hi = std::fmin(1.0, center + half);
}

SurvivalEstimate estimate_survival(const Rates& r, const KillingSchedule& s,
                                   std::int64_t reps, int max_epochs, Seed seed,
                                   const SimLimits& limits, int threads) {
    if (reps < 100)
        throw ValidationError("estimate_survival: reps must be >= 100");
    if (max_epochs < 1)
        throw ValidationError("estimate_survival: max_epochs must be >= 1");
    validate_rates(r, RateContext::Solver);

    std::vector<std::uint8_t> survived(static_cast<std::size_t>(reps), 0);
    std::vector<std::uint8_t> capped(static_cast<std::size_t>(reps), 0);
    parallel_replicates(reps, threads, [&](std::int64_t i) {
        RngStream rng = RngStream::for_replicate(seed, static_cast<std::uint64_t>(i));
        const EpochTrace trace = run_epochs(r, s, 1, max_epochs, rng, limits);
        const bool alive =
            trace.capped || (!trace.extinct_at.has_value() && !trace.z.empty() &&
                             trace.z.back() >= 1);
        survived[static_cast<std::size_t>(i)] = alive ? 1 : 0;
        capped[static_cast<std::size_t>(i)] = trace.capped ? 1 : 0;
    });

    SurvivalEstimate est;
    est.reps = reps;
    est.epochs = max_epochs;
    for (auto v : survived) est.survivors += v;
    for (auto v : capped) est.capped_reps += v;
    const double n = static_cast<double>(reps);
    est.p_hat = static_cast<double>(est.survivors) / n;
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);
    wilson_interval(est.survivors, reps, est.ci_lo, est.ci_hi);
    return est;
}

}  // namespace persistlab
