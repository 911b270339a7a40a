#include "persistlab/sweeps.hpp"

#include <cmath>
#include <thread>

#include "persistlab/graphical.hpp"

namespace persistlab {

namespace {

std::vector<double> log_space(std::pair<double, double> range, int points) {
    if (!(range.first > 0) || !(range.second > 0))
        throw ValidationError("log-spaced ranges must be positive");
    if (points < 1) throw ValidationError("grid needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = range.first;
        return out;
    }
    const double lo = std::log(range.first), hi = std::log(range.second);
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(lo + (hi - lo) * i / (points - 1));
    return out;
}

template <typename Fn>
void parallel_indices(std::int64_t count, int threads, const Fn& fn) {
    if (threads <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::int64_t chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            for (std::int64_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

TcGridResult tc_grid(double lambda, std::pair<double, double> a_range,
                     std::pair<double, double> b_range, int a_points,
                     int b_points, double tol, int threads) {
    const std::vector<double> as = log_space(a_range, a_points);
    const std::vector<double> bs = log_space(b_range, b_points);

    TcGridResult result;
    result.cells.resize(as.size() * bs.size());
    parallel_indices(static_cast<std::int64_t>(result.cells.size()), threads,
                     [&](std::int64_t idx) {
                         const std::size_t i = static_cast<std::size_t>(idx);
                         TcGridCell& cell = result.cells[i];
                         cell.lambda = lambda;
                         cell.a = as[i / bs.size()];
                         cell.b = bs[i % bs.size()];
                         try {
                             cell.tc = find_tc({lambda, cell.a, cell.b}, tol).value;
                         } catch (const Error& e) {
                             cell.error = e.what();
                         }
                     });

    result.min_tc = std::numeric_limits<double>::infinity();
    result.max_tc = 0;
    for (const TcGridCell& cell : result.cells) {
        if (!cell.tc) {
            result.any_error = true;
            continue;
        }
        result.min_tc = std::fmin(result.min_tc, *cell.tc);
        result.max_tc = std::fmax(result.max_tc, *cell.tc);
    }
    if (!std::isfinite(result.min_tc)) result.min_tc = 0;
    return result;
}

std::vector<TcLambdaRow> tc_lambda(double a, double b,
                                   std::pair<double, double> lambda_range,
                                   int points, double tol, int threads) {
    const std::vector<double> lambdas = log_space(lambda_range, points);
    std::vector<TcLambdaRow> rows(lambdas.size());
    parallel_indices(static_cast<std::int64_t>(rows.size()), threads,
                     [&](std::int64_t idx) {
                         const std::size_t i = static_cast<std::size_t>(idx);
                         rows[i].lambda = lambdas[i];
                         try {
                             rows[i].tc = find_tc({lambdas[i], a, b}, tol).value;
                         } catch (const Error& e) {
                             rows[i].error = e.what();
                         }
                     });
    return rows;
}

std::vector<MprimeRow> mprime_grid(const Rates& r,
                                   std::pair<double, double> delta_range,
                                   int points, const QuadratureSettings& q,
                                   int threads) {
    validate_rates(r, RateContext::Solver);
    const SpectralData sd = spectral(r);
    const std::vector<double> deltas = log_space(delta_range, points);
    std::vector<MprimeRow> rows(deltas.size());

    std::exception_ptr failure;
    std::mutex failure_mtx;
    parallel_indices(static_cast<std::int64_t>(rows.size()), threads,
                     [&](std::int64_t idx) {
                         const std::size_t i = static_cast<std::size_t>(idx);
                         MprimeRow& row = rows[i];
                         row.delta = deltas[i];
                         const Envelope env = m_prime_envelope(sd, row.delta);
                         row.lower_envelope = env.lower;
                         row.upper_envelope = env.upper;
                         try {
                             row.m_prime = m_prime(r, row.delta, q);
                         } catch (...) {
                             std::lock_guard<std::mutex> lock(failure_mtx);
                             if (!failure) failure = std::current_exception();
                         }
                     });
    if (failure) std::rethrow_exception(failure);
    return rows;
}

SurvivalRun survival_run(const Rates& r, const KillingSchedule& s,
                         std::int64_t reps, int epochs, Seed seed,
                         const SimLimits& limits, int threads) {
    validate_rates(r, RateContext::Solver);
    if (reps < 100) throw ValidationError("survival_run: reps must be >= 100");
    if (epochs < 1) throw ValidationError("survival_run: epochs must be >= 1");

    SurvivalRun run;
    run.outcomes.resize(static_cast<std::size_t>(reps));
    parallel_indices(reps, threads, [&](std::int64_t i) {
        RngStream rng = RngStream::for_replicate(seed, static_cast<std::uint64_t>(i));
        const EpochTrace trace = run_epochs(r, s, 1, epochs, rng, limits);
        ReplicateOutcome& o = run.outcomes[static_cast<std::size_t>(i)];
        o.replicate = i;
        o.capped = trace.capped;
        o.extinct_epoch = trace.extinct_at;
        o.final_n2 = trace.z.empty() ? 0 : trace.z.back();
        o.survived = trace.capped ||
                     (!trace.extinct_at.has_value() && !trace.z.empty() &&
                      trace.z.back() >= 1);
    });

    SurvivalEstimate& est = run.estimate;
    est.reps = reps;
    est.epochs = epochs;
    for (const ReplicateOutcome& o : run.outcomes) {
        est.survivors += o.survived ? 1 : 0;
        est.capped_reps += o.capped ? 1 : 0;
    }
    est.p_hat = static_cast<double>(est.survivors) / static_cast<double>(reps);
    est.std_error =
        std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(reps));
    wilson_interval(est.survivors, reps, est.ci_lo, est.ci_hi);
    return run;
}

CouplingSummary coupling_check(const Rates& r, double delta, double delta_high,
                               double horizon, std::int64_t reps, Seed seed,
                               std::int64_t node_budget, int threads) {
    if (reps < 1) throw ValidationError("coupling_check: reps must be >= 1");
    CouplingLimits limits;
    limits.node_budget = node_budget;

    std::vector<CoupledOutcome> outcomes(static_cast<std::size_t>(reps));
    parallel_indices(reps, threads, [&](std::int64_t i) {
        RngStream rng = RngStream::for_replicate(seed, static_cast<std::uint64_t>(i));
        outcomes[static_cast<std::size_t>(i)] =
            coupled_run(r, delta, delta_high, horizon, rng, limits);
    });

    CouplingSummary sum;
    sum.reps = reps;
    for (const CoupledOutcome& o : outcomes) {
        sum.violations += o.violations;
        if (o.discarded) {
            ++sum.discarded;
            continue;
        }
        ++sum.used;
        sum.alive_low += o.alive_low ? 1 : 0;
        sum.alive_high += o.alive_high ? 1 : 0;
    }
    if (sum.used > 0) {
        sum.p_low = static_cast<double>(sum.alive_low) / static_cast<double>(sum.used);
        sum.p_high =
            static_cast<double>(sum.alive_high) / static_cast<double>(sum.used);
    }
    return sum;
}

}  // namespace persistlab
