#include "persistlab/critical_solver.hpp"

#include <cmath>
#include <vector>

#include "persistlab/roots.hpp"

namespace persistlab {

CriticalResult find_tc(const Rates& r, double tol) {
    validate_rates(r, RateContext::Solver);
    if (!(tol > 0)) throw ValidationError("find_tc: tol must be > 0");
    const SpectralData sd = spectral(r);

    // y has its unique minimum at t*, with y(t*) < y(0) = 1 and y increasing
    // afterwards, so the root of ln y lives in [t*, hi] for the first hi with
    // y(hi) > 1. ln-scale evaluation keeps the search saturation-free.
    const double t_star = y_min_time(sd);
    double lo = t_star;
    double hi = t_star;
    int doublings = 0;
    while (log_mean_persistent(sd, hi) <= 0) {
        lo = hi;
        hi *= 2;
        if (++doublings > 200)
            throw BracketFailureError("find_tc: no sign change found");
    }

    RootResult root = brent_root(
        [&](double t) { return log_mean_persistent(sd, t); }, lo, hi, tol);
    CriticalResult res;
    res.value = root.root;
    res.bracket_lo = root.lo;
    res.bracket_hi = root.hi;
    res.residual = std::fabs(mean_persistent(sd, root.root) - 1.0);
    res.iterations = root.iterations;
    return res;
}

double tc_closed_form_balanced(const Rates& r) {
    validate_rates(r, RateContext::Solver);
    if (std::fabs(r.lambda - r.a - r.b) > 1e-12 * r.lambda)
        throw NotBalancedError("tc_closed_form_balanced requires lambda = a + b");
    const double sl = std::sqrt(r.lambda), sb = std::sqrt(r.b);
    return std::log((sl + sb) / (sl - sb)) / (sb * sl);
}

Envelope m_prime_envelope(const SpectralData& sd, double delta) {
    const double upper = sd.nu1 / delta;
    return {std::log(sd.c2) + upper, upper};
}

double m_prime_large_delta_bound(const SpectralData& sd, double delta) {
    if (!(delta > sd.nu1))
        throw ValidationError("m_prime_large_delta_bound requires delta > nu1");
    const double k = second_deriv_envelope_constant(sd);
    const double shrink = 1.0 - sd.nu1 / delta;
    return -sd.rates.b / delta + (2.0 * k / (delta * delta)) / (shrink * shrink * shrink);
}

namespace {

double m_prime_impl(const SpectralData& sd, double delta,
                    const QuadratureSettings& q) {
    const double result = integrate_exp_weight(
        [&](double u) { return log_mean_persistent(sd, u / delta); }, q);
    const Envelope env = m_prime_envelope(sd, delta);
    const double slack = 1e-6 * (1.0 + std::fabs(result));
    if (result < env.lower - slack || result > env.upper + slack)
        throw QuadratureDivergenceError(
            "m_prime: converged value escaped its analytic envelope");
    return result;
}

}  // namespace

double m_prime(const Rates& r, double delta, const QuadratureSettings& q) {
    validate_rates(r, RateContext::Solver);
    if (!(delta > 0) || !std::isfinite(delta))
        throw NonPositiveRateError("delta");
    return m_prime_impl(spectral(r), delta, q);
}

double delta_c_lower_bound(const Rates& r) {
    validate_rates(r, RateContext::Solver);
    const SpectralData sd = spectral(r);
    return -sd.nu1 / std::log(sd.c2);
}

CriticalResult find_delta_c(const Rates& r, double tol,
                            const QuadratureSettings& q) {
    validate_rates(r, RateContext::Solver);
    if (!(tol > 0)) throw ValidationError("find_delta_c: tol must be > 0");
    const SpectralData sd = spectral(r);
    int evals = 0;
    auto mp = [&](double delta) {
        ++evals;
        return m_prime_impl(sd, delta, q);
    };

    // m' > 0 below the survival bound; above it, the first doubled intensity
    // whose explicit upper bound is negative certifies m' < 0.
    const double lo0 = -sd.nu1 / std::log(sd.c2);
    double hi0 = std::fmax(2.0 * sd.nu1, 2.0 * lo0);
    int doublings = 0;
    while (m_prime_large_delta_bound(sd, hi0) >= 0) {
        hi0 *= 2;
        if (++doublings > 200)
            throw BracketFailureError("find_delta_c: upper bound never negative");
    }

    // coarse geometric scan: locate the first sign-change interval and note
    // whether more than one shows up
    std::vector<double> grid{lo0};
    for (double d = lo0 * 1.5; d < hi0; d *= 1.5) grid.push_back(d);
    grid.push_back(hi0);

    CriticalResult res;
    double lo = lo0, hi = hi0;
    double prev = mp(grid[0]);
    if (prev <= 0)
        throw BracketFailureError("find_delta_c: m' not positive at the lower bound");
    int changes = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = mp(grid[i]);
        if ((prev > 0) != (cur > 0)) {
            if (changes == 0) {
                lo = grid[i - 1];
                hi = grid[i];
            }
            ++changes;
        }
        prev = cur;
    }
    if (changes == 0)
        throw BracketFailureError("find_delta_c: no sign change in bracket");
    res.multiple_sign_changes = changes > 1;

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mp(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    res.value = 0.5 * (lo + hi);
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.residual = std::fabs(mp(res.value));
    res.iterations = evals;
    return res;
}

AbsLogMean abs_log_mean(const Rates& r, double delta,
                        const QuadratureSettings& q) {
    validate_rates(r, RateContext::Solver);
    if (!(delta > 0) || !std::isfinite(delta))
        throw NonPositiveRateError("delta");
    const SpectralData sd = spectral(r);
    const double tc = find_tc(r).value;

    AbsLogMean out;
    // below T_c, ln y < 0: integrate its negative against delta e^{-delta t}
    out.head = integrate_interval(
        [&](double t) {
            return -log_mean_persistent(sd, t) * delta * std::exp(-delta * t);
        },
        0.0, tc, q);
    // above T_c, substitute t = T_c + u/delta to land on the e^{-u} weight
    out.tail = std::exp(-delta * tc) *
               integrate_exp_weight(
                   [&](double u) {
                       return log_mean_persistent(sd, tc + u / delta);
                   },
                   q);
    out.total = out.head + out.tail;
    return out;
}

}  // namespace persistlab
