#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "persistlab/model_core.hpp"

namespace testutil {

struct Stats {
    double mean = 0;
    double sd = 0;
    double se = 0;
    std::int64_t n = 0;
};

inline Stats summarize(const std::vector<double>& xs) {
    Stats s;
    s.n = static_cast<std::int64_t>(xs.size());
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    return s;
}

/// Log-uniform draw on [lo, hi].
inline double log_uniform(persistlab::RngStream& rng, double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

/// Random solver-valid rate triple spanning several magnitudes.
inline persistlab::Rates random_rates(persistlab::RngStream& rng) {
    return {log_uniform(rng, 0.1, 10.0), log_uniform(rng, 1e-4, 5.0),
            log_uniform(rng, 1e-4, 5.0)};
}

// Frozen oracle values (high-precision evaluation of the closed forms and
// quadratures, recorded before the implementation was written).
namespace oracle {
inline constexpr double tc_211 = 1.2464504802804610;
inline constexpr double t_star_211 = 0.62322524014023051;
inline constexpr double y_025 = 0.80791277793751572;
inline constexpr double y_05 = 0.71787101588505262;
inline constexpr double y_1 = 0.80988468459998018;
inline constexpr double y_2 = 2.5281550054895910;
inline constexpr double x_025 = 0.25524098246625488;
inline constexpr double x_05 = 0.54272082063630350;
inline constexpr double x_1 = 1.3682988720085907;
inline constexpr double x_2 = 5.9608122070703355;
inline constexpr double delta_c_lb_211 = 0.73614997440773955;
inline constexpr double delta_c_211 = 1.3490302996990987;
inline constexpr double k_211 = 3.4142135623730950;
inline constexpr double mprime_03 = 3.07495832832033;
inline constexpr double mprime_05 = 1.34088217515204;
inline constexpr double mprime_1 = 0.216607645474208;
inline constexpr double mprime_2 = -0.136880910686128;
inline constexpr double mprime_3 = -0.171027044521303;
inline constexpr double mprime_100 = -0.0098979808570259;
inline constexpr double large_delta_bound_100 = -0.00928734758184026;
inline constexpr double abs_log_mean_head_1 = 0.15677978632321682;
inline constexpr double abs_log_mean_tail_1 = 0.37338743179742462;
inline constexpr double abs_log_mean_total_1 = 0.53016721812064144;
inline constexpr double tc_fig2_point = 8.6797334839831815;  // (2, 1e-6, 1e-3)
inline constexpr double delta_c_lb_fig = 0.090454474944613;
inline constexpr double delta_c_fig = 0.7073582776531475;
inline constexpr double tc_balanced_11_01 = 1.8764935530982632;  // (1.1, 1, 0.1)
inline constexpr double y_07tc = 0.75150736158274906;
inline constexpr double y_15tc = 2.1213203435596426;
}  // namespace oracle

}  // namespace testutil
