#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persistlab/critical_solver.hpp"
#include "persistlab/simulator.hpp"

namespace persistlab {

/// Grid sweeps behind the CLI commands. Cells are computed by index (possibly
/// in parallel) and reported in grid order, so output never depends on the
/// thread count.

struct TcGridCell {
    double lambda = 0;
    double a = 0;
    double b = 0;
    std::optional<double> tc;
    std::string error;  // empty on success
};

struct TcGridResult {
    std::vector<TcGridCell> cells;
    double min_tc = 0;
    double max_tc = 0;
    bool any_error = false;

    double ratio() const { return min_tc > 0 ? max_tc / min_tc : 0; }
};

/// Log-spaced grid over (a, b) at fixed lambda.
TcGridResult tc_grid(double lambda, std::pair<double, double> a_range,
                     std::pair<double, double> b_range, int a_points,
                     int b_points, double tol, int threads);

struct TcLambdaRow {
    double lambda = 0;
    std::optional<double> tc;
    std::string error;
};

/// Log-spaced lambda sweep at fixed (a, b).
std::vector<TcLambdaRow> tc_lambda(double a, double b,
                                   std::pair<double, double> lambda_range,
                                   int points, double tol, int threads);

struct MprimeRow {
    double delta = 0;
    double m_prime = 0;
    double lower_envelope = 0;
    double upper_envelope = 0;
};

/// Log-spaced delta sweep of m' with its envelope.
std::vector<MprimeRow> mprime_grid(const Rates& r,
                                   std::pair<double, double> delta_range,
                                   int points, const QuadratureSettings& q,
                                   int threads);

struct ReplicateOutcome {
    std::int64_t replicate = 0;
    bool survived = false;
    std::optional<int> extinct_epoch;
    std::int64_t final_n2 = 0;
    bool capped = false;
};

struct SurvivalRun {
    std::vector<ReplicateOutcome> outcomes;
    SurvivalEstimate estimate;
};

SurvivalRun survival_run(const Rates& r, const KillingSchedule& s,
                         std::int64_t reps, int epochs, Seed seed,
                         const SimLimits& limits, int threads);

struct CouplingSummary {
    std::int64_t reps = 0;
    std::int64_t used = 0;  // reps - discarded
    std::int64_t discarded = 0;
    std::int64_t alive_low = 0;
    std::int64_t alive_high = 0;
    std::int64_t violations = 0;
    double p_low = 0;
    double p_high = 0;
};

CouplingSummary coupling_check(const Rates& r, double delta, double delta_high,
                               double horizon, std::int64_t reps, Seed seed,
                               std::int64_t node_budget, int threads);

}  // namespace persistlab
