#pragma once

#include <optional>
#include <vector>

#include "persistlab/model_core.hpp"

namespace persistlab {

struct SimLimits {
    std::int64_t population_cap = 100'000'000;
};

/// Evolves the population exactly, event by event, for `duration` time units
/// with no killing: competing exponential clocks for birth (lambda*n1),
/// switch-out (a*n1) and switch-back (b*n2). Each event consumes a time draw
/// then an event-type draw, in that order. Throws PopulationCapError when the
/// total count would pass the cap.
PopulationState run_interval(PopulationState state, const Rates& r,
                             double duration, RngStream& rng,
                             const SimLimits& limits = {});

/// A killing: every normal bacterium dies, persistents are untouched.
PopulationState apply_kill(PopulationState state);

/// One Galton-Watson offspring draw: evolve (0,1) for duration T, kill,
/// return the persistent count.
std::int64_t sample_offspring(const Rates& r, double T, RngStream& rng,
                              const SimLimits& limits = {});

/// Persistent counts Z_0, Z_1, ... recorded immediately after successive
/// killings, starting from (0, init_n2) just after a killing.
struct EpochTrace {
    std::vector<std::int64_t> z;
    std::optional<int> extinct_at;       // first epoch with Z == 0
    std::vector<double> schedule_draws;  // realized gaps (random schedule only)
    bool capped = false;                 // population cap hit => survived
};

EpochTrace run_epochs(const Rates& r, const KillingSchedule& s,
                      std::int64_t init_n2, int max_epochs, RngStream& rng,
                      const SimLimits& limits = {});

struct MeanEstimate {
    double mean = 0;
    double std_error = 0;
    std::int64_t reps = 0;
};

/// Sample mean/stderr of sample_offspring over `reps` replicates, replicate i
/// on stream (seed, i). Thread count never changes the result.
MeanEstimate estimate_mean_offspring(const Rates& r, double T,
                                     std::int64_t reps, Seed seed,
                                     const SimLimits& limits = {},
                                     int threads = 1);

/// Monte Carlo survival-probability estimate with Wilson 95% interval.
/// Censored at `epochs` killings: alive means Z_epochs >= 1 (or the
/// population cap was hit, recorded in capped_reps). The finite-epoch proxy
/// upper-bounds the true survival probability in expectation.
struct SurvivalEstimate {
    double p_hat = 0;
    double std_error = 0;
    double ci_lo = 0;
    double ci_hi = 0;
    std::int64_t reps = 0;
    int epochs = 0;
    std::int64_t survivors = 0;
    std::int64_t capped_reps = 0;
    static constexpr const char* alive_definition = "Z_epochs >= 1";
};

SurvivalEstimate estimate_survival(const Rates& r, const KillingSchedule& s,
                                   std::int64_t reps, int max_epochs, Seed seed,
                                   const SimLimits& limits = {},
                                   int threads = 1);

/// Wilson 95% score interval for s successes out of n.
void wilson_interval(std::int64_t successes, std::int64_t n, double& lo,
                     double& hi);

}  // namespace persistlab
