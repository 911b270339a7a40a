#pragma once

#include "persistlab/mean_dynamics.hpp"
#include "persistlab/quadrature.hpp"

namespace persistlab {

/// Result of a bracketed threshold search.
struct CriticalResult {
    double value = 0;
    double bracket_lo = 0;
    double bracket_hi = 0;
    double residual = 0;      // |target function at value|
    int iterations = 0;
    bool multiple_sign_changes = false;  // anomaly flag; see find_delta_c
};

/// Critical period T_c: the unique t > 0 with y(t) = 1. Bracketing starts at
/// the minimum point t* of y and doubles the upper endpoint until y > 1.
CriticalResult find_tc(const Rates& r, double tol = 1e-10);

/// Closed form for the trace-zero family lambda = a + b:
/// T_c = ln((sqrt(lambda)+sqrt(b)) / (sqrt(lambda)-sqrt(b))) / sqrt(b*lambda).
/// Throws NotBalancedError unless |lambda - a - b| <= 1e-12 * lambda.
double tc_closed_form_balanced(const Rates& r);

/// m'(delta) = E[ln y(T)] with T ~ exponential(delta), computed as
/// int_0^inf ln y(u/delta) e^{-u} du by adaptive Gauss-Laguerre. The result
/// is checked against the analytic envelope [ln c2 + nu1/delta, nu1/delta];
/// an out-of-envelope result raises QuadratureDivergenceError.
double m_prime(const Rates& r, double delta, const QuadratureSettings& q = {});

/// Envelope for m'(delta): lower = ln c2 + nu1/delta, upper = nu1/delta.
Envelope m_prime_envelope(const SpectralData& sd, double delta);

/// Explicit large-delta upper bound -b/delta + (2K/delta^2)/(1-nu1/delta)^3
/// with K = 2 max(c1 nu2^2, c2 nu1^2); valid for delta > nu1.
double m_prime_large_delta_bound(const SpectralData& sd, double delta);

/// -nu1 / ln c2: below this intensity m' > 0, so delta_c is at least this.
double delta_c_lower_bound(const Rates& r);

/// Critical Poisson intensity delta_c: the sign change of delta -> m'(delta).
/// The initial bracket is [delta_c_lower_bound, first doubled delta where the
/// large-delta bound is negative]; a coarse scan locates the sign-change
/// interval (flagging an anomaly if more than one appears) before bisection.
CriticalResult find_delta_c(const Rates& r, double tol = 1e-6,
                            const QuadratureSettings& q = {});

/// E|ln y(T)| split at T_c: head = integral below T_c where ln y < 0 (sign
/// flipped), tail = integral above. tail <= nu1/delta.
struct AbsLogMean {
    double head = 0;
    double tail = 0;
    double total = 0;
};

AbsLogMean abs_log_mean(const Rates& r, double delta,
                        const QuadratureSettings& q = {});

}  // namespace persistlab
