#pragma once

#include "persistlab/model_core.hpp"

namespace persistlab {

/// Eigenstructure of the mean ODE system
///   x' = (lambda - a) x + b y,   y' = a x - b y,
/// started from (x, y)(0) = (0, 1): one normal count expectation x(t) and one
/// persistent count expectation y(t).
///
/// disc = (a+b-lambda)^2 + 4*b*lambda, nu1 > 0 > nu2 its eigenvalue pair,
/// and y(t) = c1 e^{nu2 t} + c2 e^{nu1 t} with c1 + c2 = 1.
struct SpectralData {
    double disc = 0;
    double sqrt_disc = 0;
    double nu1 = 0;
    double nu2 = 0;
    double c1 = 0;
    double c2 = 0;
    Rates rates;
};

/// Computes SpectralData for analytic-context rates. c1/c2 use the
/// rationalized forms (e.g. c2 = 2ab / (sqrt_disc * (sqrt_disc + lambda+b-a)))
/// so tiny switch rates do not suffer cancellation, and one eigenvalue is
/// recovered from nu1*nu2 = -lambda*b so the product identity holds to
/// machine precision.
SpectralData spectral(const Rates& r);

/// Largest exponent nu1*t the exponential envelope may reach before
/// evaluation refuses with SaturationError (half the double exponent range).
double saturation_threshold();

/// y(t): expected persistent count at time t with no killing before t.
/// Throws SaturationError when nu1*t passes the threshold.
double mean_persistent(const SpectralData& sd, double t);

/// ln y(t), evaluated in saturation-free form
/// nu1*t + ln(c2 + c1*e^{-sqrt_disc*t}); valid for every t >= 0.
double log_mean_persistent(const SpectralData& sd, double t);

/// x(t): expected normal count at time t. Requires a > 0.
double mean_normal(const SpectralData& sd, double t);

/// d^order y/dt^order for order in {1, 2}.
double mean_persistent_deriv(const SpectralData& sd, double t, int order);

struct Envelope {
    double lower = 0;
    double upper = 0;
};

/// (c2 e^{nu1 t}, e^{nu1 t}); lower < y(t) <= upper for all t >= 0.
Envelope envelope_bounds(const SpectralData& sd, double t);

/// t*: the unique interior minimum of y, ln(-c1*nu2 / (c2*nu1)) / (nu1-nu2).
/// Requires a > 0 (c2 > 0). y decreases on (0, t*) and increases after.
double y_min_time(const SpectralData& sd);

/// K = 2 max(c1*nu2^2, c2*nu1^2): y''(t) <= K e^{nu1 t}.
double second_deriv_envelope_constant(const SpectralData& sd);

}  // namespace persistlab
