#include "persistlab/mean_dynamics.hpp"

#include <cmath>

namespace persistlab {

double saturation_threshold() {
    // half the representable exponent range: exp(709.78...) is DBL_MAX
    return 354.891;
}

SpectralData spectral(const Rates& r) {
    validate_rates(r, RateContext::Analytic);
    const double lambda = r.lambda, a = r.a, b = r.b;

    SpectralData sd;
    sd.rates = r;
    sd.disc = (a + b - lambda) * (a + b - lambda) + 4 * b * lambda;
    sd.sqrt_disc = std::hypot(a + b - lambda, 2 * std::sqrt(b) * std::sqrt(lambda));

    // Trace tr = nu1 + nu2; compute the eigenvalue that adds sqrt_disc to a
    // same-signed trace directly, the other from nu1*nu2 = -lambda*b.
    const double tr = lambda - a - b;
    if (tr >= 0) {
        sd.nu1 = 0.5 * (tr + sd.sqrt_disc);
        sd.nu2 = -lambda * b / sd.nu1;
    } else {
        sd.nu2 = 0.5 * (tr - sd.sqrt_disc);
        sd.nu1 = -lambda * b / sd.nu2;
    }

    // c2 = (sqrt_disc - (lambda + b - a)) / (2 sqrt_disc); rationalized with
    // disc - (lambda+b-a)^2 = 4ab so tiny a never cancels. Mirror form for c1
    // when lambda + b - a < 0.
    const double s = lambda + b - a;
    if (s >= 0) {
        sd.c2 = 2 * a * b / (sd.sqrt_disc * (sd.sqrt_disc + s));
        sd.c1 = 1 - sd.c2;
    } else {
        sd.c1 = 2 * a * b / (sd.sqrt_disc * (sd.sqrt_disc - s));
        sd.c2 = 1 - sd.c1;
    }
    return sd;
}

namespace {
void check_time(double t) {
    if (!(t >= 0) || !std::isfinite(t)) throw NonFiniteError("t");
}

double guarded_growth_exponent(const SpectralData& sd, double t) {
    const double e = sd.nu1 * t;
    if (e > saturation_threshold()) throw SaturationError(e);
    return e;
}
}  // namespace

double mean_persistent(const SpectralData& sd, double t) {
    check_time(t);
    const double e1 = guarded_growth_exponent(sd, t);
    return sd.c1 * std::exp(sd.nu2 * t) + sd.c2 * std::exp(e1);
}

double log_mean_persistent(const SpectralData& sd, double t) {
    check_time(t);
    // y(t) = e^{nu1 t} (c2 + c1 e^{-sqrt_disc * t}); nu1 - nu2 = sqrt_disc
    return sd.nu1 * t + std::log(sd.c2 + sd.c1 * std::exp(-sd.sqrt_disc * t));
}

double mean_normal(const SpectralData& sd, double t) {
    check_time(t);
    if (sd.rates.a == 0)
        throw DegenerateRateError("mean_normal requires a > 0");
    const double e1 = guarded_growth_exponent(sd, t);
    // Both closed-form coefficients reduce to b / sqrt_disc.
    return sd.rates.b * (std::exp(e1) - std::exp(sd.nu2 * t)) / sd.sqrt_disc;
}

double mean_persistent_deriv(const SpectralData& sd, double t, int order) {
    check_time(t);
    if (order != 1 && order != 2)
        throw ValidationError("mean_persistent_deriv: order must be 1 or 2");
    const double e1 = guarded_growth_exponent(sd, t);
    const double w2 = std::exp(sd.nu2 * t), w1 = std::exp(e1);
    if (order == 1) return sd.c1 * sd.nu2 * w2 + sd.c2 * sd.nu1 * w1;
    return sd.c1 * sd.nu2 * sd.nu2 * w2 + sd.c2 * sd.nu1 * sd.nu1 * w1;
}

Envelope envelope_bounds(const SpectralData& sd, double t) {
    check_time(t);
    const double w1 = std::exp(guarded_growth_exponent(sd, t));
    return {sd.c2 * w1, w1};
}

double y_min_time(const SpectralData& sd) {
    if (sd.c2 <= 0)
        throw DegenerateRateError("y_min_time requires a > 0");
    // root of y': c1*nu2*e^{nu2 t} + c2*nu1*e^{nu1 t} = 0
    return std::log(-sd.c1 * sd.nu2 / (sd.c2 * sd.nu1)) / sd.sqrt_disc;
}

double second_deriv_envelope_constant(const SpectralData& sd) {
    return 2 * std::fmax(sd.c1 * sd.nu2 * sd.nu2, sd.c2 * sd.nu1 * sd.nu1);
}

}  // namespace persistlab
