#pragma once

#include <cmath>
#include <functional>

#include "persistlab/errors.hpp"

namespace persistlab {

struct RootResult {
    double root = 0;
    double lo = 0;
    double hi = 0;
    int iterations = 0;
};

/// Brent's method on [lo, hi]; f(lo) and f(hi) must straddle zero.
/// Stops when the bracket is below xtol (plus machine slack).
inline RootResult brent_root(const std::function<double(double)>& f, double lo,
                             double hi, double xtol, int max_iter = 200) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0) return {a, a, a, 0};
    if (fb == 0) return {b, b, b, 0};
    if ((fa > 0) == (fb > 0))
        throw BracketFailureError("brent_root: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0)
            return {b, std::fmin(b, c), std::fmax(b, c), iter};
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * xm * q - std::fabs(tol1 * q),
                                    std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw BracketFailureError("brent_root: iteration limit reached");
}

}  // namespace persistlab
