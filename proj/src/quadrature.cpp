#include "persistlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace persistlab {

namespace {

// Implicit-shift QL sweep for a symmetric tridiagonal matrix that carries
// the eigenvectors' first components along (EISPACK imtql2 lineage). On
// return d holds the eigenvalues ascending and z the matching first
// components. O(n) memory, so rules with thousands of nodes stay cheap.
void tridiag_eigen(std::vector<double>& d, std::vector<double>& e,
                   std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    const double eps = 2.220446049250313e-16;
    e.push_back(0.0);

    for (int l = 0; l < n; ++l) {
        int j = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m)
                if (std::fabs(e[m]) <=
                    eps * (std::fabs(d[m]) + std::fabs(d[m + 1])))
                    break;
            if (m == l) break;
            if (++j > 50)
                throw NumericalError("tridiag_eigen: QL sweep did not converge");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double bb = c * e[i];
                if (std::fabs(f) >= std::fabs(g)) {
                    c = g / f;
                    r = std::sqrt(c * c + 1.0);
                    e[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::sqrt(s * s + 1.0);
                    e[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // insertion sort by node, swapping first components along
    for (int i = 1; i < n; ++i) {
        const double dv = d[i], zv = z[i];
        int k = i - 1;
        for (; k >= 0 && d[k] > dv; --k) {
            d[k + 1] = d[k];
            z[k + 1] = z[k];
        }
        d[k + 1] = dv;
        z[k + 1] = zv;
    }
}

QuadRule golub_welsch(std::vector<double> diag, std::vector<double> offdiag,
                      double weight_total) {
    const std::size_t n = diag.size();
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    tridiag_eigen(diag, offdiag, z);
    QuadRule rule;
    rule.nodes = std::move(diag);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        rule.weights[i] = weight_total * z[i] * z[i];
    return rule;
}

const QuadRule& cached(std::map<int, QuadRule>& cache, std::mutex& mtx, int n,
                       QuadRule (*make)(int)) {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make(n)).first;
    return it->second;
}

QuadRule make_laguerre(int n) {
    std::vector<double> diag(n), off(n - 1);
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + 1.0;
    for (int k = 0; k + 1 < n; ++k) off[k] = static_cast<double>(k + 1);
    return golub_welsch(std::move(diag), std::move(off), 1.0);
}

QuadRule make_legendre(int n) {
    std::vector<double> diag(n, 0.0), off(n - 1);
    for (int k = 0; k + 1 < n; ++k) {
        const double kk = static_cast<double>(k + 1);
        off[k] = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    return golub_welsch(std::move(diag), std::move(off), 2.0);
}

void check_settings(const QuadratureSettings& q) {
    if (q.node_count < 16)
        throw ValidationError("QuadratureSettings: node_count must be >= 16");
    if (!(q.refinement_tolerance > 0))
        throw ValidationError("QuadratureSettings: tolerance must be > 0");
    if (q.max_refinements < 0)
        throw ValidationError("QuadratureSettings: max_refinements must be >= 0");
}

constexpr int kMaxNodes = 1 << 16;

}  // namespace

const QuadRule& gauss_laguerre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    return cached(cache, mtx, n, make_laguerre);
}

const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    return cached(cache, mtx, n, make_legendre);
}

namespace {

template <typename Eval>
double refine(const Eval& eval, const QuadratureSettings& q) {
    double prev = eval(q.node_count);
    int n = q.node_count;
    for (int step = 0; step < q.max_refinements; ++step) {
        if (n > kMaxNodes / 2) break;
        n *= 2;
        const double next = eval(n);
        if (std::fabs(next - prev) <=
            q.refinement_tolerance * std::fmax(1.0, std::fabs(next)))
            return next;
        prev = next;
    }
    throw QuadratureDivergenceError(
        "quadrature did not converge under node doubling");
}

}  // namespace

double integrate_exp_weight(const std::function<double(double)>& f,
                            const QuadratureSettings& q) {
    check_settings(q);
    return refine(
        [&](int n) {
            const QuadRule& rule = gauss_laguerre(n);
            double acc = 0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * f(rule.nodes[i]);
            return acc;
        },
        q);
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, const QuadratureSettings& q) {
    check_settings(q);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    return refine(
        [&](int n) {
            const QuadRule& rule = gauss_legendre(n);
            double acc = 0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
            return acc * half;
        },
        q);
}

}  // namespace persistlab
