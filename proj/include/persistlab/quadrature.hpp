#pragma once

#include <functional>
#include <vector>

#include "persistlab/errors.hpp"

namespace persistlab {

/// Controls for the adaptive quadratures: start at node_count nodes and keep
/// doubling until two successive results agree to refinement_tolerance
/// (relative), giving up after max_refinements doublings.
struct QuadratureSettings {
    int node_count = 64;
    double refinement_tolerance = 1e-9;
    int max_refinements = 9;
};

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Laguerre rule: sum w_i f(x_i) ~= int_0^inf f(u) e^{-u} du.
/// Nodes/weights come from the Golub-Welsch Jacobi matrix, solved with an
/// implicit-shift QL sweep that tracks only the eigenvectors' first
/// components; stable for n in the thousands where Newton-on-L_n overflows.
const QuadRule& gauss_laguerre(int n);

/// n-point Gauss-Legendre rule on [-1, 1].
const QuadRule& gauss_legendre(int n);

/// Adaptive integral of f against the e^{-u} weight on [0, inf).
double integrate_exp_weight(const std::function<double(double)>& f,
                            const QuadratureSettings& q);

/// Adaptive integral of f on the finite interval [a, b].
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, const QuadratureSettings& q);

}  // namespace persistlab
