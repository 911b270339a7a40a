#include <cmath>
#include <numeric>

#include "doctest.h"
#include "persistlab/quadrature.hpp"

using namespace persistlab;

TEST_CASE("gauss-laguerre integrates low-degree polynomials exactly") {
    const QuadRule& rule = gauss_laguerre(16);
    REQUIRE(rule.nodes.size() == 16);
    double total = 0, cube = 0;
    double prev = -1;
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(rule.nodes[i] > prev);
        CHECK(rule.weights[i] > 0);
        prev = rule.nodes[i];
        total += rule.weights[i];
        cube += rule.weights[i] * std::pow(rule.nodes[i], 3);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));   // int e^-u du
    CHECK(cube == doctest::Approx(6.0).epsilon(1e-12));    // int u^3 e^-u du
}

TEST_CASE("gauss-laguerre stays stable at thousands of nodes") {
    const QuadRule& rule = gauss_laguerre(2048);
    double total = 0, square = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(std::isfinite(rule.weights[i]));
        CHECK(rule.weights[i] >= 0);
        total += rule.weights[i];
        square += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(square == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gauss-legendre basics") {
    const QuadRule& rule = gauss_legendre(16);
    double total = 0, quartic = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        total += rule.weights[i];
        quartic += rule.weights[i] * std::pow(rule.nodes[i], 4);
    }
    CHECK(total == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(quartic == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("adaptive semi-infinite integral") {
    QuadratureSettings q;
    const double v =
        integrate_exp_weight([](double u) { return std::sin(u); }, q);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("adaptive finite interval integral") {
    QuadratureSettings q;
    const double pi = 3.14159265358979323846;
    const double v =
        integrate_interval([](double t) { return std::sin(t); }, 0, pi, q);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("refinement failure raises QuadratureDivergenceError") {
    QuadratureSettings q{16, 1e-15, 0};
    CHECK_THROWS_AS(
        integrate_exp_weight([](double u) { return std::log1p(u * u); }, q),
        QuadratureDivergenceError);
}

TEST_CASE("settings are validated") {
    CHECK_THROWS_AS(
        integrate_exp_weight([](double) { return 1.0; }, {8, 1e-9, 4}),
        ValidationError);
    CHECK_THROWS_AS(
        integrate_exp_weight([](double) { return 1.0; }, {16, -1.0, 4}),
        ValidationError);
}
