#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cauchywell/operator_closed.hpp"
#include "cauchywell/pv_quadrature.hpp"
#include "cauchywell/weighted.hpp"

using namespace cauchywell;

namespace {

std::function<double(double)> as_function(const WeightedPolynomial<double>& psi)
{
    return [psi](double x) { return evaluate(psi, x); };
}

}  // namespace

TEST_CASE("quadrature reproduces the image of the plain weight")
{
    // A_D sqrt(1-x^2) = 1 on the whole interval.
    WeightedPolynomial<double> psi{Parity::even, {1.0}};
    auto f = as_function(psi);
    for (double x : {0.0, 0.3, -0.7, 0.95}) {
        CHECK(apply_AD_numeric(f, x) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("quadrature reproduces the image of the odd weight")
{
    // A_D x sqrt(1-x^2) = 2x.
    WeightedPolynomial<double> psi{Parity::odd, {1.0}};
    auto f = as_function(psi);
    for (double x : {0.5, -0.25, 0.9}) {
        CHECK(apply_AD_numeric(f, x) == doctest::Approx(2.0 * x).epsilon(1e-9));
    }
}

TEST_CASE("quadrature agrees with the closed form on a low-degree pair")
{
    // A_D (1 - 0.4 x^2) sqrt(1-x^2) = 1.2 - 1.2 x^2.
    WeightedPolynomial<double> psi{Parity::even, {1.0, -0.4}};
    auto f = as_function(psi);
    for (double x : {0.1, 0.6, -0.85}) {
        const double expected = 1.2 - 1.2 * x * x;
        CHECK(apply_AD_numeric(f, x) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("quadrature agrees with the closed form on random polynomials")
{
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        const Parity parity = (trial % 2 == 0) ? Parity::even : Parity::odd;
        std::vector<double> alphas(1 + static_cast<std::size_t>(trial));
        for (auto& a : alphas) a = coeff(rng);
        WeightedPolynomial<double> psi{parity, alphas};
        const auto image = to_dense(apply_AD_closed(psi), parity);
        auto f = as_function(psi);
        for (double x : {0.2, -0.55, 0.92}) {
            CHECK(apply_AD_numeric(f, x) ==
                  doctest::Approx(image(x)).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("quadrature validates its inputs")
{
    WeightedPolynomial<double> psi{Parity::even, {1.0}};
    auto f = as_function(psi);
    CHECK_THROWS_AS(apply_AD_numeric(f, 1.0), std::domain_error);
    CHECK_THROWS_AS(apply_AD_numeric(f, -1.5), std::domain_error);

    PVQuadratureSettings bad;
    bad.epsilon_schedule = {};
    CHECK_THROWS_AS(apply_AD_numeric(f, 0.0, bad), std::invalid_argument);
    bad.epsilon_schedule = {0.25, 0.5};  // not decreasing
    CHECK_THROWS_AS(apply_AD_numeric(f, 0.0, bad), std::invalid_argument);
    bad.epsilon_schedule = {0.25};
    bad.panel_tolerance = 0.0;
    CHECK_THROWS_AS(apply_AD_numeric(f, 0.0, bad), std::invalid_argument);
}

TEST_CASE("quadrature failure carries the last two estimates")
{
    WeightedPolynomial<double> psi{Parity::even, {1.0, -0.4, 0.3}};
    auto f = as_function(psi);
    PVQuadratureSettings strict;
    strict.panel_tolerance = 1e-16;
    strict.max_depth = 0;
    try {
        apply_AD_numeric(f, 0.4, strict);
        FAIL("expected quadrature_error");
    } catch (const quadrature_error& e) {
        // The bisected estimate should refine the single-panel one.
        CHECK(std::isfinite(e.previous_estimate()));
        CHECK(std::isfinite(e.last_estimate()));
        CHECK(e.previous_estimate() != e.last_estimate());
    }
}
