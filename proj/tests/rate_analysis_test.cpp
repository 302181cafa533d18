#include "egret/rate_analysis.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "doctest.h"
#include "egret/errors.hpp"
#include "egret/rng.hpp"
#include "oracles.hpp"

using namespace egret;

TEST_CASE("gradient gain and its two algebraic forms") {
    CHECK(gradient_gain(1e4, 1e3) == doctest::Approx(1e4 / 1.1e4));
    CHECK(gradient_gain(5.0, 0.0) == 1.0);
    CHECK_THROWS_AS(gradient_gain(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(gradient_gain(-1.0, 1.0), DomainError);

    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const double kappa = uniform_range(rng, 0.01, 1e6);
        const double tau = uniform_range(rng, 0.0, 1e5);
        const double direct = gradient_gain(kappa, tau);
        const double reciprocal = 1.0 / (1.0 + tau / kappa);
        CHECK(std::abs(direct - reciprocal) < 1e-12);
    }
}

TEST_CASE("response examples") {
    CHECK(response(0.0, 0.3) == doctest::Approx(1.0));
    CHECK(response(0.0, -2.0) == doctest::Approx(1.0));
    CHECK(response(0.5, 0.0) == doctest::Approx(2.0));
    CHECK(response(0.9, 0.0) == doctest::Approx(10.0));
    CHECK_THROWS_AS(response(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(response(-0.1, 0.0), DomainError);
}

TEST_CASE("response is even and peaks at zero with the closed-form peak") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
        const double gain = uniform_range(rng, 0.0, 0.99);
        const double angle = uniform_range(rng, -3.14159, 3.14159);
        CHECK(response(gain, angle) == response(gain, -angle));
        CHECK(response(gain, angle) <= peak_response(gain) + 1e-12);
    }
    for (double gain : {0.1, 0.5, 0.8, 0.9})
        CHECK(std::abs(response(gain, 0.0) - peak_response(gain)) < 1e-12);
}

TEST_CASE("response agrees with the complex magnitude form") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        const double gain = uniform_range(rng, 0.0, 0.99);
        const double angle = uniform_range(rng, -6.3, 6.3);
        const std::complex<double> f =
            1.0 / (1.0 - gain * std::exp(std::complex<double>(0.0, -angle)));
        CHECK(std::abs(response(gain, angle) - std::abs(f)) < 1e-12);
    }
}

TEST_CASE("peak mean gradient") {
    CHECK(peak_mean_gradient(3.0, 0.5) == doctest::Approx(6.0));
    CHECK(peak_mean_gradient(0.0, 0.77) == 0.0);
    CHECK(peak_mean_gradient(1.0, 0.9) == doctest::Approx(10.0));
    CHECK_THROWS_AS(peak_mean_gradient(1.0, 1.0), DivergenceError);
    CHECK_THROWS_AS(peak_mean_gradient(-1.0, 0.5), DomainError);
}

TEST_CASE("angular window enforcement") {
    CHECK(angle_bound(4.0) == doctest::Approx(2.0 * 3.14159265358979 / 4.0));
    CHECK_NOTHROW(response_at_node(4.0, 1.0, 1.5));
    CHECK_THROWS_AS(response_at_node(4.0, 1.0, 1.6), DomainError);
    CHECK_THROWS_AS(angle_bound(0.0), DomainError);
}

TEST_CASE("cutoff rate spot values") {
    CHECK(cutoff_rate(1e4, 0.0, 0.5) == 0.0);  // argument is exactly one
    // frozen from an extended-precision evaluation of the same closed form
    CHECK(cutoff_rate(1e4, 1e3, 0.5) == doctest::Approx(339.96543799839168).epsilon(1e-9));
    CHECK(cutoff_rate(1e4, 1e2, 0.5) == doctest::Approx(35.412240541048985).epsilon(1e-9));
    CHECK(std::abs(cutoff_rate(1e4, 1e3, 0.5) -
                   static_cast<double>(oracle::cutoff_rate_ld(1e4L, 1e3L, 0.5L))) < 1e-9);
}

TEST_CASE("cutoff rate is monotone in the decay rate over the valid region") {
    for (double kappa : {1e4, 1e5, 1e6}) {
        double prev = cutoff_rate(kappa, 0.0, 0.5);
        for (double tau = 50.0; tau <= 2000.0; tau += 50.0) {
            const double cur = cutoff_rate(kappa, tau, 0.5);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("response params bundle the derived quantities") {
    const ResponseParams node{1e4, 1e3, 0.5};
    CHECK(node.gain() == gradient_gain(1e4, 1e3));
    CHECK(node.window() == angle_bound(1e4));
    CHECK(node.cutoff() == cutoff_rate(1e4, 1e3, 0.5));
}

TEST_CASE("cutoff rate rejects out-of-range arguments and reports the value") {
    CHECK_THROWS_AS(cutoff_rate(10.0, 1e4, 0.5), DomainError);
    try {
        cutoff_rate(10.0, 1e4, 0.5);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("-1") != std::string::npos);
    }
    CHECK_THROWS_AS(cutoff_rate(0.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(cutoff_rate(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(cutoff_rate(1.0, 1.0, 1.5), DomainError);
}
