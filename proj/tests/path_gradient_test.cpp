#include "egret/path_gradient.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "egret/errors.hpp"
#include "egret/rng.hpp"

using namespace egret;

TEST_CASE("endpoint gradient update from a cold start") {
    // one path, far endpoint selects it with unit probability
    std::vector<PathGradientState> paths(1);
    paths[0].mean_received_a = 1.0;
    const ArrivalRates rates{2.0, 2.0};  // total 4, far endpoint 2
    update_endpoint_gradient(paths, rates, 1.0, Endpoint::A, SelectionParams{1.0, 1.0, 0.0});
    CHECK(paths[0].gradient_a == doctest::Approx(0.5));  // (4/5)*0 + (2/4)*1*1
}

TEST_CASE("endpoint gradient update retains under zero decay and zero inflow") {
    std::vector<PathGradientState> paths(1);
    paths[0].gradient_a = 0.625;
    update_endpoint_gradient(paths, ArrivalRates{1.0, 3.0}, 0.0, Endpoint::A,
                             SelectionParams{1.0, 1.0, 0.0});
    CHECK(paths[0].gradient_a == doctest::Approx(0.625));
}

TEST_CASE("identical paths update identically") {
    std::vector<PathGradientState> paths(2);
    for (auto& p : paths) {
        p.gradient_a = 0.4;
        p.gradient_b = 0.2;
        p.mean_received_a = 1.5;
    }
    paths[0].path_id = 0;
    paths[1].path_id = 1;
    update_endpoint_gradient(paths, ArrivalRates{3.0, 1.0}, 0.7, Endpoint::A,
                             SelectionParams{1.0, 2.0, 0.0});
    CHECK(paths[0].gradient_a == paths[1].gradient_a);

    std::vector<PathGradientState> none;
    CHECK_THROWS_AS(update_endpoint_gradient(none, ArrivalRates{1, 1}, 1.0, Endpoint::A,
                                             SelectionParams{}),
                    DomainError);
    CHECK_THROWS_AS(update_endpoint_gradient(paths, ArrivalRates{0, 0}, 1.0, Endpoint::A,
                                             SelectionParams{}),
                    DomainError);
}

TEST_CASE("mean path gradient closed form") {
    const ArrivalRates rates{2.0, 2.0};  // total 4, far endpoint 2
    CHECK(mean_path_gradient(rates, 2.0, 1.0, Endpoint::A) == doctest::Approx(1.5));
    CHECK(mean_path_gradient(rates, 1.0, 1.0, Endpoint::A) == doctest::Approx(2.5));
    CHECK(mean_path_gradient(rates, 5.0, 0.0, Endpoint::A) == 0.0);
    CHECK_THROWS_AS(mean_path_gradient(rates, 0.0, 1.0, Endpoint::A), DivergenceError);

    // endpoint B uses the rate at A as the far rate
    const ArrivalRates uneven{3.0, 1.0};
    CHECK(mean_path_gradient(uneven, 2.0, 1.0, Endpoint::B) ==
          doctest::Approx((4.0 + 2.0) * 3.0 / (4.0 * 2.0)));
}

TEST_CASE("mean path gradient is linear in the mean and decreasing in the decay") {
    std::mt19937_64 rng(13);
    const ArrivalRates rates{2.5, 1.5};
    for (int i = 0; i < 100; ++i) {
        const double tau = uniform_range(rng, 0.05, 8.0);
        const double mu = uniform_range(rng, 0.0, 5.0);
        const double scale = uniform_range(rng, 0.1, 9.0);
        const double base = mean_path_gradient(rates, tau, mu, Endpoint::A);
        CHECK(mean_path_gradient(rates, tau, scale * mu, Endpoint::A) ==
              doctest::Approx(scale * base).epsilon(1e-12));
        CHECK(mean_path_gradient(rates, tau + 0.5, 1.0, Endpoint::A) <
              mean_path_gradient(rates, tau, 1.0, Endpoint::A));
    }
}

TEST_CASE("endpoint gradient iteration converges to the closed-form mean") {
    // unit selection probability, fixed inflow; stationary point of the update
    std::vector<PathGradientState> paths(1);
    paths[0].mean_received_a = 1.0;
    const ArrivalRates rates{2.0, 2.0};
    const double tau = 2.0;
    for (int i = 0; i < 200; ++i)
        update_endpoint_gradient(paths, rates, tau, Endpoint::A, SelectionParams{1, 1, 0});
    const double stationary = mean_path_gradient(rates, tau, 1.0, Endpoint::A);
    CHECK(std::abs(paths[0].gradient_a - stationary) < 1e-9);
}

TEST_CASE("optimal path selection") {
    std::vector<PathGradientState> one(1);
    one[0].gradient_a = 1.0;
    CHECK(select_optimal_path(one) == 0);

    std::vector<PathGradientState> three(3);
    three[0].gradient_a = 0.2;
    three[1].gradient_a = 0.9;
    three[2].gradient_a = 0.5;
    for (int i = 0; i < 3; ++i) three[i].path_id = i;
    CHECK(select_optimal_path(three) == 1);

    std::vector<PathGradientState> tie(2);
    tie[0].gradient_a = 0.7;
    tie[1].gradient_a = 0.7;
    tie[0].path_id = 0;
    tie[1].path_id = 1;
    const int chosen = select_optimal_path(tie);
    CHECK(chosen == 0);
    // exhaustive check of the tie-break rule
    for (const auto& p : tie) CHECK(p.gradient_a <= tie[chosen].gradient_a);

    std::vector<PathGradientState> none;
    CHECK_THROWS_AS(select_optimal_path(none), DomainError);
}

TEST_CASE("optimal path selection is invariant under positive affine rescaling") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + uniform_index(rng, 6);
        std::vector<PathGradientState> a(n), b(n);
        const double scale = uniform_range(rng, 0.1, 10.0);
        const double shift = uniform_range(rng, 0.0, 5.0);
        for (std::size_t j = 0; j < n; ++j) {
            a[j].path_id = b[j].path_id = static_cast<int>(j);
            a[j].gradient_a = uniform_range(rng, 0, 10);
            b[j].gradient_a = scale * a[j].gradient_a + shift;
        }
        CHECK(select_optimal_path(a) == select_optimal_path(b));
    }
}

TEST_CASE("decay rate from threshold") {
    CHECK(decay_rate_from_threshold(1.0, 2.0, 1.0) == doctest::Approx(std::log(2.0)));
    CHECK(decay_rate_from_threshold(6.0, 2.0, 3.0) == doctest::Approx(0.0));
    CHECK(decay_rate_from_threshold(1.0, 2.0, 1e8) ==
          doctest::Approx(19.113827924512311).epsilon(1e-12));
    CHECK_THROWS_AS(decay_rate_from_threshold(0.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(decay_rate_from_threshold(1.0, -2.0, 1.0), DomainError);
    CHECK_THROWS_AS(decay_rate_from_threshold(1.0, 2.0, 0.0), DomainError);

    // strictly increasing in the gap
    double prev = decay_rate_from_threshold(1.0, 2.0, 0.5);
    for (double gap = 1.0; gap < 1e6; gap *= 3.0) {
        const double cur = decay_rate_from_threshold(1.0, 2.0, gap);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("optimal decay estimator") {
    CHECK(optimal_decay_estimator(std::exp(-2.0), 2.0) == doctest::Approx(1.0));
    CHECK(optimal_decay_estimator(1.0, 17.0) == 0.0);
    CHECK(optimal_decay_estimator(0.5, 1.0) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(optimal_decay_estimator(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(optimal_decay_estimator(1.5, 1.0), DomainError);
    CHECK_THROWS_AS(optimal_decay_estimator(0.5, 0.0), DomainError);
}

TEST_CASE("estimator round-trips the correlation sample") {
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double tau = 0.1 * std::pow(100.0, i / 9.0);
            const double gap = 0.01 * std::pow(10000.0, j / 9.0);
            const double y = std::exp(-tau * gap);
            if (y <= 0.0) continue;  // underflow leaves the estimator domain
            CHECK(std::abs(optimal_decay_estimator(y, gap) - tau) < 1e-12);
        }
    }
}

TEST_CASE("threshold at the optimal decay rate") {
    CHECK(threshold_at_optimal_decay(4.0, 1.0, 1.0, 0.0) == doctest::Approx(2.5));
    CHECK(threshold_at_optimal_decay(4.0, 1.0, 0.0, 3.0) == 0.0);
    CHECK(threshold_at_optimal_decay(4.0, 1.0, 1.0, std::log(2.0)) == doctest::Approx(1.25));
    CHECK_THROWS_AS(threshold_at_optimal_decay(4.0, 0.0, 1.0, 1.0), DivergenceError);
    CHECK_THROWS_AS(threshold_at_optimal_decay(0.0, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("throughput gap and bottleneck path throughput") {
    CHECK(throughput_gap(5.0, 3.0) == 2.0);
    CHECK(throughput_gap(3.0, 5.0) == 2.0);
    CHECK_THROWS_AS(throughput_gap(-1.0, 2.0), DomainError);

    QuantumNetwork net;
    net.add_node("a", 1, 1);
    net.add_node("b", 1, 1);
    net.add_node("c", 1, 1);
    net.add_link("a", "b", 1, 7.0, 1.0);
    net.add_link("b", "c", 1, 2.0, 1.0);
    const NodeIndex chain[] = {0, 1, 2};
    CHECK(path_throughput(net, make_path(net, chain)) == 2.0);
}

TEST_CASE("running mean") {
    RunningMean mean;
    mean.add(1.0);
    mean.add(2.0);
    mean.add(6.0);
    CHECK(mean.count == 3);
    CHECK(mean.value == doctest::Approx(3.0));
}

TEST_CASE("expected throughput modes") {
    ExpectedThroughput constant(4.5);
    constant.observe(100.0);  // constants do not drift
    CHECK(constant.value() == 4.5);

    ExpectedThroughput running;
    CHECK(running.value() == 0.0);
    running.observe(2.0);
    running.observe(4.0);
    CHECK(running.value() == doctest::Approx(3.0));
    CHECK(throughput_gap(running.value(), 5.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(ExpectedThroughput(-1.0), DomainError);
}

TEST_CASE("endpoint update at B mirrors A under swapped rates") {
    std::vector<PathGradientState> at_a(1), at_b(1);
    at_a[0].gradient_a = 0.3;
    at_a[0].mean_received_a = 1.2;
    at_b[0].gradient_b = 0.3;
    at_b[0].mean_received_b = 1.2;
    const SelectionParams sel{1.0, 1.0, 0.0};
    update_endpoint_gradient(at_a, ArrivalRates{1.0, 3.0}, 0.8, Endpoint::A, sel);
    update_endpoint_gradient(at_b, ArrivalRates{3.0, 1.0}, 0.8, Endpoint::B, sel);
    CHECK(at_a[0].gradient_a == at_b[0].gradient_b);
}
