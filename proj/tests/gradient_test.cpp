#include "egret/gradient.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "egret/errors.hpp"
#include "egret/rng.hpp"

using namespace egret;

TEST_CASE("update_utility examples") {
    CHECK(update_utility(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(update_utility(0.0, 123.0) == 0.0);
    CHECK(update_utility(0.5, 4.0) == doctest::Approx(1.0 / 6.0));
    CHECK_THROWS_AS(update_utility(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(update_utility(1.0, -2.0), DomainError);
}

TEST_CASE("update_utility contracts toward zero") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const double lambda = uniform_range(rng, 1e-6, 10.0);
        const double b = uniform_range(rng, 1e-6, 10.0);
        const double next = update_utility(lambda, b);
        CHECK(next > 0.0);
        CHECK(next < lambda);
        // monotone decreasing in the throughput cost
        CHECK(update_utility(lambda, b + 1.0) < next);
    }
    double lambda = 1.0;
    for (int i = 0; i < 100000; ++i) lambda = update_utility(lambda, 1.0);
    CHECK(lambda < 1e-4);
}

TEST_CASE("update_gradients reinforces the arrival and decays the rest") {
    GradientTable table(0);
    table.set(9, 1, Direction::TowardSource, 1.0);  // arrival neighbor
    table.set(9, 2, Direction::TowardSource, 2.0);  // bystander neighbor

    const std::map<NodeIndex, double> deviations{{1, 0.0}, {2, std::log(2.0)}};
    update_gradients(table, 9, Direction::TowardSource, 1, 1.0, deviations, 0.5);
    CHECK(table.get(9, 1, Direction::TowardSource) == doctest::Approx(1.5));
    CHECK(table.get(9, 2, Direction::TowardSource) == doctest::Approx(1.0));
}

TEST_CASE("update_gradients with a vanishing decay term keeps only the reinforcement") {
    GradientTable table(0);
    table.set(9, 1, Direction::TowardSource, 1.0);
    update_gradients(table, 9, Direction::TowardSource, 1, 1.0, {{1, 50.0}}, 0.3);
    CHECK(table.get(9, 1, Direction::TowardSource) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("update_gradients edge cases") {
    GradientTable table(0);
    table.set(9, 1, Direction::TowardSource, 1.0);
    CHECK_THROWS_AS(
        update_gradients(table, 9, Direction::TowardSource, 5, 1.0, {{1, 0.0}}, 0.5),
        DomainError);  // arrival over an unknown neighbor

    // zero decay and zero reinforcement leave the table unchanged
    GradientTable idle(0);
    idle.set(9, 1, Direction::TowardSource, 0.75);
    idle.set(9, 2, Direction::TowardSource, 0.25);
    update_gradients(idle, 9, Direction::TowardSource, 1, 0.0, {{1, 3.0}, {2, 4.0}}, 0.0);
    CHECK(idle.get(9, 1, Direction::TowardSource) == 0.75);
    CHECK(idle.get(9, 2, Direction::TowardSource) == 0.25);

    // non-negativity under random updates
    std::mt19937_64 rng(3);
    GradientTable rnd(0);
    for (int i = 0; i < 200; ++i) {
        const NodeIndex from = static_cast<NodeIndex>(uniform_index(rng, 3)) + 1;
        update_gradients(rnd, 9, Direction::TowardSource, from, uniform_range(rng, 0, 2),
                         {{1, uniform_range(rng, 0, 5)},
                          {2, uniform_range(rng, 0, 5)},
                          {3, uniform_range(rng, 0, 5)}},
                         uniform_range(rng, 0, 1));
        for (NodeIndex nb = 1; nb <= 3; ++nb)
            CHECK(rnd.get(9, nb, Direction::TowardSource) >= 0.0);
    }
}

TEST_CASE("kernel_estimate examples") {
    UtilityKernel cold{0.7, 0.0, 0};
    CHECK(kernel_estimate(cold, 1.0, 5).estimate == doctest::Approx(1.0));

    UtilityKernel warm{1.0, 1.0, 0};
    CHECK(kernel_estimate(warm, 0.0, 1).estimate == doctest::Approx(std::exp(-1.0)));

    UtilityKernel twice{0.5, 0.0, 0};
    twice = kernel_estimate(twice, 0.8, 0);
    twice = kernel_estimate(twice, 0.8, 0);
    CHECK(twice.estimate == doctest::Approx(1.6));  // no decay at zero lag

    CHECK_THROWS_AS(kernel_estimate(warm, -0.5, 1), DomainError);
    CHECK_THROWS_AS(kernel_estimate(warm, 0.5, -1), DomainError);
}

TEST_CASE("kernel impulse response autocorrelation matches the correlation function") {
    const double a = 0.25;
    std::vector<double> impulse;
    UtilityKernel k{a, 0.0, 0};
    k = kernel_estimate(k, 1.0, 0);
    impulse.push_back(k.estimate);
    for (int step = 1; step < 64; ++step) {
        k = kernel_estimate(k, 0.0, 1);
        impulse.push_back(k.estimate);
    }
    double r0 = 0.0;
    for (double h : impulse) r0 += h * h;
    for (int lag = 0; lag <= 8; ++lag) {
        double r = 0.0;
        for (std::size_t i = 0; i + lag < impulse.size(); ++i)
            r += impulse[i] * impulse[i + lag];
        CHECK(std::abs(r / r0 - correlation(a, lag)) < 1e-9);
    }
}

TEST_CASE("correlation function") {
    CHECK(correlation(3.7, 0.0) == 1.0);
    CHECK(correlation(1.0, 1.0) == doctest::Approx(0.367879441171442).epsilon(1e-12));
    CHECK(correlation(1.0, -1.0) == correlation(1.0, 1.0));
    CHECK_THROWS_AS(correlation(-1.0, 1.0), DomainError);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const double tau = uniform_range(rng, 0, 5);
        const double lag = uniform_range(rng, -10, 10);
        CHECK(correlation(tau, lag) == correlation(tau, -lag));
        CHECK(correlation(tau, lag) <= 1.0);
        CHECK(correlation(tau, lag) > 0.0);
        CHECK(correlation(tau, std::abs(lag) + 0.5) <= correlation(tau, lag));
    }
}

namespace {

void check_distribution(const std::vector<double>& p) {
    double sum = 0.0;
    for (double x : p) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        sum += x;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
}

}  // namespace

TEST_CASE("link selection probability examples") {
    SelectionParams flat{0.0, 1.0, 0.0};
    const double even[] = {1.0, 1.0};
    CHECK(link_selection_probability(even, flat) == std::vector<double>{0.5, 0.5});

    const double skewed[] = {3.0, 1.0};
    const auto p = link_selection_probability(skewed, flat);
    CHECK(p[0] == doctest::Approx(0.75));
    CHECK(p[1] == doctest::Approx(0.25));

    SelectionParams zero_tuning{0.7, 0.0, 0.0};
    const double any[] = {9.0, 0.1, 4.0, 0.0};
    for (double q : link_selection_probability(any, zero_tuning))
        CHECK(q == doctest::Approx(0.25));
}

TEST_CASE("source selection probability examples") {
    SelectionParams flat{0.0, 1.0, 0.0};
    const double even[] = {2.0, 2.0};
    CHECK(source_selection_probability(even, flat) == std::vector<double>{0.5, 0.5});

    const double dead[] = {2.0, 0.0};
    CHECK(source_selection_probability(dead, flat) == std::vector<double>{1.0, 0.0});

    SelectionParams offset{1.0, 2.0, 0.0};
    const double pair[] = {2.0, 1.0};
    const auto p = source_selection_probability(pair, offset);
    CHECK(p[0] == doctest::Approx(9.0 / 13.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(4.0 / 13.0).epsilon(1e-12));
}

TEST_CASE("selection distributions normalize and reject degenerate input") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + uniform_index(rng, 6);
        std::vector<double> g(n);
        for (double& x : g) x = uniform_range(rng, 0, 10);
        SelectionParams params{uniform_range(rng, 0, 5), uniform_range(rng, 0, 4), 0.0};
        if (params.threshold == 0.0) params.threshold = 0.5;
        check_distribution(link_selection_probability(g, params));
    }
    const double zeros[] = {0.0, 0.0, 0.0};
    SelectionParams no_offset{0.0, 1.0, 0.0};
    CHECK_THROWS_AS(link_selection_probability(zeros, no_offset),
                    DegenerateDistributionError);
    const double negative[] = {-1.0, 2.0};
    CHECK_THROWS_AS(link_selection_probability(negative, no_offset), DomainError);
    const std::vector<double> empty;
    CHECK_THROWS_AS(link_selection_probability(empty, no_offset), DomainError);
}

TEST_CASE("scaling all gradients leaves the distribution invariant at zero offset") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + uniform_index(rng, 5);
        std::vector<double> g(n), scaled(n);
        const double c = uniform_range(rng, 0.1, 50.0);
        for (std::size_t j = 0; j < n; ++j) {
            g[j] = uniform_range(rng, 0.01, 10.0);
            scaled[j] = c * g[j];
        }
        SelectionParams params{0.0, uniform_range(rng, 0.1, 4.0), 0.0};
        const auto p = link_selection_probability(g, params);
        const auto q = link_selection_probability(scaled, params);
        for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(p[j] - q[j]) < 1e-12);
    }
}

TEST_CASE("normalized selection distribution") {
    const double fwd[] = {0.75, 0.25};
    const double back[] = {0.5, 0.5};

    // zero source weight reduces to the normalized forward distribution
    const auto plain = normalized_selection_distribution(fwd, back, 0.0);
    CHECK(plain[0] == doctest::Approx(0.75));
    CHECK(plain[1] == doctest::Approx(0.25));

    // a constant backward factor cancels under normalization
    const auto weighted = normalized_selection_distribution(fwd, back, 1.0);
    CHECK(weighted[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(weighted[1] == doctest::Approx(0.25).epsilon(1e-12));

    // fully symmetric candidates give a uniform distribution
    const double sym[] = {0.25, 0.25, 0.25, 0.25};
    for (double p : normalized_selection_distribution(sym, sym, 2.0))
        CHECK(p == doctest::Approx(0.25));

    // an uneven backward pairing does reweight
    const double back2[] = {0.8, 0.2};
    const auto skew = normalized_selection_distribution(fwd, back2, 1.0);
    CHECK(skew[0] == doctest::Approx((0.75 / 0.8) / (0.75 / 0.8 + 0.25 / 0.2)));

    const double dead[] = {0.5, 0.0};
    CHECK_THROWS_AS(normalized_selection_distribution(fwd, dead, 1.0), SingularityError);
    CHECK_NOTHROW(normalized_selection_distribution(fwd, dead, 0.0));
    const double three[] = {0.2, 0.3, 0.5};
    CHECK_THROWS_AS(normalized_selection_distribution(fwd, three, 1.0), DomainError);
}
