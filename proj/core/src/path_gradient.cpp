#include "egret/path_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "egret/errors.hpp"

namespace egret {

void update_endpoint_gradient(std::span<PathGradientState> paths, const ArrivalRates& rates,
                              double endpoint_decay, Endpoint endpoint,
                              const SelectionParams& selection) {
    if (paths.empty()) throw DomainError("update_endpoint_gradient: no paths");
    if (rates.at_a < 0.0 || rates.at_b < 0.0)
        throw DomainError("update_endpoint_gradient: rates must be >= 0");
    if (endpoint_decay < 0.0)
        throw DomainError("update_endpoint_gradient: decay rate must be >= 0");
    const double total = rates.total();
    if (total <= 0.0) throw DomainError("update_endpoint_gradient: zero total rate");

    // Selection probabilities of the far endpoint, from its current gradients.
    std::vector<double> far(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i)
        far[i] = endpoint == Endpoint::A ? paths[i].gradient_b : paths[i].gradient_a;
    const std::vector<double> pr = link_selection_probability(far, selection);

    const double retention = total / (total + endpoint_decay);
    const double far_share = (endpoint == Endpoint::A ? rates.at_b : rates.at_a) / total;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (endpoint == Endpoint::A) {
            paths[i].gradient_a =
                retention * paths[i].gradient_a + far_share * pr[i] * paths[i].mean_received_a;
        } else {
            paths[i].gradient_b =
                retention * paths[i].gradient_b + far_share * pr[i] * paths[i].mean_received_b;
        }
    }
}

double mean_path_gradient(const ArrivalRates& rates, double endpoint_decay,
                          double mean_received, Endpoint endpoint) {
    if (rates.at_a < 0.0 || rates.at_b < 0.0)
        throw DomainError("mean_path_gradient: rates must be >= 0");
    if (mean_received < 0.0) throw DomainError("mean_path_gradient: mean must be >= 0");
    const double total = rates.total();
    if (total <= 0.0) throw DomainError("mean_path_gradient: zero total rate");
    if (endpoint_decay <= 0.0)
        throw DivergenceError("mean_path_gradient: pole at zero decay rate");
    const double far_rate = endpoint == Endpoint::A ? rates.at_b : rates.at_a;
    return (total + endpoint_decay) * far_rate / (total * endpoint_decay) * mean_received;
}

int select_optimal_path(std::span<const PathGradientState> paths, Endpoint endpoint) {
    if (paths.empty()) throw DomainError("select_optimal_path: no paths");
    std::size_t best = 0;
    for (std::size_t i = 1; i < paths.size(); ++i) {
        const double g = endpoint == Endpoint::A ? paths[i].gradient_a : paths[i].gradient_b;
        const double gb = endpoint == Endpoint::A ? paths[best].gradient_a : paths[best].gradient_b;
        if (g > gb || (g == gb && paths[i].path_id < paths[best].path_id)) best = i;
    }
    return static_cast<int>(best);
}

int select_optimal_path(std::span<const double> gradients) {
    if (gradients.empty()) throw DomainError("select_optimal_path: no paths");
    std::size_t best = 0;
    for (std::size_t i = 1; i < gradients.size(); ++i)
        if (gradients[i] > gradients[best]) best = i;
    return static_cast<int>(best);
}

double decay_rate_from_threshold(double threshold, double expected_gradient, double gap) {
    if (threshold <= 0.0 || expected_gradient <= 0.0 || gap <= 0.0)
        throw DomainError("decay_rate_from_threshold: arguments must be > 0");
    return -std::log(threshold / (expected_gradient * gap));
}

double optimal_decay_estimator(double correlation_value, double gap) {
    if (correlation_value <= 0.0 || correlation_value > 1.0)
        throw DomainError("optimal_decay_estimator: correlation must be in (0,1]");
    if (gap <= 0.0) throw DomainError("optimal_decay_estimator: gap must be > 0");
    return -std::log(correlation_value) / gap;
}

double threshold_at_optimal_decay(double total_rate, double optimal_decay,
                                  double mean_received, double gap) {
    if (total_rate <= 0.0) throw DomainError("threshold_at_optimal_decay: rate must be > 0");
    if (mean_received < 0.0 || gap < 0.0)
        throw DomainError("threshold_at_optimal_decay: arguments must be >= 0");
    if (optimal_decay <= 0.0)
        throw DivergenceError("threshold_at_optimal_decay: pole at zero decay rate");
    return (total_rate + optimal_decay) / (2.0 * optimal_decay) * mean_received *
           std::exp(-optimal_decay * gap);
}

double throughput_gap(double expected, double current) {
    if (expected < 0.0 || current < 0.0)
        throw DomainError("throughput_gap: throughputs must be >= 0");
    return std::abs(expected - current);
}

ExpectedThroughput::ExpectedThroughput(double constant) : constant_(true), fixed_(constant) {
    if (constant < 0.0) throw DomainError("ExpectedThroughput: must be >= 0");
}

void ExpectedThroughput::observe(double throughput) {
    if (throughput < 0.0) throw DomainError("ExpectedThroughput: must be >= 0");
    if (!constant_) mean_.add(throughput);
}

double ExpectedThroughput::value() const { return constant_ ? fixed_ : mean_.value; }

double path_throughput(const QuantumNetwork& net, const EntangledPath& path) {
    if (path.links.empty()) throw DomainError("path_throughput: empty path");
    double bottleneck = std::numeric_limits<double>::infinity();
    for (LinkIndex e : path.links) bottleneck = std::min(bottleneck, net.link(e).throughput);
    return bottleneck;
}

std::vector<double> static_path_scores(const QuantumNetwork& net,
                                       std::span<const EntangledPath> paths,
                                       NodeIndex source, NodeIndex target,
                                       const SelectionParams& selection) {
    if (paths.empty()) return {};
    std::vector<PathGradientState> states(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        states[i].path_id = static_cast<int>(i);
        double sum = 0.0;
        for (LinkIndex e : paths[i].links)
            sum += update_utility(net.link(e).utility, net.link(e).throughput);
        states[i].mean_received_a = paths[i].links.empty()
                                        ? 0.0
                                        : sum / static_cast<double>(paths[i].links.size());
        states[i].throughput = path_throughput(net, paths[i]);
    }
    const ArrivalRates rates{net.node(source).observation_rate,
                             net.node(target).observation_rate};
    update_endpoint_gradient(states, rates, net.node(source).decay_rate, Endpoint::A, selection);
    std::vector<double> scores(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) scores[i] = states[i].gradient_a;
    return scores;
}

}  // namespace egret
