#pragma once

#include <span>
#include <vector>

#include "egret/gradient.hpp"
#include "egret/network.hpp"

namespace egret {

// Observation rates of the two route endpoints.
struct ArrivalRates {
    double at_a = 0.0;
    double at_b = 0.0;
    double total() const { return at_a + at_b; }

    bool operator==(const ArrivalRates&) const = default;
};

enum class Endpoint { A, B };

struct PathGradientState {
    int path_id = 0;
    double gradient_a = 0.0;       // endpoint gradient held at A
    double gradient_b = 0.0;       // endpoint gradient held at B
    double mean_received_a = 0.0;  // mean gradient delivered to A over this path
    double mean_received_b = 0.0;
    double throughput = 0.0;           // bottleneck throughput of the path
    double expected_throughput = 0.0;

    bool operator==(const PathGradientState&) const = default;
};

// One synchronous refresh of the endpoint gradients of all paths. Each path
// keeps a retained fraction total/(total + decay) of its gradient and gains
// the far endpoint's selection probability times its mean received gradient,
// scaled by the far endpoint's share of the total rate.
void update_endpoint_gradient(std::span<PathGradientState> paths, const ArrivalRates& rates,
                              double endpoint_decay, Endpoint endpoint,
                              const SelectionParams& selection);

// Stationary endpoint gradient when the path is always selected by the far
// endpoint: (total + decay) * far_rate / (total * decay) * mean_received.
// Diverges as the decay rate goes to zero.
double mean_path_gradient(const ArrivalRates& rates, double endpoint_decay,
                          double mean_received, Endpoint endpoint);

// Index of the path with the maximal updated endpoint gradient; ties resolve
// to the smallest path id.
int select_optimal_path(std::span<const PathGradientState> paths, Endpoint endpoint = Endpoint::A);
int select_optimal_path(std::span<const double> gradients);

// Decay rate that matches a gradient threshold at a given expected gradient
// and throughput gap: -ln(threshold / (expected * gap)).
double decay_rate_from_threshold(double threshold, double expected_gradient, double gap);

// Recovers the decay rate from an observed correlation sample over a gap:
// -ln(Y)/gap, with Y in (0, 1].
double optimal_decay_estimator(double correlation_value, double gap);

// Threshold implied by an estimated decay rate:
// (total + decay)/(2*decay) * mean_received * exp(-decay * gap).
double threshold_at_optimal_decay(double total_rate, double optimal_decay,
                                  double mean_received, double gap);

// |expected - current| throughput of a path.
double throughput_gap(double expected, double current);

// Bottleneck composition: the smallest link throughput along the path.
double path_throughput(const QuantumNetwork& net, const EntangledPath& path);

// Online estimator for the mean received gradient of a path or node.
struct RunningMean {
    long long count = 0;
    double value = 0.0;

    void add(double sample) {
        ++count;
        value += (sample - value) / static_cast<double>(count);
    }

    bool operator==(const RunningMean&) const = default;
};

// Expected path throughput, in one of two modes: a configured constant, or a
// running mean over observed path throughputs.
class ExpectedThroughput {
public:
    ExpectedThroughput() = default;                // running-mean mode
    explicit ExpectedThroughput(double constant);  // constant mode

    void observe(double throughput);  // ignored in constant mode
    double value() const;

private:
    bool constant_ = false;
    double fixed_ = 0.0;
    RunningMean mean_;
};

// Deterministic endpoint-gradient score of candidate paths computed from the
// static network alone: each path's mean received gradient is the average
// one-traversal utility of its links at their initial utilities. Used for
// route comparisons and baselines.
std::vector<double> static_path_scores(const QuantumNetwork& net,
                                       std::span<const EntangledPath> paths,
                                       NodeIndex source, NodeIndex target,
                                       const SelectionParams& selection);

}  // namespace egret
