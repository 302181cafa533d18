#pragma once

#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "egret/network.hpp"

namespace egret {

// One traversal update of a link's utility: the throughput acts as a cost
// added to the inverse utility, so the result is lambda / (1 + B * lambda).
// Always in [0, lambda]; zero is an absorbing fixed point.
double update_utility(double utility, double throughput);

enum class Direction { TowardSource, TowardDestination };

// Per-node gradient store. An entry (anchor, neighbor, direction) holds the
// non-negative attractiveness of stepping to `neighbor` with respect to the
// route anchored at `anchor` (the source for TowardSource entries, the
// destination for TowardDestination ones). Absent entries read as zero.
class GradientTable {
public:
    explicit GradientTable(NodeIndex owner) : owner_(owner) {}

    NodeIndex owner() const { return owner_; }
    double get(NodeIndex anchor, NodeIndex neighbor, Direction dir) const;
    void set(NodeIndex anchor, NodeIndex neighbor, Direction dir, double value);
    std::size_t size() const { return entries_.size(); }

    bool operator==(const GradientTable&) const = default;

private:
    NodeIndex owner_;
    std::map<std::tuple<NodeIndex, NodeIndex, int>, double> entries_;
};

// Applies one arrival at the table's owner to the (anchor, dir) slice: the
// entry for `arrived_from` is decayed by exp(-decay_rate * deviation) and
// reinforced by `reinforcement` (the just-updated utility of the traversed
// link); every other neighbor in `deviations` is only decayed.
void update_gradients(GradientTable& table, NodeIndex anchor, Direction dir,
                      NodeIndex arrived_from, double decay_rate,
                      const std::map<NodeIndex, double>& deviations,
                      double reinforcement);

struct SelectionParams {
    double threshold = 1.0;     // additive offset, >= 0; keeps cold tables usable
    double tuning = 1.0;        // exponent, >= 0; 0 gives a uniform choice
    double source_weight = 0.0; // exponent on the backward probability, >= 0
};

// Pr(z) = (G_z + threshold)^tuning / sum_k (G_k + threshold)^tuning over the
// toward-destination gradients of the candidates. All-zero mass is an error.
std::vector<double> link_selection_probability(std::span<const double> gradients,
                                               const SelectionParams& params);

// Same form over toward-source gradients (the reverse-direction selection).
std::vector<double> source_selection_probability(std::span<const double> gradients,
                                                 const SelectionParams& params);

// Forward selection probability re-weighted by the paired backward
// probability raised to -source_weight, renormalized over the candidates.
// A zero backward probability with a positive weight is a singularity.
std::vector<double> normalized_selection_distribution(std::span<const double> forward,
                                                      std::span<const double> backward,
                                                      double source_weight);

// Discrete exponential estimator of the utility process. Each observation
// decays the running estimate by exp(-decay_exponent * elapsed) and adds the
// sample; the impulse response is the one-sided exponential window and its
// normalized autocorrelation at lag dT is exp(-decay_exponent * |dT|).
struct UtilityKernel {
    double decay_exponent = 0.0;  // decay rate times throughput deviation, >= 0
    double estimate = 0.0;
    long long last_round = 0;

    bool operator==(const UtilityKernel&) const = default;
};

UtilityKernel kernel_estimate(UtilityKernel kernel, double sample, long long elapsed_rounds);

// exp(-decay_rate * |lag|), the stationary correlation of the utility process.
double correlation(double decay_rate, double lag);

}  // namespace egret
