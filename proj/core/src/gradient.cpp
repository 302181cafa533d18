#include "egret/gradient.hpp"

#include <cmath>

#include "egret/errors.hpp"

namespace egret {

double update_utility(double utility, double throughput) {
    if (utility < 0.0) throw DomainError("update_utility: utility must be >= 0");
    if (throughput < 0.0) throw DomainError("update_utility: throughput must be >= 0");
    return utility / (1.0 + throughput * utility);
}

double GradientTable::get(NodeIndex anchor, NodeIndex neighbor, Direction dir) const {
    auto it = entries_.find({anchor, neighbor, static_cast<int>(dir)});
    return it == entries_.end() ? 0.0 : it->second;
}

void GradientTable::set(NodeIndex anchor, NodeIndex neighbor, Direction dir, double value) {
    if (value < 0.0) throw DomainError("GradientTable: gradient must be >= 0");
    entries_[{anchor, neighbor, static_cast<int>(dir)}] = value;
}

void update_gradients(GradientTable& table, NodeIndex anchor, Direction dir,
                      NodeIndex arrived_from, double decay_rate,
                      const std::map<NodeIndex, double>& deviations,
                      double reinforcement) {
    if (decay_rate < 0.0) throw DomainError("update_gradients: decay rate must be >= 0");
    if (reinforcement < 0.0) throw DomainError("update_gradients: reinforcement must be >= 0");
    if (!deviations.count(arrived_from))
        throw DomainError("update_gradients: arrival over an unknown neighbor");
    for (const auto& [neighbor, deviation] : deviations) {
        if (deviation < 0.0) throw DomainError("update_gradients: deviation must be >= 0");
        double g = table.get(anchor, neighbor, dir) * std::exp(-decay_rate * deviation);
        if (neighbor == arrived_from) g += reinforcement;
        table.set(anchor, neighbor, dir, g);
    }
}

namespace {

std::vector<double> offset_power_distribution(std::span<const double> gradients,
                                              const SelectionParams& params,
                                              const char* what) {
    if (gradients.empty()) throw DomainError(std::string(what) + ": no candidates");
    if (params.threshold < 0.0 || params.tuning < 0.0)
        throw DomainError(std::string(what) + ": selection parameters must be >= 0");
    std::vector<double> probs(gradients.size());
    double total = 0.0;
    for (std::size_t i = 0; i < gradients.size(); ++i) {
        if (gradients[i] < 0.0)
            throw DomainError(std::string(what) + ": gradients must be >= 0");
        probs[i] = std::pow(gradients[i] + params.threshold, params.tuning);
        total += probs[i];
    }
    if (total <= 0.0)
        throw DegenerateDistributionError(std::string(what) +
                                          ": all weights are zero with a zero threshold");
    for (double& p : probs) p /= total;
    return probs;
}

}  // namespace

std::vector<double> link_selection_probability(std::span<const double> gradients,
                                               const SelectionParams& params) {
    return offset_power_distribution(gradients, params, "link_selection_probability");
}

std::vector<double> source_selection_probability(std::span<const double> gradients,
                                                 const SelectionParams& params) {
    return offset_power_distribution(gradients, params, "source_selection_probability");
}

std::vector<double> normalized_selection_distribution(std::span<const double> forward,
                                                      std::span<const double> backward,
                                                      double source_weight) {
    if (forward.empty())
        throw DomainError("normalized_selection_distribution: no candidates");
    if (forward.size() != backward.size())
        throw DomainError("normalized_selection_distribution: candidate pairing mismatch");
    if (source_weight < 0.0)
        throw DomainError("normalized_selection_distribution: weight must be >= 0");
    std::vector<double> probs(forward.size());
    double total = 0.0;
    for (std::size_t i = 0; i < forward.size(); ++i) {
        if (forward[i] < 0.0 || backward[i] < 0.0)
            throw DomainError("normalized_selection_distribution: probabilities must be >= 0");
        if (backward[i] == 0.0 && source_weight > 0.0)
            throw SingularityError(
                "normalized_selection_distribution: zero backward probability with a "
                "positive source weight");
        probs[i] = forward[i] * std::pow(backward[i], -source_weight);
        total += probs[i];
    }
    if (total <= 0.0)
        throw DegenerateDistributionError("normalized_selection_distribution: no mass");
    for (double& p : probs) p /= total;
    return probs;
}

UtilityKernel kernel_estimate(UtilityKernel kernel, double sample, long long elapsed_rounds) {
    if (kernel.decay_exponent < 0.0)
        throw DomainError("kernel_estimate: decay exponent must be >= 0");
    if (sample < 0.0) throw DomainError("kernel_estimate: sample must be >= 0");
    if (elapsed_rounds < 0) throw DomainError("kernel_estimate: elapsed rounds must be >= 0");
    kernel.estimate = kernel.estimate *
                          std::exp(-kernel.decay_exponent * static_cast<double>(elapsed_rounds)) +
                      sample;
    kernel.last_round += elapsed_rounds;
    return kernel;
}

double correlation(double decay_rate, double lag) {
    if (decay_rate < 0.0) throw DomainError("correlation: decay rate must be >= 0");
    return std::exp(-decay_rate * std::abs(lag));
}

}  // namespace egret
