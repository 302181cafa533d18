#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "egret/gradient.hpp"
#include "egret/network.hpp"

namespace egret {

// Which form of the candidate distance is used when weighting a step: the
// definitional form divides the mean-gradient difference by the link
// selection probability; the alternate form multiplies by it.
enum class PsiForm { InverseProbability, Probability };

struct RoutingParams {
    int threads = 16;       // number of parallel search threads
    int node_budget = 16;   // max distinct nodes a thread may explore
    double decay_rate = 0.5;  // gradient decay applied per traversal update

    // Gate on |log gradient ratio| terms entering a thread's path signal.
    double log_ratio_threshold = 0.0;
    // Explore/exploit switch level on the thread's mean path signal.
    double signal_threshold = 0.0;

    SelectionParams selection;
    PsiForm psi_form = PsiForm::InverseProbability;
    // Stand-in distance when the candidate means coincide; a zero distance
    // signals similarity, not inadmissibility.
    double psi_floor = 1e-9;

    bool halt_on_target = true;
    // Physical workers evaluating thread steps; the result is invariant in
    // this value by contract.
    int workers = 1;
    // Optional per-round relative throughput perturbation amplitude.
    double throughput_noise = 0.0;
};

enum class ThreadStatus { Active, ReachedTarget, Exhausted, Stuck };

struct ThreadTrace {
    int thread_id = 0;
    std::vector<NodeIndex> nodes;
    std::vector<LinkIndex> links;
    ThreadStatus status = ThreadStatus::Active;
    double signal = 0.0;  // final path signal of the trace

    bool operator==(const ThreadTrace&) const = default;
};

struct PathSummary {
    int path_id = 0;  // order of first completion
    std::vector<NodeIndex> nodes;
    std::vector<LinkIndex> links;
    int completions = 0;
    double mean_received = 0.0;  // mean gradient delivered by completing threads
    double mean_signal = 0.0;    // mean path signal over completing threads
    double score = 0.0;          // endpoint gradient after the scoring update

    bool operator==(const PathSummary&) const = default;
};

struct RouteResult {
    std::optional<int> winner;  // index into `paths`, absent when none completed
    std::vector<PathSummary> paths;
    std::vector<ThreadTrace> threads;
    long long total_visits = 0;
    long long visit_budget = 0;  // node_count * threads * node_budget

    bool operator==(const RouteResult&) const = default;
};

// Thresholded sum of log ratios of successive gradients along a partial path.
// Needs at least two strictly positive gradients.
double path_signal(std::span<const double> gradients, double log_ratio_threshold);

// Arithmetic mean of per-path signals.
double mean_path_signal(std::span<const double> signals);

// Candidate distance: |mean_n - mean_z| / link_probability.
double distance(double link_probability, double mean_n, double mean_z);

// Reciprocal link gradient; a zero gradient makes the link a non-candidate.
double inverse_gradient(double gradient);

// Explore/exploit weighting exponents: (1, 0) while the mean signal is at or
// below the threshold, (0, 1) above it.
std::pair<double, double> select_weights(double mean_signal, double signal_threshold);

struct StepCandidate {
    double inverse_gradient = 0.0;  // > 0 for unvisited candidates
    double distance = 0.0;          // > 0 for unvisited candidates
    bool visited = false;
};

// Step distribution of a thread: visited candidates get exactly zero, each
// unvisited candidate z gets theta^c1 * psi^c2 normalized over the unvisited.
std::vector<double> thread_step_distribution(std::span<const StepCandidate> candidates,
                                             double c1, double c2);

// Runs the decentralized search: `threads` walkers start at `source`, step by
// the thread step distribution over a snapshot of the shared gradient state,
// and halt on the target, on budget exhaustion, or when stuck. Gradient and
// utility writes apply at a per-round barrier in thread-id order, so the
// result is a pure function of (net, params, seed) regardless of `workers`.
// Completed traces are scored through the endpoint gradient update and the
// maximal-gradient path wins. No thread reaching the target is not an error.
RouteResult run_routing(const QuantumNetwork& net, NodeIndex source, NodeIndex target,
                        const RoutingParams& params, std::uint64_t seed);

}  // namespace egret
