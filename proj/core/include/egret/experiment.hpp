#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egret/config.hpp"
#include "egret/csv.hpp"
#include "egret/network.hpp"
#include "egret/router.hpp"

namespace egret {

// Curve and batch experiments. The figure experiments emit analytical sweeps;
// `route` emits the per-thread traces of one routing run and `sweep` one
// summary row per seed of a batch of runs.
enum class ExperimentId { Fig3a, Fig3b, Fig4, Fig5, Fig6, Fig7, Route, Sweep };

ExperimentId parse_experiment_id(const std::string& name);
std::string experiment_name(ExperimentId id);

struct ExperimentConfig {
    ExperimentId id = ExperimentId::Fig3a;
    std::uint64_t seed = 1;
    // Sweep ranges, network sources and routing parameters, keyed per
    // experiment; unspecified keys take the documented defaults.
    KeyValueConfig options;
};

// Emits the table for a config. Deterministic in the config, seed included.
// Rows whose inner operations raise domain errors are excluded and reported
// through `row_errors` when given.
CsvTable run_experiment(const ExperimentConfig& config,
                        std::vector<std::string>* row_errors = nullptr);

// Routing parameters from shared config keys (threads, thread.limit, tau,
// chi, partial, xi, theta.threshold, signal.threshold, psi.form, ...).
RoutingParams routing_params_from(const KeyValueConfig& options);

// Network from config: `net = <file>` loads a file, otherwise a network is
// generated from the generation keys (nodes, links, ranges) and `seed`.
QuantumNetwork network_from(const KeyValueConfig& options, std::uint64_t seed);

}  // namespace egret
