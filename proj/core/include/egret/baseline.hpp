#pragma once

#include <cstdint>
#include <optional>

#include "egret/network.hpp"
#include "egret/router.hpp"

namespace egret {

enum class EdgeWeight { Hop, InverseThroughput };

// Classical single-source shortest path under the chosen edge weight.
// Zero-throughput links are impassable under InverseThroughput. Ties resolve
// deterministically by node identifier order. Absent value: no path exists.
std::optional<EntangledPath> baseline_shortest_path(const QuantumNetwork& net,
                                                    NodeIndex source, NodeIndex target,
                                                    EdgeWeight weight);

struct CompareReport {
    RouteResult routing;
    std::optional<EntangledPath> gradient_path;  // the routing winner, if any
    std::optional<EntangledPath> baseline_path;
    double overlap = 0.0;  // Jaccard index of the two link sets
    // Endpoint-gradient scores of both paths over the static network, scored
    // as a two-candidate set.
    std::optional<double> gradient_score;
    std::optional<double> baseline_score;
};

CompareReport compare_routes(const QuantumNetwork& net, NodeIndex source, NodeIndex target,
                             const RoutingParams& params, std::uint64_t seed,
                             EdgeWeight weight = EdgeWeight::Hop);

}  // namespace egret
