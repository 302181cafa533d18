#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace egret {

// Nodes and links are addressed by dense indices once inside a network.
// Identifiers (the textual names in network files) resolve to indices at
// construction; all tie-breaking uses the lexicographic identifier order.
using NodeIndex = int;
using LinkIndex = int;

struct QuantumNode {
    std::string id;
    double observation_rate = 0.0;  // entangled states arriving per second
    double decay_rate = 0.0;        // gradient forgetting rate of the node
};

struct EntangledLink {
    NodeIndex u = -1;
    NodeIndex v = -1;
    int level = 1;            // a level-l link spans a hop distance of 2^(l-1)
    double throughput = 0.0;  // entangled states per second at `fidelity`
    double fidelity = 1.0;
    double utility = 1.0;     // initial traversal utility; evolves per episode

    NodeIndex other(NodeIndex n) const { return n == u ? v : u; }
    bool is_incident(NodeIndex n) const { return n == u || n == v; }
};

class QuantumNetwork {
public:
    NodeIndex add_node(std::string id, double observation_rate, double decay_rate);
    LinkIndex add_link(NodeIndex u, NodeIndex v, int level, double throughput,
                       double fidelity, double utility = 1.0);
    LinkIndex add_link(const std::string& u, const std::string& v, int level,
                       double throughput, double fidelity, double utility = 1.0);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int link_count() const { return static_cast<int>(links_.size()); }
    const QuantumNode& node(NodeIndex i) const { return nodes_.at(i); }
    const EntangledLink& link(LinkIndex i) const { return links_.at(i); }

    std::optional<NodeIndex> find_node(const std::string& id) const;
    NodeIndex require_node(const std::string& id) const;

    // Incident link indices of a node, in insertion order.
    std::span<const LinkIndex> incident(NodeIndex n) const;
    int degree(NodeIndex n) const { return static_cast<int>(incident(n).size()); }

    bool id_less(NodeIndex a, NodeIndex b) const;

private:
    std::vector<QuantumNode> nodes_;
    std::vector<EntangledLink> links_;
    std::vector<std::vector<LinkIndex>> incident_;
    std::map<std::string, NodeIndex> by_id_;
};

// A concrete chain of entangled links from a source to a destination.
// Consecutive nodes share the corresponding link and no node repeats.
struct EntangledPath {
    int id = 0;
    std::vector<NodeIndex> nodes;
    std::vector<LinkIndex> links;

    bool operator==(const EntangledPath&) const = default;
};

// Hop distance spanned by a level-l entangled link: 2^(l-1).
long long hop_distance(int level);

// Mean throughput over the incident links of y. Isolated nodes have no mean.
double mean_neighbor_throughput(const QuantumNetwork& net, NodeIndex y);

// |mean incident throughput at y - throughput of `link`|; link must touch y.
double throughput_deviation(const QuantumNetwork& net, NodeIndex y, LinkIndex link);

// Builds the path through `nodes`, choosing the lowest-index link for every
// consecutive pair. Validates simplicity and connectivity.
EntangledPath make_path(const QuantumNetwork& net, std::span<const NodeIndex> nodes, int id = 0);

struct GenerationSpec {
    int nodes = 8;
    int links = 12;  // spanning tree needs nodes-1; at most one link per pair
    double kappa_min = 1.0, kappa_max = 10.0;
    double tau_min = 0.1, tau_max = 2.0;
    double throughput_min = 1.0, throughput_max = 10.0;
    double fidelity_min = 0.9, fidelity_max = 1.0;
    std::vector<double> level_weights = {1.0};  // weight of level 1, 2, ...
    double initial_utility = 1.0;
};

// Deterministic in (spec, seed): a uniform random spanning tree (decoded from
// a random Pruefer sequence) plus uniformly drawn extra node pairs, then node
// and link attributes drawn in a fixed order.
QuantumNetwork generate_network(const GenerationSpec& spec, std::uint64_t seed);

// Line-oriented text format. `node <id> <kappa> <tau>` and
// `link <u> <v> <level> <throughput> <fidelity>`; `#` starts a comment.
QuantumNetwork read_network(std::istream& in);
QuantumNetwork read_network_file(const std::string& path);
void write_network(std::ostream& out, const QuantumNetwork& net);
void write_network_file(const std::string& path, const QuantumNetwork& net);

}  // namespace egret
