#include "egret/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "egret/errors.hpp"
#include "egret/rng.hpp"

namespace egret {

NodeIndex QuantumNetwork::add_node(std::string id, double observation_rate, double decay_rate) {
    if (id.empty()) throw ConfigError("node id must not be empty");
    if (observation_rate < 0.0) throw DomainError("observation rate must be >= 0");
    if (decay_rate < 0.0) throw DomainError("decay rate must be >= 0");
    if (by_id_.count(id)) throw ConfigError("duplicate node id: " + id);
    const NodeIndex idx = static_cast<NodeIndex>(nodes_.size());
    by_id_.emplace(id, idx);
    nodes_.push_back(QuantumNode{std::move(id), observation_rate, decay_rate});
    incident_.emplace_back();
    return idx;
}

LinkIndex QuantumNetwork::add_link(NodeIndex u, NodeIndex v, int level, double throughput,
                                   double fidelity, double utility) {
    if (u < 0 || u >= node_count() || v < 0 || v >= node_count())
        throw ConfigError("link endpoint does not exist");
    if (u == v) throw ConfigError("self-links are not allowed");
    if (level < 1) throw DomainError("link level must be >= 1");
    if (throughput < 0.0) throw DomainError("throughput must be >= 0");
    if (fidelity < 0.0 || fidelity > 1.0) throw DomainError("fidelity must be in [0,1]");
    if (utility < 0.0) throw DomainError("utility must be >= 0");
    for (LinkIndex e : incident_[u]) {
        const EntangledLink& l = links_[e];
        if (l.is_incident(v) && l.level == level)
            throw ConfigError("duplicate link between " + nodes_[u].id + " and " +
                              nodes_[v].id + " at level " + std::to_string(level));
    }
    const LinkIndex idx = static_cast<LinkIndex>(links_.size());
    links_.push_back(EntangledLink{u, v, level, throughput, fidelity, utility});
    incident_[u].push_back(idx);
    incident_[v].push_back(idx);
    return idx;
}

LinkIndex QuantumNetwork::add_link(const std::string& u, const std::string& v, int level,
                                   double throughput, double fidelity, double utility) {
    return add_link(require_node(u), require_node(v), level, throughput, fidelity, utility);
}

std::optional<NodeIndex> QuantumNetwork::find_node(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

NodeIndex QuantumNetwork::require_node(const std::string& id) const {
    auto idx = find_node(id);
    if (!idx) throw ConfigError("unknown node id: " + id);
    return *idx;
}

std::span<const LinkIndex> QuantumNetwork::incident(NodeIndex n) const {
    return incident_.at(n);
}

bool QuantumNetwork::id_less(NodeIndex a, NodeIndex b) const {
    return nodes_.at(a).id < nodes_.at(b).id;
}

long long hop_distance(int level) {
    if (level < 1) throw DomainError("hop_distance: level must be >= 1");
    if (level > 62) throw DomainError("hop_distance: level too large");
    return 1LL << (level - 1);
}

double mean_neighbor_throughput(const QuantumNetwork& net, NodeIndex y) {
    const auto links = net.incident(y);
    if (links.empty()) throw DomainError("mean_neighbor_throughput: isolated node");
    double sum = 0.0;
    for (LinkIndex e : links) sum += net.link(e).throughput;
    return sum / static_cast<double>(links.size());
}

double throughput_deviation(const QuantumNetwork& net, NodeIndex y, LinkIndex link) {
    if (link < 0 || link >= net.link_count() || !net.link(link).is_incident(y))
        throw DomainError("throughput_deviation: link is not incident to the node");
    return std::abs(mean_neighbor_throughput(net, y) - net.link(link).throughput);
}

EntangledPath make_path(const QuantumNetwork& net, std::span<const NodeIndex> nodes, int id) {
    if (nodes.size() < 2) throw DomainError("make_path: need at least two nodes");
    EntangledPath path;
    path.id = id;
    path.nodes.assign(nodes.begin(), nodes.end());
    std::vector<char> seen(net.node_count(), 0);
    for (NodeIndex n : nodes) {
        if (n < 0 || n >= net.node_count()) throw DomainError("make_path: node out of range");
        if (seen[n]) throw DomainError("make_path: repeated node");
        seen[n] = 1;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        LinkIndex chosen = -1;
        for (LinkIndex e : net.incident(nodes[i])) {
            if (net.link(e).is_incident(nodes[i + 1]) && (chosen < 0 || e < chosen)) chosen = e;
        }
        if (chosen < 0) throw DomainError("make_path: consecutive nodes share no link");
        path.links.push_back(chosen);
    }
    return path;
}

namespace {

// Decodes a Pruefer sequence over n >= 2 labels into tree edges.
std::vector<std::pair<int, int>> decode_pruefer(const std::vector<int>& seq, int n) {
    std::vector<int> degree(n, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    std::vector<char> used(n, 0);
    for (int x : seq) {
        int leaf = -1;
        for (int i = 0; i < n; ++i) {
            if (degree[i] == 1 && !used[i]) { leaf = i; break; }
        }
        edges.emplace_back(leaf, x);
        used[leaf] = 1;
        --degree[x];
    }
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i) {
        if (degree[i] == 1 && !used[i]) (a < 0 ? a : b) = i;
    }
    edges.emplace_back(a, b);
    return edges;
}

int draw_level(std::mt19937_64& rng, const std::vector<double>& weights) {
    if (weights.empty()) return 1;
    const double u = uniform_unit(rng);
    return 1 + static_cast<int>(sample_weighted(weights, u));
}

}  // namespace

QuantumNetwork generate_network(const GenerationSpec& spec, std::uint64_t seed) {
    const int n = spec.nodes;
    if (n < 2) throw ConfigError("generate_network: need at least two nodes");
    const long long max_links = static_cast<long long>(n) * (n - 1) / 2;
    if (spec.links < n - 1)
        throw ConfigError("generate_network: too few links for a connected network");
    if (spec.links > max_links)
        throw ConfigError("generate_network: more links than node pairs");
    if (spec.kappa_min < 0 || spec.kappa_max < spec.kappa_min ||
        spec.tau_min < 0 || spec.tau_max < spec.tau_min ||
        spec.throughput_min < 0 || spec.throughput_max < spec.throughput_min ||
        spec.fidelity_min < 0 || spec.fidelity_max < spec.fidelity_min ||
        spec.fidelity_max > 1.0)
        throw ConfigError("generate_network: invalid attribute range");

    auto rng = make_stream(seed, 0);

    QuantumNetwork net;
    int width = 1;
    for (int v = n - 1; v >= 10; v /= 10) ++width;
    for (int i = 0; i < n; ++i) {
        std::string id = std::to_string(i);
        id.insert(0, width - static_cast<int>(id.size()), '0');
        net.add_node("n" + id, uniform_range(rng, spec.kappa_min, spec.kappa_max),
                     uniform_range(rng, spec.tau_min, spec.tau_max));
    }

    // Spanning tree, uniform over labeled trees.
    std::vector<std::pair<int, int>> edges;
    if (n == 2) {
        edges.emplace_back(0, 1);
    } else {
        std::vector<int> seq(n - 2);
        for (int& x : seq) x = static_cast<int>(uniform_index(rng, n));
        edges = decode_pruefer(seq, n);
    }
    std::vector<char> taken(static_cast<std::size_t>(max_links), 0);
    auto pair_slot = [n](int a, int b) {
        if (a > b) std::swap(a, b);
        return static_cast<std::size_t>(a) * (2 * n - a - 1) / 2 + (b - a - 1);
    };
    for (auto& [a, b] : edges) taken[pair_slot(a, b)] = 1;

    // Remaining links drawn uniformly from the untaken pairs.
    int extra = spec.links - (n - 1);
    std::vector<std::pair<int, int>> pool;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!taken[pair_slot(a, b)]) pool.emplace_back(a, b);
    for (int k = 0; k < extra; ++k) {
        const auto pick = uniform_index(rng, pool.size() - k);
        std::swap(pool[pick], pool[pool.size() - 1 - k]);
        edges.push_back(pool[pool.size() - 1 - k]);
    }

    for (auto& [a, b] : edges) {
        const int level = draw_level(rng, spec.level_weights);
        const double b_f = uniform_range(rng, spec.throughput_min, spec.throughput_max);
        const double f = uniform_range(rng, spec.fidelity_min, spec.fidelity_max);
        net.add_link(a, b, level, b_f, f, spec.initial_utility);
    }
    return net;
}

QuantumNetwork read_network(std::istream& in) {
    QuantumNetwork net;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        try {
            if (kind == "node") {
                std::string id;
                double kappa, tau;
                if (!(ls >> id >> kappa >> tau)) throw ConfigError("malformed node line");
                net.add_node(id, kappa, tau);
            } else if (kind == "link") {
                std::string u, v;
                int level;
                double b_f, f;
                if (!(ls >> u >> v >> level >> b_f >> f)) throw ConfigError("malformed link line");
                net.add_link(u, v, level, b_f, f);
            } else {
                throw ConfigError("unknown record kind: " + kind);
            }
        } catch (const std::exception& e) {
            throw ConfigError("network file line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return net;
}

QuantumNetwork read_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open network file: " + path);
    return read_network(in);
}

void write_network(std::ostream& out, const QuantumNetwork& net) {
    char buf[160];
    for (int i = 0; i < net.node_count(); ++i) {
        const QuantumNode& nd = net.node(i);
        std::snprintf(buf, sizeof buf, "node %s %.17g %.17g\n", nd.id.c_str(),
                      nd.observation_rate, nd.decay_rate);
        out << buf;
    }
    for (int e = 0; e < net.link_count(); ++e) {
        const EntangledLink& l = net.link(e);
        std::snprintf(buf, sizeof buf, "link %s %s %d %.17g %.17g\n",
                      net.node(l.u).id.c_str(), net.node(l.v).id.c_str(), l.level,
                      l.throughput, l.fidelity);
        out << buf;
    }
}

void write_network_file(const std::string& path, const QuantumNetwork& net) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    write_network(out, net);
    if (!out) throw IoError("failed writing network file: " + path);
}

}  // namespace egret
