#include "egret/baseline.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "egret/errors.hpp"
#include "egret/path_gradient.hpp"

namespace egret {

std::optional<EntangledPath> baseline_shortest_path(const QuantumNetwork& net,
                                                    NodeIndex source, NodeIndex target,
                                                    EdgeWeight weight) {
    if (source < 0 || source >= net.node_count() || target < 0 || target >= net.node_count())
        throw ConfigError("baseline_shortest_path: endpoint out of range");

    // Settle order breaks distance ties by node identifier.
    std::vector<int> rank(net.node_count());
    {
        std::vector<NodeIndex> order(net.node_count());
        for (int i = 0; i < net.node_count(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&net](NodeIndex a, NodeIndex b) { return net.id_less(a, b); });
        for (int r = 0; r < net.node_count(); ++r) rank[order[r]] = r;
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(net.node_count(), inf);
    std::vector<LinkIndex> via(net.node_count(), -1);
    std::vector<char> settled(net.node_count(), 0);
    using Entry = std::pair<double, int>;  // (distance, id rank)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    std::vector<NodeIndex> by_rank(net.node_count());
    for (int i = 0; i < net.node_count(); ++i) by_rank[rank[i]] = i;

    dist[source] = 0.0;
    queue.emplace(0.0, rank[source]);
    while (!queue.empty()) {
        const auto [d, r] = queue.top();
        queue.pop();
        const NodeIndex n = by_rank[r];
        if (settled[n] || d > dist[n]) continue;
        settled[n] = 1;
        if (n == target) break;
        for (LinkIndex e : net.incident(n)) {
            const EntangledLink& link = net.link(e);
            double w = 1.0;
            if (weight == EdgeWeight::InverseThroughput) {
                if (link.throughput <= 0.0) continue;
                w = 1.0 / link.throughput;
            }
            const NodeIndex z = link.other(n);
            if (settled[z]) continue;
            if (d + w < dist[z]) {
                dist[z] = d + w;
                via[z] = e;
                queue.emplace(dist[z], rank[z]);
            }
        }
    }
    if (dist[target] == inf) return std::nullopt;

    EntangledPath path;
    for (NodeIndex n = target; n != source; n = net.link(via[n]).other(n)) {
        path.nodes.push_back(n);
        path.links.push_back(via[n]);
    }
    path.nodes.push_back(source);
    std::reverse(path.nodes.begin(), path.nodes.end());
    std::reverse(path.links.begin(), path.links.end());
    return path;
}

CompareReport compare_routes(const QuantumNetwork& net, NodeIndex source, NodeIndex target,
                             const RoutingParams& params, std::uint64_t seed,
                             EdgeWeight weight) {
    CompareReport report;
    report.routing = run_routing(net, source, target, params, seed);
    if (report.routing.winner) {
        const PathSummary& win = report.routing.paths[*report.routing.winner];
        report.gradient_path = EntangledPath{0, win.nodes, win.links};
    }
    report.baseline_path = baseline_shortest_path(net, source, target, weight);
    if (report.baseline_path) report.baseline_path->id = 1;

    if (report.gradient_path && report.baseline_path) {
        std::set<LinkIndex> a(report.gradient_path->links.begin(),
                              report.gradient_path->links.end());
        std::set<LinkIndex> b(report.baseline_path->links.begin(),
                              report.baseline_path->links.end());
        std::size_t common = 0;
        for (LinkIndex e : a) common += b.count(e);
        const std::size_t unions = a.size() + b.size() - common;
        report.overlap = unions == 0 ? 0.0
                                     : static_cast<double>(common) / static_cast<double>(unions);

        if (report.gradient_path->links == report.baseline_path->links) {
            const EntangledPath candidates[] = {*report.gradient_path};
            const auto scores =
                static_path_scores(net, candidates, source, target, params.selection);
            report.gradient_score = scores[0];
            report.baseline_score = scores[0];
        } else {
            const EntangledPath candidates[] = {*report.gradient_path, *report.baseline_path};
            const auto scores =
                static_path_scores(net, candidates, source, target, params.selection);
            report.gradient_score = scores[0];
            report.baseline_score = scores[1];
        }
    }
    return report;
}

}  // namespace egret
