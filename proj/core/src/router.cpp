#include "egret/router.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <thread>

#include "egret/errors.hpp"
#include "egret/path_gradient.hpp"
#include "egret/rng.hpp"

namespace egret {

double path_signal(std::span<const double> gradients, double log_ratio_threshold) {
    if (gradients.size() < 2)
        throw DomainError("path_signal: need at least two gradients");
    if (log_ratio_threshold < 0.0)
        throw DomainError("path_signal: threshold must be >= 0");
    double signal = 0.0;
    for (std::size_t i = 0; i + 1 < gradients.size(); ++i) {
        if (gradients[i] <= 0.0 || gradients[i + 1] <= 0.0)
            throw DomainError("path_signal: gradients must be > 0");
        const double ratio = std::log(gradients[i + 1] / gradients[i]);
        if (std::abs(ratio) > log_ratio_threshold) signal += ratio;
    }
    return signal;
}

double mean_path_signal(std::span<const double> signals) {
    if (signals.empty()) throw DomainError("mean_path_signal: no signals");
    double sum = 0.0;
    for (double s : signals) sum += s;
    return sum / static_cast<double>(signals.size());
}

double distance(double link_probability, double mean_n, double mean_z) {
    if (link_probability <= 0.0)
        throw SingularityError("distance: zero link probability");
    if (link_probability > 1.0)
        throw DomainError("distance: link probability must be in (0, 1]");
    return std::abs(mean_n - mean_z) / link_probability;
}

double inverse_gradient(double gradient) {
    if (gradient <= 0.0) throw SingularityError("inverse_gradient: zero gradient");
    return 1.0 / gradient;
}

std::pair<double, double> select_weights(double mean_signal, double signal_threshold) {
    return mean_signal <= signal_threshold ? std::pair{1.0, 0.0} : std::pair{0.0, 1.0};
}

std::vector<double> thread_step_distribution(std::span<const StepCandidate> candidates,
                                             double c1, double c2) {
    if (candidates.empty())
        throw DomainError("thread_step_distribution: no candidates");
    if (c1 < 0.0 || c2 < 0.0)
        throw DomainError("thread_step_distribution: weights must be >= 0");
    std::vector<double> probs(candidates.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].visited) continue;
        if (candidates[i].inverse_gradient <= 0.0 || candidates[i].distance <= 0.0)
            throw DomainError("thread_step_distribution: unvisited candidates need "
                              "positive inverse gradient and distance");
        probs[i] = std::pow(candidates[i].inverse_gradient, c1) *
                   std::pow(candidates[i].distance, c2);
        total += probs[i];
    }
    if (total <= 0.0)
        throw DegenerateDistributionError("thread_step_distribution: no admissible candidate");
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (!candidates[i].visited) probs[i] /= total;
    return probs;
}

namespace {

struct SearchThread {
    int id = 0;
    NodeIndex current = -1;
    std::vector<char> visited;
    int visited_count = 0;
    std::vector<NodeIndex> trace_nodes;
    std::vector<LinkIndex> trace_links;
    std::vector<double> received_gradients;  // post-update gradient at each arrival
    std::vector<double> deposits;            // utility reinforcement laid at each arrival
    double signal = 0.0;
    int target_hit = -1;  // trace position of the first target arrival
    ThreadStatus status = ThreadStatus::Active;
    std::mt19937_64 rng;
};

struct StepDecision {
    bool moved = false;
    LinkIndex link = -1;
    NodeIndex to = -1;
    double deposit = 0.0;  // utility update computed from the round-start state
};

class Episode {
public:
    Episode(const QuantumNetwork& net, NodeIndex source, NodeIndex target,
            const RoutingParams& params, std::uint64_t seed)
        : net_(net), source_(source), target_(target), params_(params),
          utility_(net.link_count()), throughput_(net.link_count()),
          received_(net.node_count()),
          noise_rng_(make_stream(seed, 0x9d3a7b11c0ffee01ULL)) {
        for (int e = 0; e < net.link_count(); ++e) {
            utility_[e] = net.link(e).utility;
            throughput_[e] = net.link(e).throughput;
        }
        tables_.reserve(net.node_count());
        for (int i = 0; i < net.node_count(); ++i) tables_.emplace_back(i);
        refresh_deviations();
        threads_.resize(params.threads);
        for (int i = 0; i < params.threads; ++i) {
            SearchThread& th = threads_[i];
            th.id = i;
            th.current = source;
            th.visited.assign(net.node_count(), 0);
            th.visited[source] = 1;
            th.visited_count = 1;
            th.trace_nodes.push_back(source);
            th.rng = make_stream(seed, static_cast<std::uint64_t>(i) + 1);
            if (params.node_budget <= 1) th.status = ThreadStatus::Exhausted;
        }
    }

    RouteResult run() {
        std::vector<StepDecision> decisions(threads_.size());
        while (true) {
            std::vector<int> active;
            for (const SearchThread& th : threads_)
                if (th.status == ThreadStatus::Active) active.push_back(th.id);
            if (active.empty()) break;
            if (params_.throughput_noise > 0.0) perturb_throughputs();
            compute_decisions(active, decisions);
            // Every traversal of a round reads the round-start utilities; the
            // deposit each thread lays is the one-step update of what it saw.
            for (int id : active) {
                StepDecision& d = decisions[id];
                if (d.moved)
                    d.deposit = update_utility(utility_[d.link], throughput_[d.link]);
            }
            for (int id : active) apply_decision(threads_[id], decisions[id]);
        }
        return finalize();
    }

private:
    void refresh_deviations() {
        link_deviation_.assign(net_.node_count(), {});
        for (int y = 0; y < net_.node_count(); ++y) {
            const auto inc = net_.incident(y);
            if (inc.empty()) continue;
            double mean = 0.0;
            for (LinkIndex e : inc) mean += throughput_[e];
            mean /= static_cast<double>(inc.size());
            link_deviation_[y].reserve(inc.size());
            for (LinkIndex e : inc)
                link_deviation_[y].push_back(std::abs(mean - throughput_[e]));
        }
    }

    void perturb_throughputs() {
        const double a = params_.throughput_noise;
        for (int e = 0; e < net_.link_count(); ++e) {
            const double u = uniform_range(noise_rng_, -1.0, 1.0);
            throughput_[e] = std::max(0.0, net_.link(e).throughput * (1.0 + a * u));
        }
        refresh_deviations();
    }

    double deviation_at(NodeIndex node, LinkIndex link) const {
        const auto inc = net_.incident(node);
        for (std::size_t i = 0; i < inc.size(); ++i)
            if (inc[i] == link) return link_deviation_[node][i];
        throw DomainError("router: link not incident to node");
    }

    // Smallest deviation per neighbor; collapses parallel links for the
    // per-neighbor gradient update.
    std::map<NodeIndex, double> neighbor_deviations(NodeIndex node) const {
        std::map<NodeIndex, double> out;
        const auto inc = net_.incident(node);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            const NodeIndex nb = net_.link(inc[i]).other(node);
            const double dev = link_deviation_[node][i];
            auto [it, fresh] = out.emplace(nb, dev);
            if (!fresh && dev < it->second) it->second = dev;
        }
        return out;
    }

    // Gradient a step over `link` into `to` would leave at `to`: the stored
    // entry decayed by the deviation seen at `to`, plus the link's would-be
    // utility update.
    double prospective_gradient(NodeIndex from, NodeIndex to, LinkIndex link,
                                Direction dir) const {
        const NodeIndex anchor = dir == Direction::TowardSource ? source_ : target_;
        const double stored = tables_[to].get(anchor, from, dir);
        const double decay = std::exp(-params_.decay_rate * deviation_at(to, link));
        return stored * decay + update_utility(utility_[link], throughput_[link]);
    }

    // Link selection probabilities over all incident links of `node`, toward
    // the destination, with every candidate's gradient taken prospectively.
    std::vector<double> forward_link_probabilities(NodeIndex node) const {
        const auto inc = net_.incident(node);
        std::vector<double> gradients(inc.size());
        for (std::size_t i = 0; i < inc.size(); ++i) {
            const NodeIndex nb = net_.link(inc[i]).other(node);
            const double stored = tables_[node].get(target_, nb, Direction::TowardDestination);
            const double decay =
                std::exp(-params_.decay_rate * link_deviation_[node][i]);
            gradients[i] = stored * decay + update_utility(utility_[inc[i]], throughput_[inc[i]]);
        }
        return link_selection_probability(gradients, params_.selection);
    }

    // Mean gradient a node advertises for the pair (n, z); zero mean received
    // short-circuits the closed form and its zero-decay pole.
    double node_mean(NodeIndex node, NodeIndex other) const {
        if (received_[node].value <= 0.0) return 0.0;
        const ArrivalRates rates{net_.node(node).observation_rate,
                                 net_.node(other).observation_rate};
        return mean_path_gradient(rates, net_.node(node).decay_rate,
                                  received_[node].value, Endpoint::A);
    }

    StepDecision decide(SearchThread& th) const {
        const NodeIndex n = th.current;
        const auto inc = net_.incident(n);
        std::vector<LinkIndex> links;
        std::vector<StepCandidate> cands;
        std::vector<double> fwd;
        bool fwd_ready = false;
        for (std::size_t i = 0; i < inc.size(); ++i) {
            const LinkIndex e = inc[i];
            const NodeIndex z = net_.link(e).other(n);
            if (th.visited[z]) continue;
            const double g = prospective_gradient(n, z, e, Direction::TowardSource);
            if (g <= 0.0) continue;  // singular inverse gradient: not a candidate
            if (!fwd_ready) {
                fwd = forward_link_probabilities(n);
                fwd_ready = true;
            }
            const double mean_n = node_mean(n, z);
            const double mean_z = node_mean(z, n);
            double psi = params_.psi_form == PsiForm::InverseProbability
                             ? distance(fwd[i], mean_n, mean_z)
                             : fwd[i] * std::abs(mean_n - mean_z);
            if (psi <= 0.0) psi = params_.psi_floor;
            links.push_back(e);
            cands.push_back(StepCandidate{inverse_gradient(g), psi, false});
        }
        if (cands.empty()) return {};
        const auto [c1, c2] = select_weights(th.signal, params_.signal_threshold);
        const std::vector<double> probs = thread_step_distribution(cands, c1, c2);
        const std::size_t pick = sample_weighted(probs, uniform_unit(th.rng));
        return StepDecision{true, links[pick], net_.link(links[pick]).other(n)};
    }

    void compute_decisions(const std::vector<int>& active, std::vector<StepDecision>& out) {
        const int workers = std::max(1, std::min<int>(params_.workers,
                                                      static_cast<int>(active.size())));
        if (workers == 1) {
            for (int id : active) out[id] = decide(threads_[id]);
            return;
        }
        // Shared state is read-only during a round; each worker owns a block
        // of threads, so the per-thread computations and RNG draws are
        // identical to the single-worker schedule.
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t per = (active.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = w * per;
            const std::size_t hi = std::min(active.size(), lo + per);
            if (lo >= hi) break;
            pool.emplace_back([this, &active, &out, lo, hi] {
                for (std::size_t k = lo; k < hi; ++k)
                    out[active[k]] = decide(threads_[active[k]]);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    void apply_decision(SearchThread& th, const StepDecision& d) {
        if (!d.moved) {
            th.status = ThreadStatus::Stuck;
            return;
        }
        const NodeIndex from = th.current;
        const NodeIndex to = d.to;
        // The utility itself advances once per traversal (the updates add the
        // throughput cost to the inverse utility, so the end-of-round value
        // does not depend on the application order).
        utility_[d.link] = update_utility(utility_[d.link], throughput_[d.link]);
        update_gradients(tables_[to], source_, Direction::TowardSource, from,
                         params_.decay_rate, neighbor_deviations(to), d.deposit);
        received_[to].add(d.deposit);

        th.current = to;
        th.visited[to] = 1;
        ++th.visited_count;
        assert(th.visited_count <= params_.node_budget);
        th.trace_nodes.push_back(to);
        th.trace_links.push_back(d.link);
        th.deposits.push_back(d.deposit);
        th.received_gradients.push_back(
            tables_[to].get(source_, from, Direction::TowardSource));
        if (th.received_gradients.size() >= 2)
            th.signal = path_signal(th.received_gradients, params_.log_ratio_threshold);
        if (to == target_ && th.target_hit < 0)
            th.target_hit = static_cast<int>(th.trace_nodes.size()) - 1;

        if (th.target_hit >= 0 && params_.halt_on_target)
            th.status = ThreadStatus::ReachedTarget;
        else if (th.visited_count >= params_.node_budget)
            th.status = ThreadStatus::Exhausted;
    }

    RouteResult finalize() {
        RouteResult result;
        result.visit_budget = static_cast<long long>(net_.node_count()) *
                              params_.threads * params_.node_budget;
        for (const SearchThread& th : threads_) {
            result.total_visits += th.visited_count;
            result.threads.push_back(ThreadTrace{th.id, th.trace_nodes, th.trace_links,
                                                 th.status, th.signal});
        }
        assert(result.total_visits <= result.visit_budget);

        // Group completed traces (up to the first target arrival) into paths,
        // numbered in order of first completion over the thread-id schedule.
        std::map<std::vector<LinkIndex>, int> index;
        std::vector<RunningMean> received, signals;
        for (const SearchThread& th : threads_) {
            if (th.target_hit < 0) continue;
            const std::size_t hops = static_cast<std::size_t>(th.target_hit);
            std::vector<LinkIndex> key(th.trace_links.begin(), th.trace_links.begin() + hops);
            auto [it, fresh] = index.emplace(std::move(key), static_cast<int>(result.paths.size()));
            if (fresh) {
                PathSummary p;
                p.path_id = it->second;
                p.nodes.assign(th.trace_nodes.begin(), th.trace_nodes.begin() + hops + 1);
                p.links.assign(th.trace_links.begin(), th.trace_links.begin() + hops);
                result.paths.push_back(std::move(p));
                received.emplace_back();
                signals.emplace_back();
            }
            PathSummary& p = result.paths[it->second];
            ++p.completions;
            double deposit_sum = 0.0;
            for (std::size_t i = 0; i < hops; ++i) deposit_sum += th.deposits[i];
            received[it->second].add(deposit_sum / static_cast<double>(hops));
            std::span<const double> grads(th.received_gradients.data(), hops);
            signals[it->second].add(grads.size() >= 2
                                        ? path_signal(grads, params_.log_ratio_threshold)
                                        : 0.0);
        }
        if (result.paths.empty()) return result;

        std::vector<PathGradientState> states(result.paths.size());
        for (std::size_t i = 0; i < result.paths.size(); ++i) {
            result.paths[i].mean_received = received[i].value;
            result.paths[i].mean_signal = signals[i].value;
            states[i].path_id = result.paths[i].path_id;
            states[i].mean_received_a = received[i].value;
        }
        const ArrivalRates rates{net_.node(source_).observation_rate,
                                 net_.node(target_).observation_rate};
        update_endpoint_gradient(states, rates, net_.node(source_).decay_rate, Endpoint::A,
                                 params_.selection);
        for (std::size_t i = 0; i < states.size(); ++i)
            result.paths[i].score = states[i].gradient_a;
        result.winner = select_optimal_path(states, Endpoint::A);
        return result;
    }

    const QuantumNetwork& net_;
    NodeIndex source_;
    NodeIndex target_;
    const RoutingParams& params_;
    std::vector<double> utility_;
    std::vector<double> throughput_;
    std::vector<std::vector<double>> link_deviation_;  // parallel to incident lists
    std::vector<GradientTable> tables_;
    std::vector<RunningMean> received_;
    std::vector<SearchThread> threads_;
    std::mt19937_64 noise_rng_;
};

}  // namespace

RouteResult run_routing(const QuantumNetwork& net, NodeIndex source, NodeIndex target,
                        const RoutingParams& params, std::uint64_t seed) {
    if (source < 0 || source >= net.node_count() || target < 0 || target >= net.node_count())
        throw ConfigError("run_routing: endpoint out of range");
    if (source == target) throw ConfigError("run_routing: source equals target");
    if (params.threads < 1) throw ConfigError("run_routing: need at least one thread");
    if (params.node_budget < 1) throw ConfigError("run_routing: node budget must be >= 1");
    if (params.workers < 1) throw ConfigError("run_routing: need at least one worker");
    if (params.decay_rate < 0.0 || params.log_ratio_threshold < 0.0 ||
        params.psi_floor <= 0.0 || params.throughput_noise < 0.0)
        throw ConfigError("run_routing: invalid parameter");
    Episode episode(net, source, target, params, seed);
    return episode.run();
}

}  // namespace egret
