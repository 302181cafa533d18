// egret: entanglement-gradient routing toolkit.
//
//   egret gen        generate a synthetic network file
//   egret route      run the decentralized routing on a network
//   egret experiment emit an analytical or batch sweep as CSV
//   egret compare    routing versus the classical shortest-path baseline
//
// Precedence: built-in defaults < --config file < explicit flags.
// Exit codes: 0 success, 1 domain/config error, 2 I/O error.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "egret/baseline.hpp"
#include "egret/config.hpp"
#include "egret/csv.hpp"
#include "egret/errors.hpp"
#include "egret/experiment.hpp"
#include "egret/network.hpp"
#include "egret/router.hpp"

namespace {

struct CommonArgs {
    std::string config_file;
    std::uint64_t seed = 1;
    std::string out;

    long long threads = 0;
    long long thread_limit = 0;
    long long workers = 0;
    long long nodes = 0;
    long long links = 0;
    long long runs = 0;
    double tau = 0.0;
    double chi = 0.0;
    double partial = 0.0;
    double xi = 0.0;
    double theta_threshold = 0.0;
    double signal_threshold = 0.0;
    double pi = 0.0;
    double noise = 0.0;
    std::string psi_form;
    std::string net_file;
    std::string source;
    std::string target;
};

// Registers the shared tunables on a subcommand. Each flag writes into the
// config map only when the user actually passed it.
void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_file, "key = value configuration file");
    cmd->add_option("--seed", args.seed, "master random seed");
    cmd->add_option("--out", args.out, "output path (stdout when omitted)");
    cmd->add_option("--threads", args.threads, "number of search threads");
    cmd->add_option("--thread-limit", args.thread_limit, "node budget per thread");
    cmd->add_option("--workers", args.workers, "physical workers (result-invariant)");
    cmd->add_option("--tau", args.tau, "gradient decay rate");
    cmd->add_option("--chi", args.chi, "selection tuning exponent");
    cmd->add_option("--partial", args.partial, "selection threshold offset");
    cmd->add_option("--xi", args.xi, "source-gradient weight");
    cmd->add_option("--theta-threshold", args.theta_threshold,
                    "gate on |log gradient ratio| signal terms");
    cmd->add_option("--signal-threshold", args.signal_threshold,
                    "explore/exploit switch level");
    cmd->add_option("--pi", args.pi, "peak fraction for cutoff sweeps");
    cmd->add_option("--noise", args.noise, "per-round throughput noise amplitude");
    cmd->add_option("--psi-form", args.psi_form, "candidate distance form: eq36 | eq44")
        ->check(CLI::IsMember({"eq36", "eq44"}));
}

egret::KeyValueConfig merge_options(const CLI::App* cmd, const CommonArgs& args) {
    egret::KeyValueConfig options;
    if (!args.config_file.empty())
        options = egret::KeyValueConfig::parse_file(args.config_file);
    auto passed = [cmd](const std::string& flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    if (passed("--threads")) options.set("threads", std::to_string(args.threads));
    if (passed("--thread-limit")) options.set("thread.limit", std::to_string(args.thread_limit));
    if (passed("--workers")) options.set("workers", std::to_string(args.workers));
    if (passed("--tau")) options.set("tau", std::to_string(args.tau));
    if (passed("--chi")) options.set("chi", std::to_string(args.chi));
    if (passed("--partial")) options.set("partial", std::to_string(args.partial));
    if (passed("--xi")) options.set("xi", std::to_string(args.xi));
    if (passed("--theta-threshold"))
        options.set("theta.threshold", std::to_string(args.theta_threshold));
    if (passed("--signal-threshold"))
        options.set("signal.threshold", std::to_string(args.signal_threshold));
    if (passed("--pi")) options.set("pi", std::to_string(args.pi));
    if (passed("--noise")) options.set("noise", std::to_string(args.noise));
    if (passed("--psi-form")) options.set("psi.form", args.psi_form);
    if (passed("--nodes")) options.set("nodes", std::to_string(args.nodes));
    if (passed("--links")) options.set("links", std::to_string(args.links));
    if (passed("--runs")) options.set("runs", std::to_string(args.runs));
    if (passed("--net")) options.set("net", args.net_file);
    if (passed("--source")) options.set("source", args.source);
    if (passed("--target")) options.set("target", args.target);
    return options;
}

void emit_csv(const egret::CsvTable& table, const std::string& out) {
    if (out.empty())
        table.write(std::cout);
    else
        table.write_file(out);
}

int run_gen(const CLI::App* cmd, const CommonArgs& args) {
    const egret::KeyValueConfig options = merge_options(cmd, args);
    const egret::QuantumNetwork net = egret::network_from(options, args.seed);
    if (args.out.empty())
        egret::write_network(std::cout, net);
    else
        egret::write_network_file(args.out, net);
    std::fprintf(stderr, "generated %d nodes, %d links (seed %llu)\n", net.node_count(),
                 net.link_count(), static_cast<unsigned long long>(args.seed));
    return 0;
}

const char* status_name(egret::ThreadStatus status) {
    switch (status) {
        case egret::ThreadStatus::Active: return "active";
        case egret::ThreadStatus::ReachedTarget: return "reached-target";
        case egret::ThreadStatus::Exhausted: return "exhausted";
        case egret::ThreadStatus::Stuck: return "stuck";
    }
    return "?";
}

void print_route_summary(const egret::QuantumNetwork& net, const egret::RouteResult& result) {
    std::printf("threads: %zu, node visits: %lld of budget %lld\n", result.threads.size(),
                result.total_visits, result.visit_budget);
    int reached = 0;
    for (const auto& tr : result.threads)
        if (tr.status == egret::ThreadStatus::ReachedTarget) ++reached;
    std::printf("completed threads: %d, distinct paths: %zu\n", reached, result.paths.size());
    for (const auto& path : result.paths) {
        std::printf("  path %d: score %.6g, %d completion(s), mean received %.6g, nodes:",
                    path.path_id, path.score, path.completions, path.mean_received);
        for (egret::NodeIndex n : path.nodes) std::printf(" %s", net.node(n).id.c_str());
        std::printf("\n");
    }
    if (result.winner) {
        std::printf("winner: path %d\n", result.paths[*result.winner].path_id);
    } else {
        std::printf("winner: none (no thread reached the target)\n");
    }
}

int run_route(const CLI::App* cmd, const CommonArgs& args) {
    const egret::KeyValueConfig options = merge_options(cmd, args);
    const egret::QuantumNetwork net = egret::network_from(options, args.seed);
    const egret::RoutingParams params = egret::routing_params_from(options);
    const egret::NodeIndex source =
        net.require_node(options.get_string("source", net.node(0).id));
    const egret::NodeIndex target =
        net.require_node(options.get_string("target", net.node(net.node_count() - 1).id));
    const egret::RouteResult result =
        egret::run_routing(net, source, target, params, args.seed);
    print_route_summary(net, result);
    if (!args.out.empty()) {
        egret::CsvTable table({"thread", "step", "node", "link", "status"});
        for (const auto& tr : result.threads)
            for (std::size_t s = 0; s < tr.nodes.size(); ++s)
                table.add_row({static_cast<double>(tr.thread_id), static_cast<double>(s),
                               static_cast<double>(tr.nodes[s]),
                               static_cast<double>(s == 0 ? -1 : tr.links[s - 1]),
                               static_cast<double>(static_cast<int>(tr.status))});
        table.write_file(args.out);
    }
    return 0;
}

int run_experiment_cmd(const CLI::App* cmd, const CommonArgs& args, const std::string& id) {
    egret::ExperimentConfig config;
    config.id = egret::parse_experiment_id(id);
    config.seed = args.seed;
    config.options = merge_options(cmd, args);
    std::vector<std::string> row_errors;
    const egret::CsvTable table = egret::run_experiment(config, &row_errors);
    emit_csv(table, args.out);
    for (const std::string& err : row_errors)
        std::fprintf(stderr, "row excluded: %s\n", err.c_str());
    return 0;
}

int run_compare(const CLI::App* cmd, const CommonArgs& args, const std::string& weight_name) {
    const egret::KeyValueConfig options = merge_options(cmd, args);
    const egret::QuantumNetwork net = egret::network_from(options, args.seed);
    const egret::RoutingParams params = egret::routing_params_from(options);
    const egret::NodeIndex source =
        net.require_node(options.get_string("source", net.node(0).id));
    const egret::NodeIndex target =
        net.require_node(options.get_string("target", net.node(net.node_count() - 1).id));
    const egret::EdgeWeight weight = weight_name == "hop"
                                         ? egret::EdgeWeight::Hop
                                         : egret::EdgeWeight::InverseThroughput;
    const egret::CompareReport report =
        egret::compare_routes(net, source, target, params, args.seed, weight);

    print_route_summary(net, report.routing);
    auto print_path = [&net](const char* label, const std::optional<egret::EntangledPath>& p) {
        std::printf("%s:", label);
        if (!p) {
            std::printf(" no path\n");
            return;
        }
        for (egret::NodeIndex n : p->nodes) std::printf(" %s", net.node(n).id.c_str());
        std::printf("\n");
    };
    print_path("gradient route", report.gradient_path);
    print_path("baseline route", report.baseline_path);
    std::printf("link overlap: %.3f\n", report.overlap);
    if (report.gradient_score && report.baseline_score)
        std::printf("gradient-metric scores: route %.6g vs baseline %.6g\n",
                    *report.gradient_score, *report.baseline_score);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement-gradient routing toolkit"};
    app.require_subcommand(1);
    CommonArgs args;

    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic network file");
    add_common_flags(gen, args);
    gen->add_option("--nodes", args.nodes, "node count");
    gen->add_option("--links", args.links, "link count");

    CLI::App* route = app.add_subcommand("route", "run the decentralized routing");
    add_common_flags(route, args);
    route->add_option("--net", args.net_file, "network file (generated when omitted)");
    route->add_option("--nodes", args.nodes, "node count for a generated network");
    route->add_option("--links", args.links, "link count for a generated network");
    route->add_option("--source", args.source, "source node id");
    route->add_option("--target", args.target, "target node id");

    std::string experiment_id;
    CLI::App* experiment = app.add_subcommand("experiment", "emit a sweep as CSV");
    add_common_flags(experiment, args);
    experiment->add_option("id", experiment_id,
                           "fig3a | fig3b | fig4 | fig5 | fig6 | fig7 | route | sweep")
        ->required();
    experiment->add_option("--nodes", args.nodes, "node count for routing experiments");
    experiment->add_option("--links", args.links, "link count for routing experiments");
    experiment->add_option("--runs", args.runs, "runs for the sweep experiment");
    experiment->add_option("--net", args.net_file, "network file for routing experiments");
    experiment->add_option("--source", args.source, "source node id");
    experiment->add_option("--target", args.target, "target node id");

    std::string weight_name = "hop";
    CLI::App* compare = app.add_subcommand("compare", "routing vs shortest-path baseline");
    add_common_flags(compare, args);
    compare->add_option("--net", args.net_file, "network file (generated when omitted)");
    compare->add_option("--nodes", args.nodes, "node count for a generated network");
    compare->add_option("--links", args.links, "link count for a generated network");
    compare->add_option("--source", args.source, "source node id");
    compare->add_option("--target", args.target, "target node id");
    compare->add_option("--weight", weight_name, "baseline edge weight")
        ->check(CLI::IsMember({"hop", "inverse-throughput"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) return run_gen(gen, args);
        if (route->parsed()) return run_route(route, args);
        if (experiment->parsed()) return run_experiment_cmd(experiment, args, experiment_id);
        if (compare->parsed()) return run_compare(compare, args, weight_name);
    } catch (const egret::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
