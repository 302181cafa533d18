#include "egret/experiment.hpp"

#include <cmath>
#include <numbers>

#include "egret/errors.hpp"
#include "egret/fidelity.hpp"
#include "egret/path_gradient.hpp"
#include "egret/rate_analysis.hpp"

namespace egret {

ExperimentId parse_experiment_id(const std::string& name) {
    if (name == "fig3a") return ExperimentId::Fig3a;
    if (name == "fig3b") return ExperimentId::Fig3b;
    if (name == "fig4") return ExperimentId::Fig4;
    if (name == "fig5") return ExperimentId::Fig5;
    if (name == "fig6") return ExperimentId::Fig6;
    if (name == "fig7") return ExperimentId::Fig7;
    if (name == "route") return ExperimentId::Route;
    if (name == "sweep") return ExperimentId::Sweep;
    throw ConfigError("unknown experiment id: " + name);
}

std::string experiment_name(ExperimentId id) {
    switch (id) {
        case ExperimentId::Fig3a: return "fig3a";
        case ExperimentId::Fig3b: return "fig3b";
        case ExperimentId::Fig4: return "fig4";
        case ExperimentId::Fig5: return "fig5";
        case ExperimentId::Fig6: return "fig6";
        case ExperimentId::Fig7: return "fig7";
        case ExperimentId::Route: return "route";
        case ExperimentId::Sweep: return "sweep";
    }
    throw ConfigError("unknown experiment id");
}

RoutingParams routing_params_from(const KeyValueConfig& o) {
    RoutingParams p;
    p.threads = static_cast<int>(o.get_int("threads", p.threads));
    p.node_budget = static_cast<int>(o.get_int("thread.limit", p.node_budget));
    p.decay_rate = o.get_double("tau", p.decay_rate);
    p.log_ratio_threshold = o.get_double("theta.threshold", p.log_ratio_threshold);
    p.signal_threshold = o.get_double("signal.threshold", p.signal_threshold);
    p.selection.threshold = o.get_double("partial", p.selection.threshold);
    p.selection.tuning = o.get_double("chi", p.selection.tuning);
    p.selection.source_weight = o.get_double("xi", p.selection.source_weight);
    p.psi_floor = o.get_double("psi.floor", p.psi_floor);
    p.halt_on_target = o.get_bool("halt.on.target", p.halt_on_target);
    p.workers = static_cast<int>(o.get_int("workers", p.workers));
    p.throughput_noise = o.get_double("noise", p.throughput_noise);
    const std::string form = o.get_string("psi.form", "eq36");
    if (form == "eq36") p.psi_form = PsiForm::InverseProbability;
    else if (form == "eq44") p.psi_form = PsiForm::Probability;
    else throw ConfigError("psi.form must be eq36 or eq44");
    return p;
}

QuantumNetwork network_from(const KeyValueConfig& o, std::uint64_t seed) {
    const std::string file = o.get_string("net", "");
    if (!file.empty()) return read_network_file(file);
    GenerationSpec spec;
    spec.nodes = static_cast<int>(o.get_int("nodes", spec.nodes));
    spec.links = static_cast<int>(o.get_int("links", spec.links));
    spec.kappa_min = o.get_double("kappa.min", spec.kappa_min);
    spec.kappa_max = o.get_double("kappa.max", spec.kappa_max);
    spec.tau_min = o.get_double("tau.min", spec.tau_min);
    spec.tau_max = o.get_double("tau.max", spec.tau_max);
    spec.throughput_min = o.get_double("throughput.min", spec.throughput_min);
    spec.throughput_max = o.get_double("throughput.max", spec.throughput_max);
    spec.fidelity_min = o.get_double("fidelity.min", spec.fidelity_min);
    spec.fidelity_max = o.get_double("fidelity.max", spec.fidelity_max);
    spec.level_weights = o.get_doubles("level.weights", spec.level_weights);
    spec.initial_utility = o.get_double("initial.utility", spec.initial_utility);
    return generate_network(spec, seed);
}

namespace {

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw ConfigError("sweep needs at least one point");
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < points; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return out;
}

void report(std::vector<std::string>* errors, const std::string& what) {
    if (errors) errors->push_back(what);
}

CsvTable fig3a(const KeyValueConfig& o, std::vector<std::string>* errors) {
    const double threshold = o.get_double("partial", 1.0);
    const double expected = o.get_double("expected.gradient", 2.0);
    const int lo = static_cast<int>(o.get_int("phi.decade.min", 0));
    const int hi = static_cast<int>(o.get_int("phi.decade.max", 8));
    CsvTable table({"phi", "tau"});
    for (int d = lo; d <= hi; ++d) {
        const double phi = std::pow(10.0, d);
        try {
            table.add_row({phi, decay_rate_from_threshold(threshold, expected, phi)});
        } catch (const DomainError& e) {
            report(errors, "fig3a phi=" + std::to_string(phi) + ": " + e.what());
        }
    }
    return table;
}

CsvTable fig3b(const KeyValueConfig& o, std::vector<std::string>* errors) {
    const double kappa_ab = o.get_double("kappa.total", 4.0);
    const double kappa_b = o.get_double("kappa.far", 2.0);
    const double mu = o.get_double("mean.received", 1.0);
    const auto taus = linspace(o.get_double("tau.lo", 0.1), o.get_double("tau.hi", 10.0),
                               static_cast<int>(o.get_int("tau.points", 100)));
    const ArrivalRates rates{kappa_ab - kappa_b, kappa_b};
    CsvTable table({"tau_a", "mean_gradient"});
    for (double tau : taus) {
        try {
            table.add_row({tau, mean_path_gradient(rates, tau, mu, Endpoint::A)});
        } catch (const DomainError& e) {
            report(errors, "fig3b tau=" + std::to_string(tau) + ": " + e.what());
        }
    }
    return table;
}

CsvTable fig4(const KeyValueConfig& o, std::vector<std::string>* errors) {
    const auto gains = o.get_doubles("gains", {0.1, 0.5, 0.8, 0.9});
    const int points = static_cast<int>(o.get_int("points", 81));
    const auto angles = linspace(-std::numbers::pi, std::numbers::pi, points);
    const auto means = linspace(0.0, o.get_double("mu.hi", 10.0), points);
    CsvTable table({"gamma", "nu", "rho", "mu", "mean_gradient"});
    for (double gain : gains) {
        for (int i = 0; i < points; ++i) {
            try {
                table.add_row({gain, angles[i], response(gain, angles[i]), means[i],
                               peak_mean_gradient(means[i], gain)});
            } catch (const DomainError& e) {
                report(errors, "fig4 gamma=" + std::to_string(gain) + ": " + e.what());
            }
        }
    }
    return table;
}

CsvTable fig5(const KeyValueConfig& o, std::vector<std::string>* errors) {
    const auto kappas = o.get_doubles("kappas", {1e4, 1e5, 1e6, 1e7, 1e8});
    const double fraction = o.get_double("pi", 0.5);
    const auto taus = linspace(o.get_double("tau.lo", 0.0), o.get_double("tau.hi", 2000.0),
                               static_cast<int>(o.get_int("tau.points", 41)));
    CsvTable table({"kappa", "tau", "cutoff"});
    for (double kappa : kappas) {
        for (double tau : taus) {
            try {
                table.add_row({kappa, tau, cutoff_rate(kappa, tau, fraction)});
            } catch (const DomainError& e) {
                report(errors, "fig5 kappa=" + std::to_string(kappa) +
                                   " tau=" + std::to_string(tau) + ": " + e.what());
            }
        }
    }
    return table;
}

CsvTable fig6(const KeyValueConfig& o, std::vector<std::string>* errors) {
    const auto probes = o.get_doubles("theta.values", {0.5, 0.2});
    const double probe_distance = o.get_double("psi.value", 5.0);
    const int competitors = static_cast<int>(o.get_int("competitors", 4));
    const int points = static_cast<int>(o.get_int("points", 21));
    const auto weights = linspace(0.0, 1.0, points);
    CsvTable table({"theta_z", "c1", "c2", "probability"});
    table.add_comment("candidate set: probed link (theta_z, psi=" +
                      std::to_string(probe_distance) + ") plus " +
                      std::to_string(competitors) + " competitors at theta=1, psi=1");
    for (double probe : probes) {
        for (double c1 : weights) {
            for (double c2 : weights) {
                std::vector<StepCandidate> cands;
                cands.push_back({probe, probe_distance, false});
                for (int k = 0; k < competitors; ++k) cands.push_back({1.0, 1.0, false});
                try {
                    table.add_row({probe, c1, c2, thread_step_distribution(cands, c1, c2)[0]});
                } catch (const DomainError& e) {
                    report(errors, "fig6 theta=" + std::to_string(probe) + ": " + e.what());
                }
            }
        }
    }
    return table;
}

CsvTable fig7(const KeyValueConfig& o, std::vector<std::string>* errors) {
    const auto errs = linspace(o.get_double("perr.lo", 0.0), o.get_double("perr.hi", 0.025),
                               static_cast<int>(o.get_int("perr.points", 26)));
    const int level_max = static_cast<int>(o.get_int("level.max", 10));
    CsvTable table({"p_err", "level", "correlation_measurement"});
    for (double p : errs) {
        for (int level = 1; level <= level_max; ++level) {
            try {
                table.add_row({p, static_cast<double>(level), correlation_measurement(p, level)});
            } catch (const DomainError& e) {
                report(errors, "fig7 p=" + std::to_string(p) + ": " + e.what());
            }
        }
    }
    return table;
}

CsvTable route_experiment(const ExperimentConfig& config) {
    const QuantumNetwork net = network_from(config.options, config.seed);
    const RoutingParams params = routing_params_from(config.options);
    const NodeIndex source =
        net.require_node(config.options.get_string("source", net.node(0).id));
    const NodeIndex target = net.require_node(
        config.options.get_string("target", net.node(net.node_count() - 1).id));
    const RouteResult result = run_routing(net, source, target, params, config.seed);
    CsvTable table({"thread", "step", "node", "link", "status"});
    for (const ThreadTrace& tr : result.threads) {
        for (std::size_t s = 0; s < tr.nodes.size(); ++s) {
            table.add_row({static_cast<double>(tr.thread_id), static_cast<double>(s),
                           static_cast<double>(tr.nodes[s]),
                           static_cast<double>(s == 0 ? -1 : tr.links[s - 1]),
                           static_cast<double>(static_cast<int>(tr.status))});
        }
    }
    return table;
}

CsvTable sweep_experiment(const ExperimentConfig& config) {
    const QuantumNetwork net = network_from(config.options, config.seed);
    const RoutingParams params = routing_params_from(config.options);
    const NodeIndex source =
        net.require_node(config.options.get_string("source", net.node(0).id));
    const NodeIndex target = net.require_node(
        config.options.get_string("target", net.node(net.node_count() - 1).id));
    const int runs = static_cast<int>(config.options.get_int("runs", 16));
    if (runs < 1) throw ConfigError("sweep: runs must be >= 1");
    CsvTable table({"seed", "paths", "winner_found", "winner_score", "winner_hops",
                    "total_visits", "visit_budget"});
    for (int r = 0; r < runs; ++r) {
        const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
        const RouteResult res = run_routing(net, source, target, params, seed);
        const bool won = res.winner.has_value();
        table.add_row({static_cast<double>(seed), static_cast<double>(res.paths.size()),
                       won ? 1.0 : 0.0, won ? res.paths[*res.winner].score : 0.0,
                       won ? static_cast<double>(res.paths[*res.winner].links.size()) : 0.0,
                       static_cast<double>(res.total_visits),
                       static_cast<double>(res.visit_budget)});
    }
    return table;
}

}  // namespace

CsvTable run_experiment(const ExperimentConfig& config, std::vector<std::string>* row_errors) {
    switch (config.id) {
        case ExperimentId::Fig3a: return fig3a(config.options, row_errors);
        case ExperimentId::Fig3b: return fig3b(config.options, row_errors);
        case ExperimentId::Fig4: return fig4(config.options, row_errors);
        case ExperimentId::Fig5: return fig5(config.options, row_errors);
        case ExperimentId::Fig6: return fig6(config.options, row_errors);
        case ExperimentId::Fig7: return fig7(config.options, row_errors);
        case ExperimentId::Route: return route_experiment(config);
        case ExperimentId::Sweep: return sweep_experiment(config);
    }
    throw ConfigError("unknown experiment id");
}

}  // namespace egret
