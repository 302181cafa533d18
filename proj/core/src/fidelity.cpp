#include "egret/fidelity.hpp"

#include <cmath>

#include "egret/errors.hpp"
#include "egret/network.hpp"

namespace egret {

namespace {

void check_inputs(double p_err, int level, const char* what) {
    if (p_err < 0.0 || p_err > 1.0)
        throw DomainError(std::string(what) + ": error probability must be in [0,1]");
    if (level < 1) throw DomainError(std::string(what) + ": level must be >= 1");
}

}  // namespace

double entanglement_fidelity(double p_err, int level) {
    check_inputs(p_err, level, "entanglement_fidelity");
    const double d = static_cast<double>(hop_distance(level));
    return std::pow(1.0 - p_err, 2.0 * d);
}

double correlation_measurement(double p_err, int level) {
    check_inputs(p_err, level, "correlation_measurement");
    const double d = static_cast<double>(hop_distance(level));
    return std::pow(1.0 - p_err, d + 1.0);
}

SuccessProbabilities success_probabilities(double p_err, int level) {
    check_inputs(p_err, level, "success_probabilities");
    const double d = static_cast<double>(hop_distance(level));
    SuccessProbabilities out;
    out.recovery = std::pow(1.0 - p_err, 2.0 * (d - 1.0));
    out.correction = std::pow(1.0 - p_err, 2.0);
    out.fidelity_estimate = out.recovery * out.correction;
    return out;
}

LeakageBound leakage_bound(double fidelity) {
    if (fidelity <= 0.0 || fidelity >= 1.0)
        throw DomainError("leakage_bound: fidelity must be in (0, 1)");
    LeakageBound out;
    out.security = -std::log2(1.0 - fidelity);
    out.margin = out.security - std::log2(2.0 + out.security + 1.0 / std::log(2.0));
    out.bound = std::exp2(-out.margin) + std::exp2(-2.0 * out.security);
    return out;
}

}  // namespace egret
