#pragma once

namespace egret {

// Per-node error budget: an effective logical error probability plus residual
// errors. The sum is the per-node error probability used below.
struct ErrorModel {
    double logical = 0.0;
    double residual = 0.0;
    double total() const { return logical + residual; }
};

// End-to-end fidelity of the delivered Bell pair over a level-l link:
// (1 - p_err)^(2 * 2^(l-1)).
double entanglement_fidelity(double p_err, int level);

// Correlation measurement between the final stations, the experimentally
// accessible fidelity proxy: (1 - p_err)^(2^(l-1) + 1).
double correlation_measurement(double p_err, int level);

struct SuccessProbabilities {
    double recovery = 0.0;           // over the intermediate stations
    double correction = 0.0;         // of the final error-correction step
    double fidelity_estimate = 0.0;  // their product; equals the fidelity
};

SuccessProbabilities success_probabilities(double p_err, int level);

// Upper bound on the information leaked to an eavesdropper at fidelity F.
// The second-order term is taken with unit constant, making `bound` a
// conservative surrogate; values above 1 are vacuous but valid.
struct LeakageBound {
    double security = 0.0;  // s = -log2(1 - F)
    double margin = 0.0;    // c = s - log2(2 + s + 1/ln 2)
    double bound = 0.0;     // 2^-c + 2^-2s
};

LeakageBound leakage_bound(double fidelity);

}  // namespace egret
