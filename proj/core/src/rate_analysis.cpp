#include "egret/rate_analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "egret/errors.hpp"

namespace egret {

double gradient_gain(double observation_rate, double decay_rate) {
    if (observation_rate < 0.0 || decay_rate < 0.0)
        throw DomainError("gradient_gain: rates must be >= 0");
    if (observation_rate == 0.0 && decay_rate == 0.0)
        throw DomainError("gradient_gain: undefined at zero rates");
    return observation_rate / (observation_rate + decay_rate);
}

double ResponseParams::gain() const { return gradient_gain(observation_rate, decay_rate); }

double ResponseParams::window() const { return angle_bound(observation_rate); }

double ResponseParams::cutoff() const {
    return cutoff_rate(observation_rate, decay_rate, peak_fraction);
}

double response(double gain, double angle) {
    if (gain < 0.0 || gain >= 1.0)
        throw DomainError("response: gain must be in [0, 1)");
    return 1.0 / std::sqrt(1.0 + gain * gain - 2.0 * gain * std::cos(angle));
}

double peak_response(double gain) {
    if (gain < 0.0 || gain >= 1.0)
        throw DivergenceError("peak_response: gain must be in [0, 1)");
    return 1.0 / (1.0 - gain);
}

double peak_mean_gradient(double mean_received, double gain) {
    if (mean_received < 0.0) throw DomainError("peak_mean_gradient: mean must be >= 0");
    return mean_received * peak_response(gain);
}

double angle_bound(double observation_rate) {
    if (observation_rate <= 0.0) throw DomainError("angle_bound: rate must be > 0");
    return 2.0 * std::numbers::pi / observation_rate;
}

double response_at_node(double observation_rate, double decay_rate, double angle) {
    const double bound = angle_bound(observation_rate);
    if (std::abs(angle) > bound)
        throw DomainError("response_at_node: angle outside the node window");
    return response(gradient_gain(observation_rate, decay_rate), angle);
}

double cutoff_rate(double observation_rate, double decay_rate, double peak_fraction) {
    if (observation_rate <= 0.0) throw DomainError("cutoff_rate: observation rate must be > 0");
    if (decay_rate < 0.0) throw DomainError("cutoff_rate: decay rate must be >= 0");
    if (peak_fraction <= 0.0 || peak_fraction > 1.0)
        throw DomainError("cutoff_rate: peak fraction must be in (0, 1]");
    const double k = observation_rate;
    const double t = decay_rate;
    const double p2 = peak_fraction * peak_fraction;
    const double denom = k * k + k * t;
    const double arg = (denom - (t * t + p2 * t * t) / (2.0 * p2)) / denom;
    if (arg < -1.0 || arg > 1.0)
        throw DomainError("cutoff_rate: arccos argument " + std::to_string(arg) +
                          " outside [-1, 1]");
    return k / (2.0 * std::numbers::pi) * std::acos(arg);
}

}  // namespace egret
