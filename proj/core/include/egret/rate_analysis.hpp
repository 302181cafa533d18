#pragma once

namespace egret {

// Gain of the gradient reception filter at a node: kappa / (kappa + tau).
// In [0, 1); equals 1 only for a zero decay rate.
double gradient_gain(double observation_rate, double decay_rate);

// Reception-filter parameters of a node, bundled for cutoff sweeps.
struct ResponseParams {
    double observation_rate = 0.0;
    double decay_rate = 0.0;
    double peak_fraction = 1.0;  // in (0, 1]

    double gain() const;         // kappa / (kappa + tau)
    double window() const;       // admissible |angle|, 2*pi/kappa
    double cutoff() const;
};

// Magnitude response of the reception filter at angular variable `angle`:
// 1 / sqrt(1 + gain^2 - 2*gain*cos(angle)). Requires gain in [0, 1).
double response(double gain, double angle);

// Peak of the response, attained at angle zero: 1 / (1 - gain).
double peak_response(double gain);

// Peak mean received gradient: mean_received / (1 - gain).
double peak_mean_gradient(double mean_received, double gain);

// Angular window of a node with observation rate kappa: |angle| <= 2*pi/kappa.
double angle_bound(double observation_rate);

// Response of a node's filter, enforcing the angular window.
double response_at_node(double observation_rate, double decay_rate, double angle);

// Observation rate beyond which the received gradient stops adapting, at a
// fraction `peak_fraction` of the peak response. The arccosine argument must
// land in [-1, 1]; out-of-range parameters are an error, never clamped.
double cutoff_rate(double observation_rate, double decay_rate, double peak_fraction);

}  // namespace egret
