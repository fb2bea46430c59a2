#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "overfit/relu.hpp"

namespace overfit {

/// alpha is the Parametric ReLU slope; `clip` is the plateau c of the clipped
/// ramp. Without a clip the constructors use (analytic sup of the signal) + 1.
struct PreluOptions {
  double alpha = 0.01;
  std::optional<double> clip;
};

/// Plateau ramp: 0 below 0, identity on [0, c), c above.
double clipped_ramp(double s, double c);

/// Two second-layer Parametric ReLU neurons reading the same signal s and s - c.
/// out_weight_a * sigma(s) + out_weight_b * sigma(s - c) + out_bias equals
/// scale * clipped_ramp(s, c).
struct RampGadget {
  std::vector<double> weights_a;
  double bias_a = 0.0;
  std::vector<double> weights_b;
  double bias_b = 0.0;
  double out_weight_a = 0.0;
  double out_weight_b = 0.0;
  double out_bias = 0.0;
};

/// Wires a clipped ramp onto the signal `signal_weights . h + signal_bias`.
/// Throws ParameterError when clip < signal_sup or alpha == 1.
RampGadget clipped_ramp_pair(std::span<const double> signal_weights, double signal_bias, double signal_sup,
                             double clip, double alpha, double scale = 1.0);

/// Default clip: analytic sup of the wired signal plus one.
double auto_clip(double signal_sup);

/// Same neuron count as the ReLU hats; the map includes 1/((1-alpha) h).
BasisBank prelu_hat_first_layer(const HatLayout& layout, std::size_t input_dim, double alpha,
                                NeuronSharing sharing = NeuronSharing::Shared);

/// H1 = 2N+1, H2 = 4.
Mlp classifier_1d_prelu(const ClassifierParams& params, const PreluOptions& options);
/// H1 = N+2, H2 = 2N.
Mlp approximator_1d_prelu(const TrainingSet& data, double b, const PreluOptions& options);
/// H1 = d(2N+1), H2 = 4.
Mlp classifier_nd_prelu(const ClassifierParams& params, const PreluOptions& options);
/// H1 = d(N+2), H2 = 2N^d.
Mlp approximator_nd_prelu(const TrainingSet& data, double b, const PreluOptions& options,
                          std::size_t width_budget = kDefaultWidthBudget);

}  // namespace overfit
