#pragma once

#include <cstddef>

#include "overfit/relu.hpp"

namespace overfit {

/// k: spike steepness K, l: gate steepness L, b: truncation level.
struct SigmoidSpikeParams {
  double k = 200.0;
  double l = 150.0;
  double b = 0.0;
};

/// Step s of the loss schedule in d dimensions: K = 25 * 2^s, L = 10 * 2^s,
/// b = d - 2^-s. Later steps drive the grid loss towards zero.
SigmoidSpikeParams sigmoid_schedule(std::size_t step, std::size_t d = 1);

/// H1 = 2N spike neurons, H2 = N gates sigma(L (phi_i - b)/(1 - b)), output
/// weights y_i. The affine map is folded into the second layer.
Mlp approximator_1d_sigmoid(const TrainingSet& data, const SigmoidSpikeParams& params);

/// H1 = 2dN, H2 = N^d gates sigma(L (Phi - b)/(d - b)), b in [d-1, d).
Mlp approximator_nd_sigmoid(const TrainingSet& data, const SigmoidSpikeParams& params,
                            std::size_t width_budget = kDefaultWidthBudget);

}  // namespace overfit
