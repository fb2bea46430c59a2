#pragma once

#include <cstddef>

#include "overfit/grid.hpp"
#include "overfit/hat.hpp"
#include "overfit/mlp.hpp"
#include "overfit/training_set.hpp"

namespace overfit {

inline constexpr std::size_t kDefaultWidthBudget = 1'000'000;

/// PlusMinusOne outputs the labels -1/+1; CrossEntropy outputs 0/1 with the
/// dead zone at 1/2.
enum class ClassifierCost { PlusMinusOne, CrossEntropy };

/// Grid classifier parameters. In 1D, b1 and b2 lie in [0,1). In d dimensions
/// b1 == b2 == b in [d-1, d).
struct ClassifierParams {
  std::size_t n = 2;
  std::size_t d = 1;
  double b1 = 0.0;
  double b2 = 0.0;
  ClassifierCost cost = ClassifierCost::PlusMinusOne;

  static ClassifierParams one_d(std::size_t n, double b, ClassifierCost cost = ClassifierCost::PlusMinusOne) {
    return {n, 1, b, b, cost};
  }
  static ClassifierParams nd(std::size_t n, std::size_t d, double b) { return {n, d, b, b, ClassifierCost::PlusMinusOne}; }
};

/// Throws ParameterError unless lower <= b < upper.
void check_truncation(double b, double lower, double upper, const char* name = "b");

/// Two hidden layers: H1 = 2N+1 hats, H2 = 2 truncation neurons.
Mlp classifier_1d(const ClassifierParams& params, NeuronSharing sharing = NeuronSharing::Shared);

/// H1 = N+2 overlapping hats, H2 = N truncated hats weighted by the samples.
Mlp approximator_1d(const TrainingSet& data, double b, NeuronSharing sharing = NeuronSharing::Shared);

/// H1 = d(2N+1), H2 = 2. Requires d >= 2.
Mlp classifier_nd(const ClassifierParams& params, NeuronSharing sharing = NeuronSharing::Shared);

/// H1 = d(N+2), H2 = N^d. Refuses when N^d exceeds `width_budget`.
Mlp approximator_nd(const TrainingSet& data, double b, std::size_t width_budget = kDefaultWidthBudget,
                    NeuronSharing sharing = NeuronSharing::Shared);

/// H1 = P(2N+1), H2 = 2, b in [P-1, P). Dark images map to -1, light to +1.
Mlp image_classifier(const ImageGridSpec& spec, double b, NeuronSharing sharing = NeuronSharing::Shared);

}  // namespace overfit
