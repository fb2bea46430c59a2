#pragma once

#include <string_view>

#include "overfit/mlp.hpp"
#include "overfit/training_set.hpp"

namespace overfit {

enum class LossKind { MAE, MSE, CrossEntropy };

std::string_view loss_name(LossKind kind);
LossKind loss_from_name(std::string_view name);

/// Target as seen by `kind`: for CrossEntropy a -1 label maps to 0.
double loss_target(LossKind kind, double y);

/// Mean absolute error, mean squared error, or binary cross-entropy of the
/// network over the data set.
///
/// Cross-entropy uses 0*log(0) = 0: an output of exactly 1 (or 0) is allowed
/// where the target is 1 (or 0). A DomainError naming the point is raised when
/// a term is infinite or the output is not a probability.
double loss(const Mlp& net, const TrainingSet& data, LossKind kind);

}  // namespace overfit
