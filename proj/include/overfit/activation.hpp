#pragma once

#include <string>
#include <string_view>

namespace overfit {

enum class ActivationTag { Identity, ReLU, ParametricReLU, Sigmoid };

/// Elementwise activation. `alpha` is the negative-side slope and is only
/// meaningful for ParametricReLU.
class Activation {
 public:
  constexpr Activation() = default;

  static constexpr Activation identity() { return Activation(ActivationTag::Identity, 0.0); }
  static constexpr Activation relu() { return Activation(ActivationTag::ReLU, 0.0); }
  static constexpr Activation sigmoid() { return Activation(ActivationTag::Sigmoid, 0.0); }
  /// Throws ParameterError for alpha == 1 or a non-finite alpha.
  static Activation parametric_relu(double alpha);

  ActivationTag tag() const { return tag_; }
  double alpha() const { return alpha_; }

  double operator()(double x) const;

  /// "identity", "relu", "prelu" or "sigmoid".
  std::string_view name() const;
  static Activation from_name(std::string_view name, double alpha = 0.0);

  friend bool operator==(const Activation&, const Activation&) = default;

 private:
  constexpr Activation(ActivationTag tag, double alpha) : tag_(tag), alpha_(alpha) {}

  ActivationTag tag_ = ActivationTag::Identity;
  double alpha_ = 0.0;
};

double activation_apply(const Activation& kind, double x);

/// Logistic function 1/(1+e^{-x}), evaluated without overflow for large |x|.
double logistic(double x);

}  // namespace overfit
