#include "overfit/activation.hpp"

#include <cmath>
#include <string>

#include "overfit/error.hpp"

namespace overfit {

Activation Activation::parametric_relu(double alpha) {
  if (!std::isfinite(alpha)) throw ParameterError("parametric ReLU slope must be finite");
  if (alpha == 1.0) throw ParameterError("parametric ReLU slope alpha must differ from 1");
  return Activation(ActivationTag::ParametricReLU, alpha);
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double Activation::operator()(double x) const {
  switch (tag_) {
    case ActivationTag::Identity:
      return x;
    case ActivationTag::ReLU:
      return x > 0.0 ? x : 0.0;
    case ActivationTag::ParametricReLU:
      return x < 0.0 ? alpha_ * x : x;
    case ActivationTag::Sigmoid:
      return logistic(x);
  }
  return x;
}

double activation_apply(const Activation& kind, double x) { return kind(x); }

std::string_view Activation::name() const {
  switch (tag_) {
    case ActivationTag::Identity:
      return "identity";
    case ActivationTag::ReLU:
      return "relu";
    case ActivationTag::ParametricReLU:
      return "prelu";
    case ActivationTag::Sigmoid:
      return "sigmoid";
  }
  return "identity";
}

Activation Activation::from_name(std::string_view name, double alpha) {
  if (name == "identity") return identity();
  if (name == "relu") return relu();
  if (name == "prelu") return parametric_relu(alpha);
  if (name == "sigmoid") return sigmoid();
  throw ParameterError("unknown activation '" + std::string(name) + "'");
}

}  // namespace overfit
