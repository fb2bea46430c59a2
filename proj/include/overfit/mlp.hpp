#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "overfit/activation.hpp"
#include "overfit/matrix.hpp"

namespace overfit {

/// y = activation(W x + bias). W is out_width x in_width.
struct DenseLayer {
  Matrix weights;
  std::vector<double> bias;
  Activation activation;

  std::size_t in_width() const { return weights.cols(); }
  std::size_t out_width() const { return weights.rows(); }
};

/// A dense feedforward network with scalar linear output. Constructors in this
/// library always return networks that pass `validate`; hand-built ones may
/// not, which is what `validate` is for.
///
/// `metadata` carries construction provenance (family, parameters, analytic
/// output bound, depth extensions) and round-trips through the JSON format.
struct Mlp {
  std::size_t input_dim = 0;
  std::vector<DenseLayer> layers;
  nlohmann::json metadata = nlohmann::json::object();

  std::size_t hidden_layer_count() const { return layers.empty() ? 0 : layers.size() - 1; }
  /// Widths of hidden layers H1, H2, ...
  std::vector<std::size_t> hidden_widths() const;
  /// Analytic bound on sup |f| recorded by the constructor, or NaN.
  double output_bound() const;
};

struct LayerTrace {
  std::vector<double> pre_activation;
  std::vector<double> post_activation;
};

struct Finding {
  std::size_t layer = 0;
  std::string message;
};

/// Throws StructuralError when x.size() != input_dim or the layers do not chain.
double forward(const Mlp& net, std::span<const double> x);

/// Every layer's pre/post activation; back().post_activation[0] == forward(net, x).
std::vector<LayerTrace> forward_trace(const Mlp& net, std::span<const double> x);

/// Reports width-chaining violations, non-finite entries, bias/row mismatch,
/// missing hidden layers and a malformed output layer. Empty means well formed.
std::vector<Finding> validate(const Mlp& net);

/// Throws StructuralError carrying the first finding when `validate` is not empty.
void require_valid(const Mlp& net);

}  // namespace overfit
