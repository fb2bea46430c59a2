#include "overfit/mlp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "overfit/error.hpp"

namespace overfit {

namespace {

void apply_layer(const DenseLayer& layer, std::span<const double> in, std::vector<double>& pre,
                 std::vector<double>& post) {
  const std::size_t rows = layer.out_width();
  pre.resize(rows);
  post.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto w = layer.weights.row(r);
    double acc = layer.bias[r];
    for (std::size_t c = 0; c < w.size(); ++c) acc += w[c] * in[c];
    pre[r] = acc;
    post[r] = layer.activation(acc);
  }
}

void check_shape(const Mlp& net, std::span<const double> x) {
  if (x.size() != net.input_dim) {
    std::ostringstream msg;
    msg << "input has " << x.size() << " coordinates, network expects " << net.input_dim;
    throw StructuralError(msg.str());
  }
  if (net.layers.empty()) throw StructuralError("network has no layers");
  std::size_t width = net.input_dim;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& layer = net.layers[i];
    if (layer.in_width() != width || layer.bias.size() != layer.out_width()) {
      std::ostringstream msg;
      msg << "layer " << i << " does not chain: expects " << layer.in_width() << " inputs, receives " << width;
      throw StructuralError(msg.str());
    }
    width = layer.out_width();
  }
  if (width != 1) throw StructuralError("network output is not scalar");
}

}  // namespace

std::vector<std::size_t> Mlp::hidden_widths() const {
  std::vector<std::size_t> widths;
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) widths.push_back(layers[i].out_width());
  return widths;
}

double Mlp::output_bound() const {
  if (metadata.is_object() && metadata.contains("output_bound") && metadata["output_bound"].is_number())
    return metadata["output_bound"].get<double>();
  return std::numeric_limits<double>::quiet_NaN();
}

double forward(const Mlp& net, std::span<const double> x) {
  check_shape(net, x);
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> pre;
  std::vector<double> post;
  for (const auto& layer : net.layers) {
    apply_layer(layer, a, pre, post);
    a.swap(post);
  }
  return a[0];
}

std::vector<LayerTrace> forward_trace(const Mlp& net, std::span<const double> x) {
  check_shape(net, x);
  std::vector<LayerTrace> trace;
  trace.reserve(net.layers.size());
  std::span<const double> in = x;
  for (const auto& layer : net.layers) {
    LayerTrace t;
    apply_layer(layer, in, t.pre_activation, t.post_activation);
    trace.push_back(std::move(t));
    in = trace.back().post_activation;
  }
  return trace;
}

std::vector<Finding> validate(const Mlp& net) {
  std::vector<Finding> findings;
  auto add = [&](std::size_t layer, const std::string& msg) { findings.push_back({layer, msg}); };

  if (net.input_dim == 0) add(0, "input dimension is zero");
  if (net.layers.size() < 2) add(0, "network needs at least one hidden layer and an output layer");

  std::size_t width = net.input_dim;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const auto& layer = net.layers[i];
    if (layer.in_width() != width) {
      std::ostringstream msg;
      msg << "layer " << i << " expects " << layer.in_width() << " inputs but previous width is " << width;
      add(i, msg.str());
    }
    if (layer.bias.size() != layer.out_width()) {
      std::ostringstream msg;
      msg << "layer " << i << " has " << layer.bias.size() << " biases for " << layer.out_width() << " rows";
      add(i, msg.str());
    }
    for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
      for (std::size_t c = 0; c < layer.weights.cols(); ++c) {
        if (!std::isfinite(layer.weights(r, c))) {
          std::ostringstream msg;
          msg << "layer " << i << " weight (" << r << ", " << c << ") is not finite";
          add(i, msg.str());
        }
      }
    }
    for (std::size_t r = 0; r < layer.bias.size(); ++r) {
      if (!std::isfinite(layer.bias[r])) {
        std::ostringstream msg;
        msg << "layer " << i << " bias " << r << " is not finite";
        add(i, msg.str());
      }
    }
    if (layer.activation.tag() == ActivationTag::ParametricReLU &&
        (layer.activation.alpha() == 1.0 || !std::isfinite(layer.activation.alpha()))) {
      add(i, "layer " + std::to_string(i) + " has an invalid parametric ReLU slope");
    }
    width = layer.out_width();
  }
  if (!net.layers.empty()) {
    const auto& out = net.layers.back();
    const std::size_t last = net.layers.size() - 1;
    if (out.out_width() != 1) add(last, "output layer width is " + std::to_string(out.out_width()) + ", expected 1");
    if (out.activation.tag() != ActivationTag::Identity) add(last, "output layer activation is not identity");
  }
  return findings;
}

void require_valid(const Mlp& net) {
  const auto findings = validate(net);
  if (!findings.empty()) throw StructuralError(findings.front().message);
}

}  // namespace overfit
