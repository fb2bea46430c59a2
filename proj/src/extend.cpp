#include "overfit/extend.hpp"

#include <cmath>
#include <sstream>

#include "overfit/error.hpp"
#include "overfit/parallel.hpp"
#include "overfit/rng.hpp"

namespace overfit {

using nlohmann::json;

std::string_view extension_mode_name(ExtensionMode mode) {
  switch (mode) {
    case ExtensionMode::ReluExact:
      return "relu-exact";
    case ExtensionMode::SmoothFirstOrder:
      return "smooth";
    case ExtensionMode::PreluShift:
      return "prelu-shift";
  }
  return "relu-exact";
}

ExtensionMode extension_mode_from_name(std::string_view name) {
  if (name == "relu-exact") return ExtensionMode::ReluExact;
  if (name == "smooth" || name == "smooth-first-order") return ExtensionMode::SmoothFirstOrder;
  if (name == "prelu-shift") return ExtensionMode::PreluShift;
  throw ParameterError("unknown extension mode '" + std::string(name) + "'");
}

namespace {

// Carrier recurrence p_1 = eps f + c, p_n = a(p_{n-1})/a'(c) - a(c)/a'(c) + c,
// output a(p_M)/(a'(c) eps) - a(c)/(a'(c) eps).
struct Recurrence {
  Activation activation;
  double epsilon = 1.0;
  double anchor = 0.0;
  double value = 0.0;  // a(c)
  double slope = 1.0;  // a'(c)
};

std::optional<Activation> network_prelu(const Mlp& net) {
  for (std::size_t i = 0; i + 1 < net.layers.size(); ++i)
    if (net.layers[i].activation.tag() == ActivationTag::ParametricReLU) return net.layers[i].activation;
  return std::nullopt;
}

Recurrence plan(const Mlp& net, const ExtensionParams& params) {
  const double bound = net.output_bound();
  Recurrence r;
  switch (params.mode) {
    case ExtensionMode::ReluExact: {
      r.activation = params.activation.value_or(Activation::relu());
      if (r.activation.tag() != ActivationTag::ReLU && r.activation.tag() != ActivationTag::ParametricReLU)
        throw ParameterError("relu-exact extension needs a ReLU-like activation");
      r.epsilon = params.epsilon.value_or(1.0);
      if (!(r.epsilon > 0.0)) throw ParameterError("epsilon must be positive");
      if (params.anchor) {
        r.anchor = *params.anchor;
        if (!(r.anchor > 0.0)) throw ParameterError("relu-exact anchor c must be positive");
        if (std::isfinite(bound) && !(r.anchor > r.epsilon * bound)) {
          std::ostringstream msg;
          msg << "anchor c = " << r.anchor << " does not exceed eps * sup|f| = " << r.epsilon * bound
              << "; p1 = eps f + c could reach zero";
          throw ParameterError(msg.str());
        }
      } else {
        if (!std::isfinite(bound))
          throw ParameterError("network has no analytic output bound; pass the anchor c explicitly");
        r.anchor = 1.0 + r.epsilon * bound;
      }
      r.value = r.anchor;
      r.slope = 1.0;
      break;
    }
    case ExtensionMode::SmoothFirstOrder: {
      r.activation = params.activation.value_or(Activation::sigmoid());
      if (r.activation.tag() != ActivationTag::Sigmoid)
        throw ParameterError("smooth extension is wired for the sigmoid activation only");
      r.epsilon = params.epsilon.value_or(0.01);
      if (!(r.epsilon > 0.0)) throw ParameterError("epsilon must be positive");
      r.anchor = params.anchor.value_or(0.0);
      r.value = logistic(r.anchor);
      r.slope = r.value * (1.0 - r.value);
      if (!(r.slope > 0.0)) {
        std::ostringstream msg;
        msg << "a'(c) = 0 at c = " << r.anchor;
        throw ParameterError(msg.str());
      }
      break;
    }
    case ExtensionMode::PreluShift: {
      if (params.activation) {
        r.activation = *params.activation;
      } else if (auto a = network_prelu(net)) {
        r.activation = *a;
      } else {
        throw ParameterError("prelu-shift needs a parametric ReLU activation (network has none)");
      }
      if (r.activation.tag() != ActivationTag::ParametricReLU && r.activation.tag() != ActivationTag::ReLU)
        throw ParameterError("prelu-shift needs a parametric ReLU activation");
      if (params.shift) {
        r.anchor = *params.shift;
        if (std::isfinite(bound) && !(r.anchor > bound)) {
          std::ostringstream msg;
          msg << "shift " << r.anchor << " does not exceed sup|f| bound " << bound;
          throw ParameterError(msg.str());
        }
        if (!(r.anchor > 0.0)) throw ParameterError("shift must be positive");
      } else {
        if (!std::isfinite(bound))
          throw ParameterError("network has no analytic output bound; pass the shift explicitly");
        r.anchor = 1.0 + bound;
      }
      r.epsilon = 1.0;
      r.value = r.anchor;
      r.slope = 1.0;
      break;
    }
  }
  return r;
}

}  // namespace

Mlp extend(const Mlp& net, const ExtensionParams& params) {
  require_valid(net);
  if (params.layers == 0) throw ParameterError("extension needs at least one appended layer");
  std::vector<std::size_t> widths = params.widths;
  if (widths.empty()) widths.assign(params.layers, 1);
  if (widths.size() == 1) widths.assign(params.layers, widths[0]);
  if (widths.size() != params.layers)
    throw ParameterError("got " + std::to_string(widths.size()) + " widths for " + std::to_string(params.layers) +
                         " appended layers");
  for (auto w : widths)
    if (w == 0) throw ParameterError("appended layer width must be at least 1");

  const Recurrence r = plan(net, params);

  Mlp out;
  out.input_dim = net.input_dim;
  out.layers.assign(net.layers.begin(), net.layers.end() - 1);
  out.metadata = net.metadata;
  const DenseLayer& old_output = net.layers.back();

  std::size_t in_width = old_output.in_width();
  for (std::size_t n = 0; n < params.layers; ++n) {
    DenseLayer layer;
    layer.weights = Matrix(widths[n], in_width);
    layer.bias.assign(widths[n], 0.0);
    layer.activation = r.activation;
    if (n == 0) {
      for (std::size_t c = 0; c < in_width; ++c) layer.weights(0, c) = r.epsilon * old_output.weights(0, c);
      layer.bias[0] = r.epsilon * old_output.bias[0] + r.anchor;
    } else {
      layer.weights(0, 0) = 1.0 / r.slope;
      layer.bias[0] = r.anchor - r.value / r.slope;
    }
    out.layers.push_back(std::move(layer));
    in_width = widths[n];
  }
  DenseLayer output;
  output.weights = Matrix(1, in_width);
  output.weights(0, 0) = 1.0 / (r.slope * r.epsilon);
  output.bias = {-r.value / (r.slope * r.epsilon)};
  output.activation = Activation::identity();
  out.layers.push_back(std::move(output));

  json record = {{"mode", extension_mode_name(params.mode)},
                 {"layers", params.layers},
                 {"widths", widths},
                 {"epsilon", r.epsilon},
                 {"c", r.anchor},
                 {"a_c", r.value},
                 {"da_c", r.slope},
                 {"activation", {{"kind", r.activation.name()}, {"alpha", r.activation.alpha()}}},
                 {"first_appended_layer", net.layers.size() - 1},
                 {"carrier_indices", std::vector<std::size_t>(params.layers, 0)}};
  if (!out.metadata.is_object()) out.metadata = json::object();
  out.metadata["extensions"].push_back(std::move(record));
  return out;
}

ExtensionError measure_extension_error(const Mlp& original, const Mlp& extended, std::size_t samples,
                                       std::uint64_t seed) {
  if (original.input_dim != extended.input_dim)
    throw StructuralError("networks have different input dimensions");
  const std::size_t d = original.input_dim;
  const CounterRng rng(seed);
  struct Worst {
    double value = -1.0;
    std::size_t index = 0;
  };
  auto sample = [&](std::size_t i, std::vector<double>& x) {
    for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(i * d + j);
  };
  const Worst worst = chunked_reduce(
      samples, Worst{},
      [&](std::size_t begin, std::size_t end) {
        Worst w;
        std::vector<double> x(d);
        for (std::size_t i = begin; i < end; ++i) {
          sample(i, x);
          const double diff = std::abs(forward(original, x) - forward(extended, x));
          if (diff > w.value) w = {diff, i};
        }
        return w;
      },
      [](const Worst& a, const Worst& b) { return b.value > a.value ? b : a; });

  ExtensionError e;
  e.samples = samples;
  e.max_abs = std::max(0.0, worst.value);
  e.argmax.resize(d);
  if (samples > 0) sample(worst.index, e.argmax);
  return e;
}

double fit_loglog_slope(std::span<const double> epsilons, std::span<const double> errors) {
  if (epsilons.size() != errors.size() || epsilons.size() < 2)
    throw ParameterError("slope fit needs at least two (eps, error) pairs");
  const auto n = static_cast<double>(epsilons.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double x = std::log(epsilons[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceFit convergence_order(const Mlp& original, const std::function<Mlp(double)>& builder,
                                 std::span<const double> epsilons, std::size_t samples, std::uint64_t seed) {
  if (epsilons.size() < 3) throw ParameterError("convergence order needs at least three epsilons");
  for (double e : epsilons)
    if (!(e > 0.0)) throw ParameterError("epsilons must be positive");
  const double ratio = epsilons[1] / epsilons[0];
  for (std::size_t i = 2; i < epsilons.size(); ++i) {
    if (std::abs(epsilons[i] / epsilons[i - 1] - ratio) > 1e-9 * std::abs(ratio))
      throw ParameterError("epsilons must form a geometric sequence");
  }
  ConvergenceFit fit;
  fit.epsilons.assign(epsilons.begin(), epsilons.end());
  for (double e : epsilons) {
    const double err = measure_extension_error(original, builder(e), samples, seed).max_abs;
    fit.errors.push_back(err);
    fit.constants.push_back(err / e);
    if (err == 0.0) fit.exact = true;
  }
  if (!fit.exact) fit.slope = fit_loglog_slope(fit.epsilons, fit.errors);
  return fit;
}

}  // namespace overfit
