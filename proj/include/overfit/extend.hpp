#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "overfit/activation.hpp"
#include "overfit/mlp.hpp"

namespace overfit {

/// ReluExact: p_1 = eps f + c with c > eps sup|f|, carried unchanged by ReLU.
/// SmoothFirstOrder: the Taylor recurrence around c for a smooth activation
/// (sigmoid), |f_ext - f| = O(eps).
/// PreluShift: f + shift passed through Parametric ReLU neurons, shift > sup|f|.
enum class ExtensionMode { ReluExact, SmoothFirstOrder, PreluShift };

std::string_view extension_mode_name(ExtensionMode mode);
ExtensionMode extension_mode_from_name(std::string_view name);

struct ExtensionParams {
  ExtensionMode mode = ExtensionMode::ReluExact;
  std::size_t layers = 1;
  /// Empty: every appended layer has width 1. One entry: used for all layers.
  std::vector<std::size_t> widths;
  /// Defaults: 1 for ReluExact, 0.01 for SmoothFirstOrder. Unused by PreluShift.
  std::optional<double> epsilon;
  /// Expansion point c. Defaults: 1 + eps * sup|f| (ReluExact), 0 (SmoothFirstOrder).
  std::optional<double> anchor;
  /// PreluShift constant. Default 1 + sup|f|.
  std::optional<double> shift;
  /// Appended-layer activation. Defaults: ReLU, Sigmoid, or the network's
  /// Parametric ReLU for the three modes.
  std::optional<Activation> activation;
};

/// Appends params.layers hidden layers. Neuron 0 of each appended layer is the
/// carrier; the others have zero incoming weights, zero bias and zero outgoing
/// weights. The network's old output layer is folded into the first carrier.
Mlp extend(const Mlp& net, const ExtensionParams& params);

struct ExtensionError {
  double max_abs = 0.0;
  std::vector<double> argmax;
  std::size_t samples = 0;
};

/// max |original - extended| over `samples` pseudo-random points of [0,1]^d.
ExtensionError measure_extension_error(const Mlp& original, const Mlp& extended, std::size_t samples,
                                       std::uint64_t seed);

struct ConvergenceFit {
  bool exact = false;  // some error was exactly zero; no slope fitted
  double slope = 0.0;
  std::vector<double> epsilons;
  std::vector<double> errors;
  /// error / eps per step (the measured constant C).
  std::vector<double> constants;
};

/// Least-squares slope of log(error) against log(eps).
double fit_loglog_slope(std::span<const double> epsilons, std::span<const double> errors);

/// Builds one extension per eps, measures it against `original` and fits the
/// order. Needs at least three epsilons.
ConvergenceFit convergence_order(const Mlp& original, const std::function<Mlp(double)>& builder,
                                 std::span<const double> epsilons, std::size_t samples, std::uint64_t seed);

}  // namespace overfit
