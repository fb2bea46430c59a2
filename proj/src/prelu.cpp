#include "overfit/prelu.hpp"

#include <cmath>
#include <sstream>

#include "assembly.hpp"
#include "overfit/error.hpp"

namespace overfit {

using nlohmann::json;

double clipped_ramp(double s, double c) { return s < 0.0 ? 0.0 : (s < c ? s : c); }

double auto_clip(double signal_sup) { return signal_sup + 1.0; }

RampGadget clipped_ramp_pair(std::span<const double> signal_weights, double signal_bias, double signal_sup,
                             double clip, double alpha, double scale) {
  if (alpha == 1.0 || !std::isfinite(alpha)) throw ParameterError("parametric ReLU slope alpha must differ from 1");
  if (!(clip > 0.0) || !std::isfinite(clip)) throw ParameterError("clip level c must be positive and finite");
  if (clip < signal_sup) {
    std::ostringstream msg;
    msg << "clip level c = " << clip << " is below the analytic sup of the wired signal " << signal_sup;
    throw ParameterError(msg.str());
  }
  RampGadget g;
  g.weights_a.assign(signal_weights.begin(), signal_weights.end());
  g.bias_a = signal_bias;
  g.weights_b = g.weights_a;
  g.bias_b = signal_bias - clip;
  g.out_weight_a = scale / (1.0 - alpha);
  g.out_weight_b = -scale / (1.0 - alpha);
  g.out_bias = -scale * alpha * clip / (1.0 - alpha);
  return g;
}

BasisBank prelu_hat_first_layer(const HatLayout& layout, std::size_t input_dim, double alpha,
                                NeuronSharing sharing) {
  return hat_first_layer(layout, input_dim, Activation::parametric_relu(alpha), sharing);
}

namespace {

struct Signal {
  std::vector<double> weights;
  double bias;
  double scale;
};

Mlp build(BasisBank bank, const std::vector<Signal>& signals, double signal_sup, const PreluOptions& options,
          std::size_t input_dim, json meta) {
  const double clip = options.clip.value_or(auto_clip(signal_sup));
  const auto activation = Activation::parametric_relu(options.alpha);
  detail::LayerBuilder second{bank.layer.out_width()};
  std::vector<double> out_w;
  double out_b = 0.0;
  for (const auto& s : signals) {
    auto g = clipped_ramp_pair(s.weights, s.bias, signal_sup, clip, options.alpha, s.scale);
    second.add(std::move(g.weights_a), g.bias_a);
    second.add(std::move(g.weights_b), g.bias_b);
    out_w.push_back(g.out_weight_a);
    out_w.push_back(g.out_weight_b);
    out_b += g.out_bias;
  }
  meta["params"]["alpha"] = options.alpha;
  meta["params"]["c"] = clip;
  meta["dead_zone_value"] = 0.0;
  return detail::assemble(input_dim,
                          {std::move(bank.layer), second.build(activation),
                           detail::output_layer(std::move(out_w), out_b)},
                          std::move(meta));
}

}  // namespace

Mlp classifier_1d_prelu(const ClassifierParams& params, const PreluOptions& options) {
  if (params.n < 2) throw ParameterError("N must be at least 2");
  if (params.d != 1) throw ParameterError("classifier_1d_prelu needs d = 1");
  if (params.cost != ClassifierCost::PlusMinusOne)
    throw ParameterError("the parametric ReLU classifier has no cross-entropy variant");
  check_truncation(params.b1, 0.0, 1.0, "b1");
  check_truncation(params.b2, 0.0, 1.0, "b2");

  const auto layout = HatLayout::unit_grid(params.n, HatMode::Disjoint);
  auto bank = prelu_hat_first_layer(layout, 1, options.alpha);
  std::vector<std::size_t> right;
  std::vector<std::size_t> left;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double x = layout.centers()[i];
    (label_halfspace({&x, 1}) > 0 ? right : left).push_back(bank.hat_row(0, i));
  }
  std::vector<Signal> signals = {{sum_rows(bank.combination, right), -params.b1, 1.0 / (1.0 - params.b1)},
                                 {sum_rows(bank.combination, left), -params.b2, -1.0 / (1.0 - params.b2)}};
  json meta = {{"family", "prelu-classifier-1d"},
               {"params", {{"n", params.n}, {"b1", params.b1}, {"b2", params.b2}}},
               {"output_bound", 1.0},
               {"dead_zone_radius", (1.0 - std::min(params.b1, params.b2)) * layout.half_width()}};
  return build(std::move(bank), signals, 1.0 - std::min(params.b1, params.b2), options, 1, std::move(meta));
}

Mlp approximator_1d_prelu(const TrainingSet& data, double b, const PreluOptions& options) {
  if (data.dim() != 1) throw ParameterError("approximator_1d_prelu needs one-dimensional data");
  const GridSpec spec = infer_grid(data);
  check_truncation(b, 0.0, 1.0);
  const auto layout = HatLayout::unit_grid(spec.n, HatMode::Overlapping);
  auto bank = prelu_hat_first_layer(layout, 1, options.alpha);
  std::vector<Signal> signals;
  for (std::size_t i = 0; i < spec.n; ++i) {
    const auto row = bank.combination.row(bank.hat_row(0, i));
    signals.push_back({{row.begin(), row.end()}, -b, data.target(i) / (1.0 - b)});
  }
  json meta = {{"family", "prelu-approx-1d"},
               {"params", {{"n", spec.n}, {"b", b}}},
               {"output_bound", detail::max_abs(data.targets())},
               {"dead_zone_radius", (1.0 - b) * layout.half_width()}};
  return build(std::move(bank), signals, 1.0 - b, options, 1, std::move(meta));
}

Mlp classifier_nd_prelu(const ClassifierParams& params, const PreluOptions& options) {
  if (params.n < 2) throw ParameterError("N must be at least 2");
  if (params.d < 2) throw ParameterError("classifier_nd_prelu needs d >= 2");
  if (params.b1 != params.b2) throw ParameterError("distinct b1, b2 are only supported in 1D");
  const auto d = static_cast<double>(params.d);
  const double b = params.b1;
  check_truncation(b, d - 1.0, d);

  const auto layout = HatLayout::unit_grid(params.n, HatMode::Disjoint);
  auto bank = prelu_hat_first_layer(layout, params.d, options.alpha);
  auto right = detail::all_rows_except(bank, 0);
  auto left = right;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double x = layout.centers()[i];
    (label_halfspace({&x, 1}) > 0 ? right : left).push_back(bank.hat_row(0, i));
  }
  std::vector<Signal> signals = {{sum_rows(bank.combination, right), -b, 1.0 / (d - b)},
                                 {sum_rows(bank.combination, left), -b, -1.0 / (d - b)}};
  json meta = {{"family", "prelu-classifier-nd"},
               {"params", {{"n", params.n}, {"d", params.d}, {"b", b}}},
               {"output_bound", 1.0},
               {"dead_zone_radius", (d - b) * layout.half_width()}};
  return build(std::move(bank), signals, d - b, options, params.d, std::move(meta));
}

Mlp approximator_nd_prelu(const TrainingSet& data, double b, const PreluOptions& options,
                          std::size_t width_budget) {
  const GridSpec spec = infer_grid(data);
  const auto d = static_cast<double>(spec.d);
  check_truncation(b, d - 1.0, d);
  const auto pairs = checked_power(spec.n, spec.d);
  if (!pairs || 2 * *pairs > width_budget) {
    throw BudgetError("second hidden layer of 2 x " + std::to_string(spec.n) + "^" + std::to_string(spec.d) +
                      " neurons exceeds the width budget of " + std::to_string(width_budget));
  }
  GridEnumerator cells(spec, width_budget);
  const auto layout = HatLayout::unit_grid(spec.n, HatMode::Overlapping);
  auto bank = prelu_hat_first_layer(layout, spec.d, options.alpha);
  std::vector<Signal> signals;
  std::vector<std::size_t> rows(spec.d);
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    const auto idx = cells.multi_index(cell);
    for (std::size_t j = 0; j < spec.d; ++j) rows[j] = bank.hat_row(j, idx[j]);
    signals.push_back({sum_rows(bank.combination, rows), -b, data.target(cell) / (d - b)});
  }
  json meta = {{"family", "prelu-approx-nd"},
               {"params", {{"n", spec.n}, {"d", spec.d}, {"b", b}}},
               {"output_bound", std::ldexp(detail::max_abs(data.targets()), static_cast<int>(spec.d))},
               {"dead_zone_radius", (d - b) * layout.half_width()}};
  return build(std::move(bank), signals, d - b, options, spec.d, std::move(meta));
}

}  // namespace overfit
