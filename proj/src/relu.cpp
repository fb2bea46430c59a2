#include "overfit/relu.hpp"

#include <cmath>
#include <sstream>

#include "assembly.hpp"
#include "overfit/error.hpp"

namespace overfit {

using nlohmann::json;

void check_truncation(double b, double lower, double upper, const char* name) {
  if (!(b >= lower && b < upper)) {
    std::ostringstream msg;
    msg << name << " = " << b << " outside [" << lower << ", " << upper << ")";
    throw ParameterError(msg.str());
  }
}

namespace {

void check_grid_n(std::size_t n) {
  if (n < 2) throw ParameterError("N must be at least 2, got " + std::to_string(n));
}

std::string cost_name(ClassifierCost cost) {
  return cost == ClassifierCost::CrossEntropy ? "cross-entropy" : "pm1";
}

}  // namespace

Mlp classifier_1d(const ClassifierParams& params, NeuronSharing sharing) {
  check_grid_n(params.n);
  if (params.d != 1) throw ParameterError("classifier_1d needs d = 1");
  check_truncation(params.b1, 0.0, 1.0, "b1");
  check_truncation(params.b2, 0.0, 1.0, "b2");

  const auto layout = HatLayout::unit_grid(params.n, HatMode::Disjoint);
  auto bank = hat_first_layer(layout, 1, Activation::relu(), sharing);

  std::vector<std::size_t> right;
  std::vector<std::size_t> left;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double x = layout.centers()[i];
    (label_halfspace({&x, 1}) > 0 ? right : left).push_back(bank.hat_row(0, i));
  }
  detail::LayerBuilder second{bank.layer.out_width()};
  second.add(sum_rows(bank.combination, right), -params.b1);
  second.add(sum_rows(bank.combination, left), -params.b2);

  const bool ce = params.cost == ClassifierCost::CrossEntropy;
  const double half = ce ? 0.5 : 1.0;
  auto out = detail::output_layer({half / (1.0 - params.b1), -half / (1.0 - params.b2)}, ce ? 0.5 : 0.0);

  json meta = {{"family", "relu-classifier-1d"},
               {"params", {{"n", params.n}, {"b1", params.b1}, {"b2", params.b2}, {"cost", cost_name(params.cost)}}},
               {"output_bound", 1.0},
               {"dead_zone_radius", (1.0 - std::min(params.b1, params.b2)) * layout.half_width()},
               {"dead_zone_value", ce ? 0.5 : 0.0}};
  return detail::assemble(1, {std::move(bank.layer), second.build(Activation::relu()), std::move(out)},
                          std::move(meta));
}

Mlp approximator_1d(const TrainingSet& data, double b, NeuronSharing sharing) {
  if (data.dim() != 1) throw ParameterError("approximator_1d needs one-dimensional data");
  const GridSpec spec = infer_grid(data);
  check_truncation(b, 0.0, 1.0);

  const auto layout = HatLayout::unit_grid(spec.n, HatMode::Overlapping);
  auto bank = hat_first_layer(layout, 1, Activation::relu(), sharing);
  detail::LayerBuilder second{bank.layer.out_width()};
  std::vector<double> out_w;
  for (std::size_t i = 0; i < spec.n; ++i) {
    const auto row = bank.combination.row(bank.hat_row(0, i));
    second.add({row.begin(), row.end()}, -b);
    out_w.push_back(data.target(i) / (1.0 - b));
  }
  json meta = {{"family", "relu-approx-1d"},
               {"params", {{"n", spec.n}, {"b", b}}},
               {"output_bound", detail::max_abs(data.targets())},
               {"dead_zone_radius", (1.0 - b) * layout.half_width()},
               {"dead_zone_value", 0.0}};
  return detail::assemble(1,
                          {std::move(bank.layer), second.build(Activation::relu()),
                           detail::output_layer(std::move(out_w), 0.0)},
                          std::move(meta));
}

Mlp classifier_nd(const ClassifierParams& params, NeuronSharing sharing) {
  check_grid_n(params.n);
  if (params.d < 2) throw ParameterError("classifier_nd needs d >= 2; use classifier_1d for d = 1");
  if (params.b1 != params.b2) throw ParameterError("distinct b1, b2 are only supported in 1D");
  const auto d = static_cast<double>(params.d);
  const double b = params.b1;
  check_truncation(b, d - 1.0, d);

  const auto layout = HatLayout::unit_grid(params.n, HatMode::Disjoint);
  auto bank = hat_first_layer(layout, params.d, Activation::relu(), sharing);
  auto right = detail::all_rows_except(bank, 0);
  auto left = right;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double x = layout.centers()[i];
    (label_halfspace({&x, 1}) > 0 ? right : left).push_back(bank.hat_row(0, i));
  }
  detail::LayerBuilder second{bank.layer.out_width()};
  second.add(sum_rows(bank.combination, right), -b);
  second.add(sum_rows(bank.combination, left), -b);
  auto out = detail::output_layer({1.0 / (d - b), -1.0 / (d - b)}, 0.0);

  json meta = {{"family", "relu-classifier-nd"},
               {"params", {{"n", params.n}, {"d", params.d}, {"b", b}}},
               {"output_bound", 1.0},
               {"dead_zone_radius", (d - b) * layout.half_width()},
               {"dead_zone_value", 0.0}};
  return detail::assemble(params.d, {std::move(bank.layer), second.build(Activation::relu()), std::move(out)},
                          std::move(meta));
}

Mlp approximator_nd(const TrainingSet& data, double b, std::size_t width_budget, NeuronSharing sharing) {
  const GridSpec spec = infer_grid(data);
  const auto d = static_cast<double>(spec.d);
  check_truncation(b, d - 1.0, d);
  GridEnumerator cells(spec, width_budget);

  const auto layout = HatLayout::unit_grid(spec.n, HatMode::Overlapping);
  auto bank = hat_first_layer(layout, spec.d, Activation::relu(), sharing);
  detail::LayerBuilder second{bank.layer.out_width()};
  std::vector<double> out_w;
  std::vector<std::size_t> rows(spec.d);
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    const auto idx = cells.multi_index(cell);
    for (std::size_t j = 0; j < spec.d; ++j) rows[j] = bank.hat_row(j, idx[j]);
    second.add(sum_rows(bank.combination, rows), -b);
    out_w.push_back(data.target(cell) / (d - b));
  }
  json meta = {{"family", "relu-approx-nd"},
               {"params", {{"n", spec.n}, {"d", spec.d}, {"b", b}}},
               {"output_bound", std::ldexp(detail::max_abs(data.targets()), static_cast<int>(spec.d))},
               {"dead_zone_radius", (d - b) * layout.half_width()},
               {"dead_zone_value", 0.0}};
  return detail::assemble(spec.d,
                          {std::move(bank.layer), second.build(Activation::relu()),
                           detail::output_layer(std::move(out_w), 0.0)},
                          std::move(meta));
}

Mlp image_classifier(const ImageGridSpec& spec, double b, NeuronSharing sharing) {
  spec.check();
  const auto p = static_cast<double>(spec.pixels);
  check_truncation(b, p - 1.0, p);

  const auto raw = spec.raw_levels();
  const auto layout = HatLayout::from_centers(spec.normalized_levels(), HatMode::Disjoint);
  auto bank = hat_first_layer(layout, spec.pixels, Activation::relu(), sharing);
  std::vector<std::size_t> dark;
  std::vector<std::size_t> light;
  for (std::size_t j = 0; j < spec.pixels; ++j) {
    for (std::size_t i = 0; i < raw.size(); ++i)
      (raw[i] < kPixelThreshold ? dark : light).push_back(bank.hat_row(j, i));
  }
  detail::LayerBuilder second{bank.layer.out_width()};
  second.add(sum_rows(bank.combination, dark), -b);
  second.add(sum_rows(bank.combination, light), -b);
  // Dark sum carries the negative weight so dark images map to their label -1.
  auto out = detail::output_layer({-1.0 / (p - b), 1.0 / (p - b)}, 0.0);

  json meta = {{"family", "relu-image-classifier"},
               {"params", {{"pixels", spec.pixels}, {"m", spec.step}, {"b", b}}},
               {"output_bound", 1.0},
               {"dead_zone_radius", (p - b) * layout.half_width()},
               {"dead_zone_value", 0.0}};
  return detail::assemble(spec.pixels, {std::move(bank.layer), second.build(Activation::relu()), std::move(out)},
                          std::move(meta));
}

}  // namespace overfit
