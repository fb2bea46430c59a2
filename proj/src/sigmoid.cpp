#include "overfit/sigmoid.hpp"

#include <cmath>

#include "assembly.hpp"
#include "overfit/error.hpp"

namespace overfit {

using nlohmann::json;

namespace {

void check_steepness(const SigmoidSpikeParams& p) {
  if (!(p.k > 0.0) || !std::isfinite(p.k)) throw ParameterError("spike steepness K must be positive and finite");
  if (!(p.l > 0.0) || !std::isfinite(p.l)) throw ParameterError("gate steepness L must be positive and finite");
}

double sum_abs(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

Mlp build(const TrainingSet& data, const GridSpec& spec, const SigmoidSpikeParams& params, std::size_t width_budget,
          const char* family) {
  const auto d = static_cast<double>(spec.d);
  GridEnumerator cells(spec, width_budget);
  const auto centers = grid_1d(spec.n);
  auto bank = sigmoid_spike_first_layer(centers, spec.d, params.k);

  // gate input L (Phi - b) / (d - b) folded into weights and bias
  const double gain = params.l / (d - params.b);
  detail::LayerBuilder second{bank.layer.out_width()};
  std::vector<double> out_w;
  std::vector<std::size_t> rows(spec.d);
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    const auto idx = cells.multi_index(cell);
    for (std::size_t j = 0; j < spec.d; ++j) rows[j] = bank.hat_row(j, idx[j]);
    auto w = sum_rows(bank.combination, rows);
    for (double& v : w) v *= gain;
    second.add(std::move(w), -gain * params.b);
    out_w.push_back(data.target(cell));
  }
  json meta = {{"family", family},
               {"params", {{"n", spec.n}, {"d", spec.d}, {"k", params.k}, {"l", params.l}, {"b", params.b}}},
               {"output_bound", sum_abs(data.targets())},
               {"support_threshold", 1e-3},
               {"dead_zone_value", 0.0}};
  return detail::assemble(spec.d,
                          {std::move(bank.layer), second.build(Activation::sigmoid()),
                           detail::output_layer(std::move(out_w), 0.0)},
                          std::move(meta));
}

}  // namespace

Mlp approximator_1d_sigmoid(const TrainingSet& data, const SigmoidSpikeParams& params) {
  if (data.dim() != 1) throw ParameterError("approximator_1d_sigmoid needs one-dimensional data");
  check_steepness(params);
  check_truncation(params.b, 0.0, 1.0);
  return build(data, infer_grid(data), params, kDefaultWidthBudget, "sigmoid-approx-1d");
}

Mlp approximator_nd_sigmoid(const TrainingSet& data, const SigmoidSpikeParams& params, std::size_t width_budget) {
  check_steepness(params);
  const GridSpec spec = infer_grid(data);
  const auto d = static_cast<double>(spec.d);
  check_truncation(params.b, d - 1.0, d);
  return build(data, spec, params, width_budget, "sigmoid-approx-nd");
}

SigmoidSpikeParams sigmoid_schedule(std::size_t step, std::size_t d) {
  if (d == 0) throw ParameterError("dimension must be positive");
  const double scale = std::ldexp(1.0, static_cast<int>(step));
  return {25.0 * scale, 10.0 * scale, static_cast<double>(d) - 1.0 / scale};
}

}  // namespace overfit
