#include "overfit/hat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "overfit/error.hpp"

namespace overfit {

HatLayout HatLayout::from_centers(std::vector<double> centers, HatMode mode) {
  if (centers.size() < 2) throw ParameterError("hat layout needs at least 2 centers");
  const double spacing = (centers.back() - centers.front()) / static_cast<double>(centers.size() - 1);
  if (!(spacing > 0.0)) throw ParameterError("hat centers must be strictly increasing");
  for (std::size_t i = 1; i < centers.size(); ++i) {
    const double gap = centers[i] - centers[i - 1];
    if (std::abs(gap - spacing) > 1e-9 * spacing) {
      std::ostringstream msg;
      msg << "hat centers are not uniform: gap " << gap << " after center " << i - 1 << ", expected " << spacing;
      throw ParameterError(msg.str());
    }
  }
  HatLayout layout;
  layout.centers_ = std::move(centers);
  layout.mode_ = mode;
  layout.spacing_ = spacing;
  layout.half_width_ = mode == HatMode::Disjoint ? spacing / 2.0 : spacing;
  return layout;
}

HatLayout HatLayout::unit_grid(std::size_t n, HatMode mode) {
  if (n < 2) throw ParameterError("hat layout needs N >= 2, got " + std::to_string(n));
  std::vector<double> centers(n);
  for (std::size_t i = 0; i < n; ++i) centers[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return from_centers(std::move(centers), mode);
}

std::vector<double> HatLayout::knots() const {
  const double h = half_width_;
  std::vector<double> t;
  t.push_back(centers_.front() - h);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    t.push_back(centers_[i]);
    if (mode_ == HatMode::Disjoint) t.push_back(centers_[i] + h);
  }
  if (mode_ == HatMode::Overlapping) t.push_back(centers_.back() + h);
  return t;
}

std::size_t HatLayout::center_knot(std::size_t i) const { return mode_ == HatMode::Disjoint ? 1 + 2 * i : 1 + i; }

BasisBank hat_first_layer(const HatLayout& layout, std::size_t input_dim, Activation activation,
                          NeuronSharing sharing) {
  if (input_dim == 0) throw ParameterError("input dimension must be positive");
  if (activation.tag() != ActivationTag::ReLU && activation.tag() != ActivationTag::ParametricReLU)
    throw ParameterError("hat basis needs a ReLU or parametric ReLU activation");
  const double alpha = activation.alpha();
  const double h = layout.half_width();
  const double scale = 1.0 / ((1.0 - alpha) * h);
  const std::size_t n = layout.size();

  std::vector<double> knots;
  std::vector<std::size_t> middle(n);
  if (sharing == NeuronSharing::Shared) {
    knots = layout.knots();
    for (std::size_t i = 0; i < n; ++i) middle[i] = layout.center_knot(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double c = layout.centers()[i];
      knots.insert(knots.end(), {c - h, c, c + h});
      middle[i] = 3 * i + 1;
    }
  }
  const std::size_t per_dim = knots.size();

  BasisBank bank;
  bank.dims = input_dim;
  bank.centers_per_dim = n;
  bank.layer.weights = Matrix(input_dim * per_dim, input_dim);
  bank.layer.bias.assign(input_dim * per_dim, 0.0);
  bank.layer.activation = activation;
  bank.combination = Matrix(input_dim * n, input_dim * per_dim);
  for (std::size_t j = 0; j < input_dim; ++j) {
    for (std::size_t k = 0; k < per_dim; ++k) {
      bank.layer.weights(j * per_dim + k, j) = 1.0;
      bank.layer.bias[j * per_dim + k] = -knots[k];
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = bank.hat_row(j, i);
      const std::size_t col = j * per_dim + middle[i];
      bank.combination(row, col - 1) = scale;
      bank.combination(row, col) = -2.0 * scale;
      bank.combination(row, col + 1) = scale;
    }
  }
  return bank;
}

double hat_value(double t, double h) { return std::max(0.0, 1.0 - std::abs(t) / h); }

double sigmoid_spike_normalizer() { return logistic(1.0) - logistic(-1.0); }

double sigmoid_spike(double t, double steepness) {
  return (logistic(steepness * t + 1.0) - logistic(steepness * t - 1.0)) / sigmoid_spike_normalizer();
}

BasisBank sigmoid_spike_first_layer(std::span<const double> centers, std::size_t input_dim, double steepness) {
  if (!(steepness > 0.0) || !std::isfinite(steepness))
    throw ParameterError("spike steepness K must be positive and finite");
  if (input_dim == 0) throw ParameterError("input dimension must be positive");
  if (centers.empty()) throw ParameterError("spike basis needs at least one center");
  const std::size_t n = centers.size();
  const double inv_norm = 1.0 / sigmoid_spike_normalizer();

  BasisBank bank;
  bank.dims = input_dim;
  bank.centers_per_dim = n;
  bank.layer.weights = Matrix(input_dim * 2 * n, input_dim);
  bank.layer.bias.assign(input_dim * 2 * n, 0.0);
  bank.layer.activation = Activation::sigmoid();
  bank.combination = Matrix(input_dim * n, input_dim * 2 * n);
  for (std::size_t j = 0; j < input_dim; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t up = j * 2 * n + 2 * i;
      const double shift = steepness * centers[i];
      bank.layer.weights(up, j) = steepness;
      bank.layer.bias[up] = 1.0 - shift;
      bank.layer.weights(up + 1, j) = steepness;
      bank.layer.bias[up + 1] = -1.0 - shift;
      bank.combination(bank.hat_row(j, i), up) = inv_norm;
      bank.combination(bank.hat_row(j, i), up + 1) = -inv_norm;
    }
  }
  return bank;
}

std::vector<double> sum_rows(const Matrix& m, std::span<const std::size_t> rows) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t r : rows) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += row[c];
  }
  return out;
}

}  // namespace overfit
