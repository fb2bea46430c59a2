#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "overfit/activation.hpp"
#include "overfit/mlp.hpp"

namespace overfit {

/// Disjoint: h = spacing/2, supports touch only at endpoints, 2N+1 shared
/// neurons per dimension. Overlapping: h = spacing, hats form a partition of
/// unity, N+2 shared neurons per dimension.
enum class HatMode { Disjoint, Overlapping };

/// Shared reuses x - x_{i+1} + h = x - x_i - h (Disjoint) or x - x_{i+1} = x - x_i - h
/// (Overlapping). Unshared spends three neurons per center and exists for
/// cross-checking the shared wiring.
enum class NeuronSharing { Shared, Unshared };

class HatLayout {
 public:
  /// Centers must be strictly increasing with uniform spacing (relative
  /// tolerance 1e-9). Throws ParameterError otherwise.
  static HatLayout from_centers(std::vector<double> centers, HatMode mode);
  /// Centers grid_1d(n).
  static HatLayout unit_grid(std::size_t n, HatMode mode);

  const std::vector<double>& centers() const { return centers_; }
  std::size_t size() const { return centers_.size(); }
  HatMode mode() const { return mode_; }
  double spacing() const { return spacing_; }
  double half_width() const { return half_width_; }

  /// Knot positions t_k of the shared first-layer neurons relu(x - t_k).
  std::vector<double> knots() const;
  /// Index into knots() of center i.
  std::size_t center_knot(std::size_t i) const;

 private:
  std::vector<double> centers_;
  HatMode mode_ = HatMode::Disjoint;
  double spacing_ = 0.0;
  double half_width_ = 0.0;
};

/// First hidden layer plus the linear map from its outputs to basis values.
/// Row `hat_row(j, i)` of `combination` yields the basis function of center i
/// in input dimension j.
struct BasisBank {
  DenseLayer layer;
  Matrix combination;
  std::size_t dims = 0;
  std::size_t centers_per_dim = 0;

  std::size_t hat_row(std::size_t dim, std::size_t center) const { return dim * centers_per_dim + center; }
  std::size_t neurons_per_dim() const { return layer.out_width() / dims; }
};

/// Hat functions phi(x_j - c_i) = (a(t+h) - 2a(t) + a(t-h)) / ((1-alpha) h) on every
/// input dimension with the same layout. `activation` is ReLU or
/// ParametricReLU(alpha); the map carries the 1/((1-alpha) h) normalization.
BasisBank hat_first_layer(const HatLayout& layout, std::size_t input_dim, Activation activation,
                          NeuronSharing sharing = NeuronSharing::Shared);

/// Closed-form hat max(0, 1 - |t|/h).
double hat_value(double t, double h);

/// Sigmoid spike (s(Kt+1) - s(Kt-1)) / (s(1) - s(-1)); equals 1 at t = 0.
double sigmoid_spike(double t, double steepness);
/// s(1) - s(-1).
double sigmoid_spike_normalizer();

/// 2N sigmoid neurons per dimension with inputs K(x - c_i) + 1 and K(x - c_i) - 1.
BasisBank sigmoid_spike_first_layer(std::span<const double> centers, std::size_t input_dim, double steepness);

/// Sum of the selected combination rows: the first-layer weights of a
/// second-layer neuron whose input is the sum of those basis functions.
std::vector<double> sum_rows(const Matrix& m, std::span<const std::size_t> rows);

}  // namespace overfit
