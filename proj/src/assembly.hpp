#pragma once

// Internal helpers shared by the constructors.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"
#include "overfit/hat.hpp"
#include "overfit/mlp.hpp"

namespace overfit::detail {

/// Appends one neuron (row) to a layer under construction.
struct LayerBuilder {
  explicit LayerBuilder(std::size_t width) : in_width(width) {}

  std::size_t in_width = 0;
  std::vector<std::vector<double>> rows;
  std::vector<double> bias;

  void add(std::vector<double> weights, double b) {
    rows.push_back(std::move(weights));
    bias.push_back(b);
  }
  DenseLayer build(Activation activation) const;
};

/// Output layer of width one.
DenseLayer output_layer(std::vector<double> weights, double bias);

Mlp assemble(std::size_t input_dim, std::vector<DenseLayer> layers, nlohmann::json metadata);

/// Combination rows of every hat of every dimension except `skip_dim`.
std::vector<std::size_t> all_rows_except(const BasisBank& bank, std::size_t skip_dim);

double max_abs(std::span<const double> values);

}  // namespace overfit::detail
