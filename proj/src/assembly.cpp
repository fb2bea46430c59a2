#include "assembly.hpp"

#include <cmath>

namespace overfit::detail {

DenseLayer LayerBuilder::build(Activation activation) const {
  DenseLayer layer;
  layer.weights = Matrix(rows.size(), in_width);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < in_width; ++c) layer.weights(r, c) = rows[r][c];
  layer.bias = bias;
  layer.activation = activation;
  return layer;
}

DenseLayer output_layer(std::vector<double> weights, double bias) {
  DenseLayer layer;
  layer.weights = Matrix(1, weights.size());
  for (std::size_t c = 0; c < weights.size(); ++c) layer.weights(0, c) = weights[c];
  layer.bias = {bias};
  layer.activation = Activation::identity();
  return layer;
}

Mlp assemble(std::size_t input_dim, std::vector<DenseLayer> layers, nlohmann::json metadata) {
  Mlp net;
  net.input_dim = input_dim;
  net.layers = std::move(layers);
  net.metadata = std::move(metadata);
  return net;
}

std::vector<std::size_t> all_rows_except(const BasisBank& bank, std::size_t skip_dim) {
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < bank.dims; ++j) {
    if (j == skip_dim) continue;
    for (std::size_t i = 0; i < bank.centers_per_dim; ++i) rows.push_back(bank.hat_row(j, i));
  }
  return rows;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace overfit::detail
