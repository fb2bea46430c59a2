#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "overfit/mlp.hpp"

namespace testing {

/// Uniform points of [0,1]^d from a standard engine, independent of the library RNG.
inline std::vector<std::vector<double>> random_points(std::size_t count, std::size_t d, std::uint64_t seed = 7) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(count, std::vector<double>(d));
  for (auto& p : pts)
    for (auto& v : p) v = u(engine);
  return pts;
}

inline double f(const overfit::Mlp& net, std::vector<double> x) { return overfit::forward(net, x); }
inline double f(const overfit::Mlp& net, double x) { return overfit::forward(net, std::vector<double>{x}); }

}  // namespace testing
