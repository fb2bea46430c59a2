#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace overfit {

/// Uniform tensor grid on [0,1]^d with n points per dimension.
struct GridSpec {
  std::size_t d = 1;
  std::size_t n = 2;

  double spacing() const { return 1.0 / static_cast<double>(n - 1); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Points in [0,1]^d with scalar targets (labels -1/+1 or function samples).
/// Points are stored flat, row by row.
class TrainingSet {
 public:
  TrainingSet() = default;
  /// Throws DataError when sizes disagree or a coordinate leaves [0,1].
  TrainingSet(std::size_t dim, std::vector<double> coords, std::vector<double> targets,
              std::optional<GridSpec> grid = std::nullopt);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return targets_.size(); }
  bool empty() const { return targets_.empty(); }

  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  double target(std::size_t i) const { return targets_[i]; }
  std::span<const double> targets() const { return targets_; }
  std::span<const double> coords() const { return coords_; }

  /// Set when the points are the full tensor grid in row-major order.
  const std::optional<GridSpec>& grid() const { return grid_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> targets_;
  std::optional<GridSpec> grid_;
};

}  // namespace overfit
