#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "overfit/training_set.hpp"

namespace overfit {

inline constexpr std::size_t kDefaultEnumerationBudget = 10'000'000;

/// x_i = (i-1)/(n-1), i = 1..n. Throws ParameterError for n < 2.
std::vector<double> grid_1d(std::size_t n);

/// n^d, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exponent);

/// Tensor-product grid points, row-major (last coordinate fastest). Random
/// access by flat index; nothing is materialized up front.
class GridEnumerator {
 public:
  /// Throws ParameterError for an invalid spec and BudgetError when n^d
  /// exceeds `budget`.
  explicit GridEnumerator(GridSpec spec, std::size_t budget = kDefaultEnumerationBudget);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return size_; }

  /// Writes point `index` into `out` (size d).
  void point(std::size_t index, std::span<double> out) const;
  std::vector<double> point(std::size_t index) const;
  /// Per-dimension grid indices of point `index`.
  std::vector<std::size_t> multi_index(std::size_t index) const;

 private:
  GridSpec spec_;
  std::size_t size_ = 0;
  std::vector<double> axis_;
};

std::vector<std::vector<double>> grid_nd(GridSpec spec, std::size_t budget = kDefaultEnumerationBudget);

/// -1 when the first coordinate is below 0.5, +1 otherwise.
double label_halfspace(std::span<const double> x);

using ScalarField = std::function<double(std::span<const double>)>;

/// Targets g(x) at every grid point, in grid_nd order.
TrainingSet sample_function(const ScalarField& g, GridSpec spec,
                            std::size_t budget = kDefaultEnumerationBudget);

/// Halfspace labels at every grid point.
TrainingSet classification_set(GridSpec spec, std::size_t budget = kDefaultEnumerationBudget);

/// Grid spec of a full tensor-grid training set. Uses the stored spec when
/// present, otherwise recognizes the points; throws ParameterError for
/// non-grid data.
GridSpec infer_grid(const TrainingSet& data);

/// floor(p/m)*m for p in [0,255], m in [1,255].
int grayscale_reduce(int p, int m);

inline constexpr int kPixelThreshold = 128;

/// Reduced-grayscale image grid: P pixels, step m, n = floor(255/m)+1 levels.
struct ImageGridSpec {
  std::size_t pixels = 9;
  int step = 2;

  /// Throws ParameterError for pixels == 0 or step outside [1,255].
  void check() const;
  std::size_t levels() const { return static_cast<std::size_t>(255 / step) + 1; }
  /// Raw levels m*(i-1), i = 1..n.
  std::vector<int> raw_levels() const;
  std::vector<int> dark_levels() const;
  std::vector<int> light_levels() const;
  /// Raw levels divided by 255.
  std::vector<double> normalized_levels() const;
};

/// Human-readable and exact size of the dark+light training set.
struct ImageSetSize {
  std::size_t dark_levels = 0;
  std::size_t light_levels = 0;
  std::size_t pixels = 0;
  std::optional<std::uint64_t> exact;  // nullopt on 64-bit overflow
  std::string describe() const;
};

ImageSetSize image_training_set_size(const ImageGridSpec& spec);

/// Dark images (every pixel < 128, label -1) followed by light images (every
/// pixel >= 128, label +1), coordinates normalized by 255. Refuses with the
/// exact set size when it exceeds `budget`.
TrainingSet image_training_set(const ImageGridSpec& spec, std::size_t budget = kDefaultEnumerationBudget);

}  // namespace overfit
