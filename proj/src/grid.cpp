#include "overfit/grid.hpp"

#include <cmath>
#include <sstream>

#include "overfit/error.hpp"

namespace overfit {

std::vector<double> grid_1d(std::size_t n) {
  if (n < 2) throw ParameterError("grid needs at least 2 points per dimension, got " + std::to_string(n));
  std::vector<double> xs(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i) / denom;
  return xs;
}

std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

GridEnumerator::GridEnumerator(GridSpec spec, std::size_t budget) : spec_(spec) {
  if (spec.d == 0) throw ParameterError("grid dimension must be positive");
  axis_ = grid_1d(spec.n);
  const auto count = checked_power(spec.n, spec.d);
  if (!count || *count > budget) {
    std::ostringstream msg;
    msg << "grid of " << spec.n << "^" << spec.d;
    if (count) msg << " = " << *count;
    msg << " points exceeds the enumeration budget of " << budget;
    throw BudgetError(msg.str());
  }
  size_ = static_cast<std::size_t>(*count);
}

void GridEnumerator::point(std::size_t index, std::span<double> out) const {
  for (std::size_t j = spec_.d; j-- > 0;) {
    out[j] = axis_[index % spec_.n];
    index /= spec_.n;
  }
}

std::vector<double> GridEnumerator::point(std::size_t index) const {
  std::vector<double> out(spec_.d);
  point(index, out);
  return out;
}

std::vector<std::size_t> GridEnumerator::multi_index(std::size_t index) const {
  std::vector<std::size_t> out(spec_.d);
  for (std::size_t j = spec_.d; j-- > 0;) {
    out[j] = index % spec_.n;
    index /= spec_.n;
  }
  return out;
}

std::vector<std::vector<double>> grid_nd(GridSpec spec, std::size_t budget) {
  GridEnumerator grid(spec, budget);
  std::vector<std::vector<double>> points;
  points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) points.push_back(grid.point(i));
  return points;
}

double label_halfspace(std::span<const double> x) { return x[0] < 0.5 ? -1.0 : 1.0; }

namespace {

TrainingSet build_set(GridSpec spec, std::size_t budget, const ScalarField& g) {
  GridEnumerator grid(spec, budget);
  std::vector<double> coords(grid.size() * spec.d);
  std::vector<double> targets(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::span<double> x(coords.data() + i * spec.d, spec.d);
    grid.point(i, x);
    const double y = g(x);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "target function is not finite at grid point " << i << " (";
      for (std::size_t j = 0; j < x.size(); ++j) msg << (j ? ", " : "") << x[j];
      msg << ")";
      throw DataError(msg.str());
    }
    targets[i] = y;
  }
  return TrainingSet(spec.d, std::move(coords), std::move(targets), spec);
}

}  // namespace

TrainingSet sample_function(const ScalarField& g, GridSpec spec, std::size_t budget) {
  return build_set(spec, budget, g);
}

TrainingSet classification_set(GridSpec spec, std::size_t budget) {
  return build_set(spec, budget, [](std::span<const double> x) { return label_halfspace(x); });
}

GridSpec infer_grid(const TrainingSet& data) {
  if (data.grid()) return *data.grid();
  if (data.empty()) throw ParameterError("empty training set is not a grid");
  const std::size_t d = data.dim();
  const auto n = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(data.size()), 1.0 / d)));
  const auto count = checked_power(n, d);
  if (n < 2 || !count || *count != data.size())
    throw ParameterError("training set of " + std::to_string(data.size()) + " points is not a full tensor grid");
  GridSpec spec{d, n};
  GridEnumerator grid(spec, data.size());
  std::vector<double> x(d);
  for (std::size_t i = 0; i < data.size(); ++i) {
    grid.point(i, x);
    const auto p = data.point(i);
    for (std::size_t j = 0; j < d; ++j) {
      if (std::abs(p[j] - x[j]) > 1e-12)
        throw ParameterError("training point " + std::to_string(i) + " is not on the uniform grid");
    }
  }
  return spec;
}

int grayscale_reduce(int p, int m) {
  if (p < 0 || p > 255) throw ParameterError("pixel value " + std::to_string(p) + " outside [0,255]");
  if (m < 1 || m > 255) throw ParameterError("reduction step " + std::to_string(m) + " outside [1,255]");
  return (p / m) * m;
}

void ImageGridSpec::check() const {
  if (pixels == 0) throw ParameterError("image needs at least one pixel");
  if (step < 1 || step > 255) throw ParameterError("reduction step " + std::to_string(step) + " outside [1,255]");
}

std::vector<int> ImageGridSpec::raw_levels() const {
  check();
  std::vector<int> v(levels());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = step * static_cast<int>(i);
  return v;
}

std::vector<int> ImageGridSpec::dark_levels() const {
  std::vector<int> v;
  for (int r : raw_levels())
    if (r < kPixelThreshold) v.push_back(r);
  return v;
}

std::vector<int> ImageGridSpec::light_levels() const {
  std::vector<int> v;
  for (int r : raw_levels())
    if (r >= kPixelThreshold) v.push_back(r);
  return v;
}

std::vector<double> ImageGridSpec::normalized_levels() const {
  std::vector<double> v;
  for (int r : raw_levels()) v.push_back(r / 255.0);
  return v;
}

std::string ImageSetSize::describe() const {
  std::ostringstream out;
  if (dark_levels == light_levels)
    out << "2 x " << dark_levels << "^" << pixels;
  else
    out << dark_levels << "^" << pixels << " + " << light_levels << "^" << pixels;
  if (exact) out << " = " << *exact;
  else out << " (exceeds 64-bit range)";
  return out.str();
}

ImageSetSize image_training_set_size(const ImageGridSpec& spec) {
  ImageSetSize size;
  size.dark_levels = spec.dark_levels().size();
  size.light_levels = spec.light_levels().size();
  size.pixels = spec.pixels;
  const auto dark = checked_power(size.dark_levels, spec.pixels);
  const auto light = checked_power(size.light_levels, spec.pixels);
  if (dark && light && *dark <= UINT64_MAX - *light) size.exact = *dark + *light;
  return size;
}

TrainingSet image_training_set(const ImageGridSpec& spec, std::size_t budget) {
  const auto size = image_training_set_size(spec);
  if (!size.exact || *size.exact > budget) {
    throw BudgetError("image training set has " + size.describe() + " points, over the enumeration budget of " +
                      std::to_string(budget) + "; full enumeration refused");
  }
  const std::size_t p = spec.pixels;
  std::vector<double> coords;
  std::vector<double> targets;
  coords.reserve(*size.exact * p);
  targets.reserve(*size.exact);
  auto emit_class = [&](const std::vector<int>& levels, double label) {
    if (levels.empty()) return;
    const std::size_t k = levels.size();
    const auto count = *checked_power(levels.size(), p);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t rest = i;
      const std::size_t base = coords.size();
      coords.resize(base + p);
      for (std::size_t j = p; j-- > 0;) {
        coords[base + j] = levels[rest % k] / 255.0;
        rest /= k;
      }
      targets.push_back(label);
    }
  };
  emit_class(spec.dark_levels(), -1.0);
  emit_class(spec.light_levels(), +1.0);
  return TrainingSet(p, std::move(coords), std::move(targets));
}

}  // namespace overfit
