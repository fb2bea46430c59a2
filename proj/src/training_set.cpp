#include "overfit/training_set.hpp"

#include <cmath>
#include <sstream>

#include "overfit/error.hpp"

namespace overfit {

TrainingSet::TrainingSet(std::size_t dim, std::vector<double> coords, std::vector<double> targets,
                         std::optional<GridSpec> grid)
    : dim_(dim), coords_(std::move(coords)), targets_(std::move(targets)), grid_(grid) {
  if (dim_ == 0) throw DataError("training set dimension must be positive");
  if (coords_.size() != dim_ * targets_.size()) {
    std::ostringstream msg;
    msg << "training set has " << coords_.size() << " coordinates for " << targets_.size() << " targets in dimension "
        << dim_;
    throw DataError(msg.str());
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double v = coords_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << "point " << i / dim_ << " coordinate " << i % dim_ << " = " << v << " is outside [0,1]";
      throw DataError(msg.str());
    }
  }
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    if (!std::isfinite(targets_[i])) throw DataError("target " + std::to_string(i) + " is not finite");
  }
}

}  // namespace overfit
