#include "overfit/loss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "overfit/error.hpp"

namespace overfit {

namespace {

constexpr double kProbabilitySlack = 1e-12;

std::string describe_point(const TrainingSet& data, std::size_t i) {
  std::ostringstream out;
  out << "point " << i << " (";
  const auto x = data.point(i);
  for (std::size_t j = 0; j < x.size(); ++j) out << (j ? ", " : "") << x[j];
  out << ")";
  return out.str();
}

double cross_entropy_term(double y, double f, const TrainingSet& data, std::size_t i) {
  if (y != 0.0 && y != 1.0) {
    throw DomainError("cross-entropy target at " + describe_point(data, i) + " is " + std::to_string(y) +
                      ", expected 0/1 or -1/+1");
  }
  if (!(f >= -kProbabilitySlack && f <= 1.0 + kProbabilitySlack)) {
    std::ostringstream msg;
    msg << "cross-entropy needs outputs in (0,1); output " << f << " at " << describe_point(data, i);
    throw DomainError(msg.str());
  }
  const double p = std::clamp(f, 0.0, 1.0);
  const double q = y == 1.0 ? p : 1.0 - p;
  if (q <= 0.0) {
    std::ostringstream msg;
    msg << "cross-entropy is infinite: output " << f << " for target " << y << " at " << describe_point(data, i);
    throw DomainError(msg.str());
  }
  return -std::log(q);
}

}  // namespace

std::string_view loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::MAE:
      return "mae";
    case LossKind::MSE:
      return "mse";
    case LossKind::CrossEntropy:
      return "cross-entropy";
  }
  return "mse";
}

LossKind loss_from_name(std::string_view name) {
  if (name == "mae") return LossKind::MAE;
  if (name == "mse") return LossKind::MSE;
  if (name == "cross-entropy" || name == "ce") return LossKind::CrossEntropy;
  throw ParameterError("unknown loss '" + std::string(name) + "'");
}

double loss_target(LossKind kind, double y) {
  if (kind == LossKind::CrossEntropy && y == -1.0) return 0.0;
  return y;
}

double loss(const Mlp& net, const TrainingSet& data, LossKind kind) {
  if (data.empty()) throw ParameterError("loss of an empty training set");
  if (data.dim() != net.input_dim) throw StructuralError("training set dimension does not match network input");
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = forward(net, data.point(i));
    const double y = loss_target(kind, data.target(i));
    switch (kind) {
      case LossKind::MAE:
        sum += std::abs(y - f);
        break;
      case LossKind::MSE:
        sum += (y - f) * (y - f);
        break;
      case LossKind::CrossEntropy:
        sum += cross_entropy_term(y, f, data, i);
        break;
    }
  }
  return std::max(0.0, sum / static_cast<double>(data.size()));
}

}  // namespace overfit
