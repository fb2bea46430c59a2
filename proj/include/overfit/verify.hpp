#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "overfit/grid.hpp"
#include "overfit/loss.hpp"
#include "overfit/mlp.hpp"
#include "overfit/training_set.hpp"

namespace overfit {

struct Tolerances {
  double loss = 1e-12;
  double residual = 1e-9;
};

struct VerificationReport {
  LossKind kind = LossKind::MSE;
  double loss_value = 0.0;
  double max_residual = 0.0;
  std::size_t worst_index = 0;
  std::vector<double> worst_point;
  Tolerances tolerances;
  bool pass = false;
};

/// pass <=> loss <= tolerances.loss and max residual <= tolerances.residual.
VerificationReport check_global_optimum(const Mlp& net, const TrainingSet& data, LossKind kind,
                                        Tolerances tolerances = {});

/// |f| above this counts as support for the piecewise-linear constructions.
inline constexpr double kExactSupportThreshold = 1e-9;
/// Sigmoid outputs are never exactly zero.
inline constexpr double kSigmoidSupportThreshold = 1e-3;
inline constexpr std::size_t kMinSupportProbes = 1000;
inline constexpr std::size_t kDefaultProbeBudget = 50'000'000;

struct SupportMethod {
  enum class Kind { Grid, MonteCarlo };
  Kind kind = Kind::MonteCarlo;
  double resolution = 1e-3;  // Grid: cell edge, midpoints are probed
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;

  static SupportMethod grid(double resolution) { return {Kind::Grid, resolution, 0, 0}; }
  static SupportMethod monte_carlo(std::size_t samples, std::uint64_t seed) {
    return {Kind::MonteCarlo, 0.0, samples, seed};
  }
};

struct SupportReport {
  SupportMethod method;
  std::size_t probes = 0;
  std::size_t hits = 0;
  double threshold = 0.0;
  double measure = 0.0;
  double standard_error = 0.0;  // Monte Carlo only
  std::optional<double> analytic_bound;
  bool pass = true;
};

/// Fraction of probes in [0,1]^d with |f - v| > threshold, where v is the
/// network's dead-zone value (0 unless the constructor recorded another). With an analytic bound,
/// pass <=> measure <= bound + 3 SE (Monte Carlo) or bound + d * resolution (grid).
SupportReport support_measure(const Mlp& net, const SupportMethod& method, double threshold,
                              std::optional<double> analytic_bound = std::nullopt,
                              std::size_t budget = kDefaultProbeBudget);

/// (N/(N-1))^d (d-b)^d, for b in [d-1, d].
double support_bound_analytic(std::size_t n, std::size_t d, double b);

/// (grid points per axis * 2 * dead-zone radius)^d for the piecewise-linear
/// constructions; nullopt for anything else.
std::optional<double> support_bound_for(const Mlp& net);

/// Dead-zone radius recorded by the constructor: (1-b)h in 1D, (d-b)h in d-D.
std::optional<double> dead_zone_radius_for(const Mlp& net);

/// Output value away from the data: 1/2 for the cross-entropy classifier, else 0.
double dead_zone_value_for(const Mlp& net);

/// Distance from x to the training points: max-norm for d >= 2, |.| in 1D.
double distance_to_points(const TrainingSet& data, std::span<const double> x);

struct DeadZoneReport {
  double radius = 0.0;
  std::string norm;
  std::size_t probes_requested = 0;
  std::size_t probes = 0;
  std::size_t attempts = 0;
  double threshold = 0.0;
  double max_abs_output = 0.0;
  std::vector<double> worst_point;
  /// The region farther than `radius` from the grid is empty.
  bool vacuous = false;
  bool pass = false;
};

/// Rejection-samples probes with distance > radius from the data points and
/// asserts |f - v| <= threshold at all of them (v as in support_measure). Throws BudgetError when fewer
/// than `probes` are accepted within 1000 * probes attempts.
DeadZoneReport dead_zone_check(const Mlp& net, const TrainingSet& data, double radius, std::size_t probes,
                               double threshold, std::uint64_t seed);

struct AccuracyReport {
  std::size_t samples = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  double standard_error = 0.0;
  /// Fraction of ground-truth images that are training images.
  double analytic_training_fraction = 0.0;
};

/// (dark^P + light^P) / (2 * 128^P), evaluated in floating point.
double image_training_fraction(const ImageGridSpec& spec);

/// Samples ground-truth images (class uniform, then every pixel uniform in its
/// class range) and counts outputs with the right sign and |f| >= 0.5.
AccuracyReport image_accuracy_estimate(const Mlp& net, const ImageGridSpec& spec, std::size_t samples,
                                       std::uint64_t seed);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const SupportReport& report);
nlohmann::json to_json(const DeadZoneReport& report);
nlohmann::json to_json(const AccuracyReport& report);

}  // namespace overfit
