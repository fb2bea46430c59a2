#include "overfit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "overfit/error.hpp"
#include "overfit/parallel.hpp"
#include "overfit/rng.hpp"

namespace overfit {

using nlohmann::json;

VerificationReport check_global_optimum(const Mlp& net, const TrainingSet& data, LossKind kind,
                                        Tolerances tolerances) {
  VerificationReport r;
  r.kind = kind;
  r.tolerances = tolerances;
  r.loss_value = loss(net, data, kind);
  r.max_residual = -1.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double res = std::abs(forward(net, data.point(i)) - loss_target(kind, data.target(i)));
    if (res > r.max_residual) {
      r.max_residual = res;
      r.worst_index = i;
    }
  }
  const auto worst = data.point(r.worst_index);
  r.worst_point.assign(worst.begin(), worst.end());
  r.pass = r.loss_value <= tolerances.loss && r.max_residual <= tolerances.residual;
  return r;
}

double dead_zone_value_for(const Mlp& net) {
  const auto& m = net.metadata;
  if (m.is_object() && m.contains("dead_zone_value") && m["dead_zone_value"].is_number())
    return m["dead_zone_value"].get<double>();
  return 0.0;
}

SupportReport support_measure(const Mlp& net, const SupportMethod& method, double threshold,
                              std::optional<double> analytic_bound, std::size_t budget) {
  require_valid(net);
  if (!(threshold >= 0.0)) throw ParameterError("support threshold must be non-negative");
  const std::size_t d = net.input_dim;
  const double v = dead_zone_value_for(net);
  SupportReport r;
  r.method = method;
  r.threshold = threshold;
  r.analytic_bound = analytic_bound;

  if (method.kind == SupportMethod::Kind::Grid) {
    if (!(method.resolution > 0.0 && method.resolution <= 1.0))
      throw ParameterError("grid resolution must lie in (0, 1]");
    const auto cells = static_cast<std::size_t>(std::ceil(1.0 / method.resolution - 1e-9));
    const auto total = checked_power(cells, d);
    if (!total || *total > budget)
      throw BudgetError("support grid of " + std::to_string(cells) + "^" + std::to_string(d) +
                        " probes exceeds the budget of " + std::to_string(budget));
    r.probes = static_cast<std::size_t>(*total);
    r.hits = chunked_reduce(
        r.probes, std::size_t{0},
        [&](std::size_t begin, std::size_t end) {
          std::vector<double> x(d);
          std::size_t hits = 0;
          for (std::size_t i = begin; i < end; ++i) {
            std::size_t rest = i;
            for (std::size_t j = d; j-- > 0;) {
              x[j] = (static_cast<double>(rest % cells) + 0.5) / static_cast<double>(cells);
              rest /= cells;
            }
            if (std::abs(forward(net, x) - v) > threshold) ++hits;
          }
          return hits;
        },
        std::plus<>{});
    r.measure = static_cast<double>(r.hits) / static_cast<double>(r.probes);
    if (analytic_bound)
      r.pass = r.measure <= *analytic_bound + static_cast<double>(d) / static_cast<double>(cells);
    return r;
  }

  if (method.samples < kMinSupportProbes)
    throw ParameterError("support estimate needs at least " + std::to_string(kMinSupportProbes) + " probes");
  if (method.samples > budget)
    throw BudgetError("support estimate of " + std::to_string(method.samples) +
                      " probes exceeds the budget of " + std::to_string(budget));
  const CounterRng rng(method.seed);
  r.probes = method.samples;
  r.hits = chunked_reduce(
      r.probes, std::size_t{0},
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(d);
        std::size_t hits = 0;
        for (std::size_t i = begin; i < end; ++i) {
          for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(i * d + j);
          if (std::abs(forward(net, x) - v) > threshold) ++hits;
        }
        return hits;
      },
      std::plus<>{});
  const double n = static_cast<double>(r.probes);
  r.measure = static_cast<double>(r.hits) / n;
  r.standard_error = std::sqrt(r.measure * (1.0 - r.measure) / n);
  if (analytic_bound) r.pass = r.measure <= *analytic_bound + 3.0 * r.standard_error;
  return r;
}

double support_bound_analytic(std::size_t n, std::size_t d, double b) {
  if (n < 2 || d == 0) throw ParameterError("support bound needs n >= 2 and d >= 1");
  const double dd = static_cast<double>(d);
  if (!(b >= dd - 1.0 && b <= dd)) throw ParameterError("support bound needs b in [d-1, d]");
  const double ratio = static_cast<double>(n) / static_cast<double>(n - 1);
  return std::pow(ratio * (dd - b), dd);
}

std::optional<double> support_bound_for(const Mlp& net) {
  const auto& m = net.metadata;
  if (!m.is_object() || !m.contains("family") || !m.contains("params") || !m.contains("dead_zone_radius"))
    return std::nullopt;
  const std::string family = m["family"].get<std::string>();
  const json& p = m["params"];
  const double r = m["dead_zone_radius"].get<double>();
  // Each grid point contributes at most a max-norm cube of edge 2r.
  auto cubes = [r](double per_axis, std::size_t d) { return std::pow(per_axis * 2.0 * r, static_cast<double>(d)); };
  if (family == "relu-image-classifier") {
    const ImageGridSpec spec{p["pixels"].get<std::size_t>(), p["m"].get<int>()};
    return cubes(static_cast<double>(spec.levels()), spec.pixels);
  }
  if (family.starts_with("relu-") || family.starts_with("prelu-")) {
    const std::size_t d = p.contains("d") ? p["d"].get<std::size_t>() : 1;
    return cubes(static_cast<double>(p["n"].get<std::size_t>()), d);
  }
  return std::nullopt;
}

std::optional<double> dead_zone_radius_for(const Mlp& net) {
  const auto& m = net.metadata;
  if (m.is_object() && m.contains("dead_zone_radius") && m["dead_zone_radius"].is_number())
    return m["dead_zone_radius"].get<double>();
  return std::nullopt;
}

namespace {

double axis_distance(double x, double spacing) {
  const double k = std::round(x / spacing);
  return std::abs(x - k * spacing);
}

}  // namespace

double distance_to_points(const TrainingSet& data, std::span<const double> x) {
  if (x.size() != data.dim()) throw StructuralError("probe dimension does not match the training set");
  if (const auto& g = data.grid()) {
    const double s = g->spacing();
    double dist = 0.0;
    for (double xi : x) dist = std::max(dist, axis_distance(xi, s));
    return dist;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    double dist = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) dist = std::max(dist, std::abs(x[j] - p[j]));
    best = std::min(best, dist);
  }
  return best;
}

DeadZoneReport dead_zone_check(const Mlp& net, const TrainingSet& data, double radius, std::size_t probes,
                               double threshold, std::uint64_t seed) {
  require_valid(net);
  if (data.dim() != net.input_dim) throw StructuralError("training set dimension does not match network input");
  if (!(radius >= 0.0)) throw ParameterError("dead-zone radius must be non-negative");
  if (probes == 0) throw ParameterError("dead-zone check needs at least one probe");
  const std::size_t d = net.input_dim;
  const double v = dead_zone_value_for(net);
  DeadZoneReport r;
  r.radius = radius;
  r.norm = d == 1 ? "abs" : "max";
  r.probes_requested = probes;
  r.threshold = threshold;

  if (const auto& g = data.grid(); g && radius >= g->spacing() / 2.0) {
    r.vacuous = true;
    r.pass = true;
    return r;
  }

  const CounterRng rng(seed);
  const std::size_t max_attempts = 1000 * probes;
  std::vector<double> x(d);
  r.max_abs_output = 0.0;
  while (r.probes < probes && r.attempts < max_attempts) {
    for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(r.attempts * d + j);
    ++r.attempts;
    if (distance_to_points(data, x) <= radius) continue;
    ++r.probes;
    const double dev = std::abs(forward(net, x) - v);
    if (dev > r.max_abs_output || r.worst_point.empty()) {
      r.max_abs_output = std::max(r.max_abs_output, dev);
      r.worst_point = x;
    }
  }
  if (r.probes < probes)
    throw BudgetError("only " + std::to_string(r.probes) + " of " + std::to_string(probes) +
                      " dead-zone probes accepted in " + std::to_string(r.attempts) + " attempts");
  r.pass = r.max_abs_output <= threshold;
  return r;
}

double image_training_fraction(const ImageGridSpec& spec) {
  spec.check();
  const double p = static_cast<double>(spec.pixels);
  const double dark = static_cast<double>(spec.dark_levels().size()) / 128.0;
  const double light = static_cast<double>(spec.light_levels().size()) / 128.0;
  return (std::pow(dark, p) + std::pow(light, p)) / 2.0;
}

AccuracyReport image_accuracy_estimate(const Mlp& net, const ImageGridSpec& spec, std::size_t samples,
                                       std::uint64_t seed) {
  spec.check();
  require_valid(net);
  if (net.input_dim != spec.pixels) throw StructuralError("network input does not match the pixel count");
  if (samples == 0) throw ParameterError("accuracy estimate needs at least one sample");
  const std::size_t p = spec.pixels;
  const CounterRng rng(seed);
  AccuracyReport r;
  r.samples = samples;
  r.analytic_training_fraction = image_training_fraction(spec);
  r.correct = chunked_reduce(
      samples, std::size_t{0},
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(p);
        std::size_t correct = 0;
        for (std::size_t i = begin; i < end; ++i) {
          const std::uint64_t base = i * (p + 1);
          const bool light = (rng.bits(base) & 1U) != 0;
          const std::int64_t lo = light ? kPixelThreshold : 0;
          const std::int64_t hi = light ? 255 : kPixelThreshold - 1;
          for (std::size_t j = 0; j < p; ++j)
            x[j] = static_cast<double>(rng.integer(base + 1 + j, lo, hi)) / 255.0;
          const double f = forward(net, x);
          if (light ? f >= 0.5 : f <= -0.5) ++correct;
        }
        return correct;
      },
      std::plus<>{});
  const double n = static_cast<double>(samples);
  r.accuracy = static_cast<double>(r.correct) / n;
  r.standard_error = std::sqrt(r.accuracy * (1.0 - r.accuracy) / n);
  return r;
}

json to_json(const VerificationReport& r) {
  return {{"loss", loss_name(r.kind)},
          {"loss_value", r.loss_value},
          {"max_residual", r.max_residual},
          {"worst_index", r.worst_index},
          {"worst_point", r.worst_point},
          {"tolerances", {{"loss", r.tolerances.loss}, {"residual", r.tolerances.residual}}},
          {"pass", r.pass}};
}

json to_json(const SupportReport& r) {
  json method;
  if (r.method.kind == SupportMethod::Kind::Grid)
    method = {{"kind", "grid"}, {"resolution", r.method.resolution}};
  else
    method = {{"kind", "monte-carlo"}, {"samples", r.method.samples}, {"seed", r.method.seed}};
  json out = {{"method", method},         {"probes", r.probes},     {"hits", r.hits},
              {"threshold", r.threshold}, {"measure", r.measure},   {"standard_error", r.standard_error},
              {"pass", r.pass}};
  out["analytic_bound"] = r.analytic_bound ? json(*r.analytic_bound) : json(nullptr);
  return out;
}

json to_json(const DeadZoneReport& r) {
  return {{"radius", r.radius},
          {"norm", r.norm},
          {"probes_requested", r.probes_requested},
          {"probes", r.probes},
          {"attempts", r.attempts},
          {"threshold", r.threshold},
          {"max_abs_output", r.max_abs_output},
          {"worst_point", r.worst_point},
          {"vacuous", r.vacuous},
          {"pass", r.pass}};
}

json to_json(const AccuracyReport& r) {
  return {{"samples", r.samples},
          {"correct", r.correct},
          {"accuracy", r.accuracy},
          {"standard_error", r.standard_error},
          {"analytic_training_fraction", r.analytic_training_fraction}};
}

}  // namespace overfit
