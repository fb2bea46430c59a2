// overfit-forge: construct, extend and verify explicitly wired global-minimum networks.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "overfit/error.hpp"
#include "overfit/extend.hpp"
#include "overfit/grid.hpp"
#include "overfit/loss.hpp"
#include "overfit/recipe.hpp"
#include "overfit/serialize.hpp"
#include "overfit/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace overfit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerification = 4;

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Manifest {
  std::vector<std::string> argv;
  std::string command;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  json extra = json::object();
};

void write_manifest(const Manifest& m) {
  if (m.outputs.empty()) return;
  json doc = {{"tool", "overfit-forge"},
              {"version", OVERFIT_FORGE_VERSION},
              {"command", m.command},
              {"argv", m.argv},
              {"cwd", fs::current_path().string()},
              {"outputs", m.outputs}};
  doc["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  if (const char* threads = std::getenv("OVERFIT_FORGE_THREADS")) doc["threads_cap"] = threads;
  if (!m.extra.empty()) doc["details"] = m.extra;
  save_json(doc, m.outputs.front() + ".manifest.json");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> x;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      x.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ParameterError("'" + text + "' is not a comma-separated point");
    }
  }
  return x;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

// Human-readable two-column table.
void print_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) std::cout << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
}

// Training data for checks: an explicit CSV, else the recipe stored in the network.
TrainingSet data_for(const Mlp& net, const std::string& csv) {
  if (!csv.empty()) return load_csv(csv);
  return training_set_for(recipe_of(net));
}

// ---- construct --------------------------------------------------------------

struct ConstructOptions {
  std::string family;
  std::string out;
  std::optional<std::size_t> n, d, pixels, width_budget;
  std::optional<int> m;
  std::optional<double> b, b1, b2, alpha, c, k, l, value;
  std::string cost, target, sharing;
};

void setup_construct(CLI::App& app, ConstructOptions& o) {
  auto* cmd = app.add_subcommand("construct", "Build a network from a named family");
  cmd->add_option("family", o.family, "Construction family")->required()->check(CLI::IsMember(recipe_families()));
  cmd->add_option("-o,--out", o.out, "Output network JSON")->required();
  cmd->add_option("--n", o.n, "Grid points per dimension");
  cmd->add_option("--d", o.d, "Input dimension (nd families)");
  cmd->add_option("--b", o.b, "Truncation level");
  cmd->add_option("--b1", o.b1, "Truncation of the +1 side (1D classifiers)");
  cmd->add_option("--b2", o.b2, "Truncation of the -1 side (1D classifiers)");
  cmd->add_option("--cost", o.cost, "pm1 or cross-entropy (relu-classifier-1d)");
  cmd->add_option("--alpha", o.alpha, "Parametric ReLU slope");
  cmd->add_option("--c", o.c, "Clip level of the parametric ReLU ramps");
  cmd->add_option("--k", o.k, "Sigmoid spike steepness K");
  cmd->add_option("--l", o.l, "Sigmoid gate steepness L");
  cmd->add_option("--target", o.target, "sin-pi, zero, sum, product or const");
  cmd->add_option("--value", o.value, "Value of the const target");
  cmd->add_option("--pixels", o.pixels, "Pixels per image");
  cmd->add_option("--m", o.m, "Grayscale reduction step");
  cmd->add_option("--sharing", o.sharing, "shared or unshared hat neurons");
  cmd->add_option("--width-budget", o.width_budget, "Refuse second layers wider than this");
}

int run_construct(const ConstructOptions& o, Manifest& manifest) {
  json recipe = {{"family", o.family}};
  auto put = [&](const char* key, const auto& v) {
    if (v) recipe[key] = *v;
  };
  put("n", o.n);
  put("d", o.d);
  put("b", o.b);
  put("b1", o.b1);
  put("b2", o.b2);
  put("alpha", o.alpha);
  put("c", o.c);
  put("k", o.k);
  put("l", o.l);
  put("value", o.value);
  put("pixels", o.pixels);
  put("m", o.m);
  put("width_budget", o.width_budget);
  if (!o.cost.empty()) recipe["cost"] = o.cost;
  if (!o.target.empty()) recipe["target"] = o.target;
  if (!o.sharing.empty()) recipe["sharing"] = o.sharing;

  const auto net = build_network(recipe);
  save_network(net, o.out);
  manifest.outputs.push_back(o.out);
  manifest.extra["recipe"] = recipe;

  std::string widths;
  for (auto w : net.hidden_widths()) widths += (widths.empty() ? "" : ", ") + std::to_string(w);
  std::cout << o.family << " -> " << o.out << '\n';
  print_table({{"input dim", std::to_string(net.input_dim)},
               {"hidden widths", widths},
               {"output bound", fixed(net.output_bound())}});
  return kExitOk;
}

// ---- extend -----------------------------------------------------------------

struct ExtendOptions {
  std::string in, out, mode = "relu-exact";
  std::size_t layers = 1;
  std::vector<std::size_t> widths;
  std::optional<double> epsilon, c, shift;
};

void setup_extend(CLI::App& app, ExtendOptions& o) {
  auto* cmd = app.add_subcommand("extend", "Append carrier layers to a network");
  cmd->add_option("input", o.in, "Network JSON")->required();
  cmd->add_option("-o,--out", o.out, "Output network JSON")->required();
  cmd->add_option("--mode", o.mode, "relu-exact, smooth or prelu-shift")
      ->check(CLI::IsMember({"relu-exact", "smooth", "prelu-shift"}));
  cmd->add_option("--m", o.layers, "Number of appended layers");
  cmd->add_option("--widths", o.widths, "Appended layer widths (one value applies to all)");
  cmd->add_option("--epsilon", o.epsilon, "Scale eps of the carrier input");
  cmd->add_option("--c", o.c, "Expansion point c");
  cmd->add_option("--shift", o.shift, "Shift of the prelu-shift mode");
}

int run_extend(const ExtendOptions& o, Manifest& manifest) {
  const auto net = load_network(o.in);
  ExtensionParams p;
  p.mode = extension_mode_from_name(o.mode);
  p.layers = o.layers;
  p.widths = o.widths;
  p.epsilon = o.epsilon;
  p.anchor = o.c;
  p.shift = o.shift;
  const auto ext = extend(net, p);
  save_network(ext, o.out);
  manifest.outputs.push_back(o.out);
  const auto& record = ext.metadata["extensions"].back();
  std::cout << o.in << " + " << o.layers << " layers (" << o.mode << ") -> " << o.out << '\n';
  print_table({{"hidden layers", std::to_string(ext.hidden_layer_count())},
               {"epsilon", fixed(record["epsilon"].get<double>())},
               {"c", fixed(record["c"].get<double>())}});
  return kExitOk;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateOptions {
  std::string net, points_csv, out;
  std::vector<std::string> points;
};

void setup_evaluate(CLI::App& app, EvaluateOptions& o) {
  auto* cmd = app.add_subcommand("evaluate", "Evaluate a network at points");
  cmd->add_option("network", o.net, "Network JSON")->required();
  cmd->add_option("-x,--point", o.points, "Comma-separated point (repeatable)");
  cmd->add_option("--points", o.points_csv, "CSV of points with header x1..xd,y (y is ignored)");
  cmd->add_option("-o,--out", o.out, "Write CSV instead of printing");
}

int run_evaluate(const EvaluateOptions& o, Manifest& manifest) {
  const auto net = load_network(o.net);
  std::vector<std::vector<double>> pts;
  for (const auto& p : o.points) pts.push_back(parse_point(p));
  if (!o.points_csv.empty()) {
    const auto data = load_csv(o.points_csv);
    for (std::size_t i = 0; i < data.size(); ++i) pts.emplace_back(data.point(i).begin(), data.point(i).end());
  }
  if (pts.empty()) throw ParameterError("no points given (use --point or --points)");
  std::ostringstream csv;
  for (std::size_t j = 0; j < net.input_dim; ++j) csv << 'x' << j + 1 << ',';
  csv << "f\n";
  for (const auto& x : pts) {
    const double f = forward(net, x);
    for (double v : x) csv << format_double(v) << ',';
    csv << format_double(f) << '\n';
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text(o.out, csv.str());
    manifest.outputs.push_back(o.out);
  }
  return kExitOk;
}

// ---- support / dead-zone / verify --------------------------------------------

struct SupportOptions {
  std::string net, method = "mc", report, bound = "auto";
  std::size_t samples = 1'000'000;
  double resolution = 1e-3;
  std::optional<double> threshold;
  std::uint64_t seed = 1;
};

void add_support_options(CLI::App* cmd, SupportOptions& o) {
  cmd->add_option("--method", o.method, "mc or grid")->check(CLI::IsMember({"mc", "grid"}));
  cmd->add_option("--samples", o.samples, "Monte Carlo probes");
  cmd->add_option("--resolution", o.resolution, "Grid cell edge");
  cmd->add_option("--threshold", o.threshold, "|f - v| above this counts as support");
  cmd->add_option("--bound", o.bound, "auto, none, or a number");
  cmd->add_option("--seed", o.seed, "Probe stream seed");
}

void setup_support(CLI::App& app, SupportOptions& o) {
  auto* cmd = app.add_subcommand("support", "Estimate the support measure");
  cmd->add_option("network", o.net, "Network JSON")->required();
  cmd->add_option("--report", o.report, "Write the JSON report here");
  add_support_options(cmd, o);
}

double default_threshold(const Mlp& net) {
  if (net.metadata.contains("support_threshold")) return net.metadata["support_threshold"].get<double>();
  return kExactSupportThreshold;
}

SupportReport support_for(const Mlp& net, const SupportOptions& o) {
  const auto method = o.method == "grid" ? SupportMethod::grid(o.resolution) : SupportMethod::monte_carlo(o.samples, o.seed);
  std::optional<double> bound;
  if (o.bound == "auto") {
    bound = support_bound_for(net);
  } else if (o.bound != "none") {
    try {
      bound = std::stod(o.bound);
    } catch (const std::exception&) {
      throw ParameterError("--bound must be auto, none or a number");
    }
  }
  return support_measure(net, method, o.threshold.value_or(default_threshold(net)), bound);
}

std::vector<std::pair<std::string, std::string>> support_rows(const SupportReport& r) {
  std::vector<std::pair<std::string, std::string>> rows{
      {"support measure", fixed(r.measure)},
      {"standard error", fixed(r.standard_error)},
      {"probes", std::to_string(r.probes)},
      {"threshold", fixed(r.threshold)}};
  if (r.analytic_bound) {
    rows.push_back({"analytic bound", fixed(*r.analytic_bound)});
    rows.push_back({"margin", fixed(*r.analytic_bound - r.measure)});
  }
  rows.push_back({"support check", r.pass ? "pass" : "FAIL"});
  return rows;
}

int run_support(const SupportOptions& o, Manifest& manifest) {
  const auto net = load_network(o.net);
  manifest.seed = o.seed;
  const auto r = support_for(net, o);
  print_table(support_rows(r));
  if (!o.report.empty()) {
    save_json(to_json(r), o.report);
    manifest.outputs.push_back(o.report);
  }
  if (!r.pass) throw VerificationFailed("support exceeds the analytic bound");
  return kExitOk;
}

struct DeadZoneOptions {
  std::string net, data, report;
  std::optional<double> radius, threshold;
  std::size_t probes = 10'000;
  std::uint64_t seed = 1;
};

void add_dead_zone_options(CLI::App* cmd, DeadZoneOptions& o) {
  cmd->add_option("--radius", o.radius, "Probe distance from the data (default: constructor radius)");
  cmd->add_option("--probes", o.probes, "Accepted probes");
  cmd->add_option("--dz-threshold", o.threshold, "Allowed |f - v| in the dead zone");
}

void setup_dead_zone(CLI::App& app, DeadZoneOptions& o) {
  auto* cmd = app.add_subcommand("dead-zone", "Probe the output away from the training points");
  cmd->add_option("network", o.net, "Network JSON")->required();
  cmd->add_option("--data", o.data, "Training CSV (default: the network's recipe)");
  cmd->add_option("--report", o.report, "Write the JSON report here");
  cmd->add_option("--seed", o.seed, "Probe stream seed");
  add_dead_zone_options(cmd, o);
}

DeadZoneReport dead_zone_for(const Mlp& net, const TrainingSet& data, const DeadZoneOptions& o) {
  std::optional<double> radius = o.radius;
  if (!radius) radius = dead_zone_radius_for(net);
  if (!radius) throw ParameterError("network records no dead-zone radius; pass --radius");
  return dead_zone_check(net, data, *radius, o.probes, o.threshold.value_or(default_threshold(net)), o.seed);
}

std::vector<std::pair<std::string, std::string>> dead_zone_rows(const DeadZoneReport& r) {
  return {{"dead-zone radius", fixed(r.radius) + " (" + r.norm + " norm)"},
          {"probes", r.vacuous ? std::string("0 (dead zone is empty)") : std::to_string(r.probes)},
          {"max |f - v|", fixed(r.max_abs_output)},
          {"threshold", fixed(r.threshold)},
          {"dead-zone check", r.pass ? "pass" : "FAIL"}};
}

int run_dead_zone(const DeadZoneOptions& o, Manifest& manifest) {
  const auto net = load_network(o.net);
  manifest.seed = o.seed;
  const auto r = dead_zone_for(net, data_for(net, o.data), o);
  print_table(dead_zone_rows(r));
  if (!o.report.empty()) {
    save_json(to_json(r), o.report);
    manifest.outputs.push_back(o.report);
  }
  if (!r.pass) throw VerificationFailed("nonzero output in the dead zone");
  return kExitOk;
}

struct VerifyOptions {
  std::string net, data, report, loss = "mse";
  std::vector<std::string> checks{"optimum"};
  double loss_tol = 1e-12, residual_tol = 1e-9;
  SupportOptions support;
  DeadZoneOptions dead;
};

void setup_verify(CLI::App& app, VerifyOptions& o) {
  auto* cmd = app.add_subcommand("verify", "Certify zero loss and optionally support and dead zone");
  cmd->add_option("network", o.net, "Network JSON")->required();
  cmd->add_option("--data", o.data, "Training CSV (default: the network's recipe)");
  cmd->add_option("--checks", o.checks, "optimum, support, dead-zone")
      ->delimiter(',')
      ->check(CLI::IsMember({"optimum", "support", "dead-zone"}));
  cmd->add_option("--loss", o.loss, "mse, mae or cross-entropy");
  cmd->add_option("--loss-tol", o.loss_tol, "Loss tolerance");
  cmd->add_option("--residual-tol", o.residual_tol, "Max residual tolerance");
  cmd->add_option("--report", o.report, "Write the JSON report here");
  add_support_options(cmd, o.support);
  add_dead_zone_options(cmd, o.dead);
}

int run_verify(VerifyOptions o, Manifest& manifest) {
  const auto net = load_network(o.net);
  const auto data = data_for(net, o.data);
  manifest.seed = o.support.seed;
  o.dead.seed = o.support.seed;
  json report = json::object();
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> rows;
  auto has = [&](const char* c) { return std::find(o.checks.begin(), o.checks.end(), c) != o.checks.end(); };
  if (has("optimum")) {
    const auto r = check_global_optimum(net, data, loss_from_name(o.loss), {o.loss_tol, o.residual_tol});
    report["optimum"] = to_json(r);
    pass = pass && r.pass;
    rows.push_back({std::string(loss_name(r.kind)) + " loss", fixed(r.loss_value)});
    rows.push_back({"max residual", fixed(r.max_residual)});
    rows.push_back({"optimum check", r.pass ? "pass" : "FAIL"});
  }
  if (has("support")) {
    const auto r = support_for(net, o.support);
    report["support"] = to_json(r);
    pass = pass && r.pass;
    for (auto& row : support_rows(r)) rows.push_back(row);
  }
  if (has("dead-zone")) {
    const auto r = dead_zone_for(net, data, o.dead);
    report["dead_zone"] = to_json(r);
    pass = pass && r.pass;
    for (auto& row : dead_zone_rows(r)) rows.push_back(row);
  }
  report["pass"] = pass;
  print_table(rows);
  if (!o.report.empty()) {
    save_json(report, o.report);
    manifest.outputs.push_back(o.report);
  }
  if (!pass) throw VerificationFailed("verification failed");
  return kExitOk;
}

// ---- plot-data ----------------------------------------------------------------

struct PlotOptions {
  std::string net, out, minus, reference;
  double resolution = 1e-3;
  std::vector<std::size_t> axes;
  std::string at;
};

void setup_plot(CLI::App& app, PlotOptions& o) {
  auto* cmd = app.add_subcommand("plot-data", "Emit a CSV curve or raster of the network");
  cmd->add_option("network", o.net, "Network JSON")->required();
  cmd->add_option("-o,--out", o.out, "Output CSV")->required();
  cmd->add_option("--resolution", o.resolution, "Sample spacing");
  cmd->add_option("--axes", o.axes, "One or two 1-based input coordinates to sweep")->delimiter(',');
  cmd->add_option("--at", o.at, "Base point for the fixed coordinates (needed when d > 2)");
  cmd->add_option("--reference", o.reference, "Add a reference column (target name, e.g. sin-pi)");
  cmd->add_option("--minus", o.minus, "Second network; adds its values and the difference");
}

int run_plot(const PlotOptions& o, Manifest& manifest) {
  const auto net = load_network(o.net);
  const std::size_t d = net.input_dim;
  if (!(o.resolution > 0.0 && o.resolution <= 1.0)) throw ParameterError("resolution must lie in (0, 1]");
  std::optional<Mlp> other;
  if (!o.minus.empty()) {
    other = load_network(o.minus);
    if (other->input_dim != d) throw ParameterError("--minus network has a different input dimension");
  }
  std::optional<ScalarField> reference;
  if (!o.reference.empty()) reference = target_function(o.reference);

  std::vector<std::size_t> axes = o.axes;
  if (axes.empty()) {
    if (d > 2) throw ParameterError("input dimension " + std::to_string(d) + " needs --axes and --at");
    for (std::size_t j = 1; j <= d; ++j) axes.push_back(j);
  }
  if (axes.size() > 2) throw ParameterError("at most two sweep axes");
  for (auto a : axes)
    if (a < 1 || a > d) throw ParameterError("axis " + std::to_string(a) + " outside 1.." + std::to_string(d));
  std::vector<double> base(d, 0.0);
  if (!o.at.empty()) {
    base = parse_point(o.at);
    if (base.size() != d) throw ParameterError("--at needs " + std::to_string(d) + " coordinates");
  } else if (axes.size() < d) {
    throw ParameterError("--at is required when some coordinates stay fixed");
  }

  const auto steps = static_cast<std::size_t>(std::llround(1.0 / o.resolution));
  std::ostringstream csv;
  for (auto a : axes) csv << 'x' << a << ',';
  csv << 'f';
  if (reference) csv << ",reference";
  if (other) csv << ",g,f_minus_g";
  csv << '\n';
  auto emit = [&](const std::vector<double>& x) {
    const double f = forward(net, x);
    for (auto a : axes) csv << format_double(x[a - 1]) << ',';
    csv << format_double(f);
    if (reference) csv << ',' << format_double((*reference)(x));
    if (other) {
      const double g = forward(*other, x);
      csv << ',' << format_double(g) << ',' << format_double(f - g);
    }
    csv << '\n';
  };
  auto coord = [&](std::size_t i) { return std::min(1.0, static_cast<double>(i) / static_cast<double>(steps)); };
  std::vector<double> x = base;
  for (std::size_t i = 0; i <= steps; ++i) {
    x[axes[0] - 1] = coord(i);
    if (axes.size() == 1) {
      emit(x);
      continue;
    }
    for (std::size_t k = 0; k <= steps; ++k) {
      x[axes[1] - 1] = coord(k);
      emit(x);
    }
  }
  write_text(o.out, csv.str());
  manifest.outputs.push_back(o.out);
  return kExitOk;
}

// " = 1/k" when the value is the reciprocal of an integer.
std::string unit_fraction(double v) {
  if (!(v > 0.0)) return "";
  const double inv = std::round(1.0 / v);
  if (std::abs(inv * v - 1.0) > 1e-12) return "";
  return " = 1/" + std::to_string(static_cast<std::uint64_t>(inv));
}

// ---- image-accuracy ---------------------------------------------------------

struct ImageOptions {
  std::string net, report;
  std::size_t pixels = 9;
  int m = 2;
  std::optional<double> b;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  bool analytic_only = false;
};

void setup_image(CLI::App& app, ImageOptions& o) {
  auto* cmd = app.add_subcommand("image-accuracy", "Ground-truth accuracy of the image classifier");
  cmd->add_option("--network", o.net, "Image classifier JSON (default: build from --pixels/--m/--b)");
  cmd->add_option("--pixels", o.pixels, "Pixels per image");
  cmd->add_option("--m", o.m, "Grayscale reduction step");
  cmd->add_option("--b", o.b, "Truncation level (default P - 1e-3)");
  cmd->add_option("--samples", o.samples, "Sampled ground-truth images");
  cmd->add_option("--seed", o.seed, "Sample stream seed");
  cmd->add_flag("--analytic-only", o.analytic_only, "Report the analytic training fraction only");
  cmd->add_option("--report", o.report, "Write the JSON report here");
}

int run_image(const ImageOptions& o, Manifest& manifest) {
  ImageGridSpec spec{o.pixels, o.m};
  std::optional<Mlp> net;
  if (!o.net.empty()) {
    net = load_network(o.net);
    const auto& p = net->metadata.at("params");
    spec = {p.at("pixels").get<std::size_t>(), p.at("m").get<int>()};
  }
  spec.check();
  manifest.seed = o.seed;
  const auto size = image_training_set_size(spec);
  const double fraction = image_training_fraction(spec);
  std::vector<std::pair<std::string, std::string>> rows{
      {"pixels", std::to_string(spec.pixels)},
      {"step m", std::to_string(spec.step)},
      {"training set", size.describe()},
      {"analytic accuracy (b -> P)", fixed(fraction) + unit_fraction(fraction)}};
  json report = {{"pixels", spec.pixels}, {"m", spec.step}, {"training_set", size.describe()},
                 {"analytic_training_fraction", fraction}};
  if (!o.analytic_only) {
    if (!net) {
      const double b = o.b.value_or(static_cast<double>(spec.pixels) - 1e-3);
      net = build_network({{"family", "relu-image-classifier"}, {"pixels", spec.pixels}, {"m", spec.step}, {"b", b}});
    }
    const auto r = image_accuracy_estimate(*net, spec, o.samples, o.seed);
    report["estimate"] = to_json(r);
    rows.push_back({"sampled accuracy", fixed(r.accuracy) + " +/- " + fixed(r.standard_error)});
    rows.push_back({"samples", std::to_string(r.samples)});
  }
  print_table(rows);
  if (!o.report.empty()) {
    save_json(report, o.report);
    manifest.outputs.push_back(o.report);
  }
  return kExitOk;
}

// ---- replay ---------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args);

int run_replay(const std::string& path) {
  const auto doc = load_json(path);
  if (!doc.contains("argv") || !doc["argv"].is_array()) throw ParameterError("'" + path + "' has no argv");
  auto argv = doc["argv"].get<std::vector<std::string>>();
  if (!argv.empty() && argv.size() > 1 && argv[1] == "replay") throw ParameterError("refusing to replay a replay");
  const auto cwd = fs::current_path();
  if (doc.contains("cwd")) fs::current_path(doc["cwd"].get<std::string>());
  const int code = dispatch(argv);
  fs::current_path(cwd);
  return code;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Explicitly constructed global-minimum networks: build, extend, verify."};
  app.set_version_flag("--version", OVERFIT_FORGE_VERSION);
  app.require_subcommand(1);

  ConstructOptions construct;
  ExtendOptions ext;
  EvaluateOptions evaluate;
  SupportOptions support;
  DeadZoneOptions dead;
  VerifyOptions verify;
  PlotOptions plot;
  ImageOptions image;
  std::string replay_path;
  setup_construct(app, construct);
  setup_extend(app, ext);
  setup_evaluate(app, evaluate);
  setup_verify(app, verify);
  setup_support(app, support);
  setup_dead_zone(app, dead);
  setup_plot(app, plot);
  setup_image(app, image);
  app.add_subcommand("replay", "Re-run the command recorded in a manifest")
      ->add_option("manifest", replay_path, "Manifest JSON")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  Manifest manifest;
  manifest.argv = args;
  manifest.command = app.get_subcommands().front()->get_name();
  int code = kExitOk;
  int verification = kExitOk;
  try {
    if (manifest.command == "construct") code = run_construct(construct, manifest);
    else if (manifest.command == "extend") code = run_extend(ext, manifest);
    else if (manifest.command == "evaluate") code = run_evaluate(evaluate, manifest);
    else if (manifest.command == "verify") code = run_verify(verify, manifest);
    else if (manifest.command == "support") code = run_support(support, manifest);
    else if (manifest.command == "dead-zone") code = run_dead_zone(dead, manifest);
    else if (manifest.command == "plot-data") code = run_plot(plot, manifest);
    else if (manifest.command == "image-accuracy") code = run_image(image, manifest);
    else if (manifest.command == "replay") return run_replay(replay_path);
  } catch (const VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    verification = kExitVerification;
  }
  write_manifest(manifest);
  return verification != kExitOk ? verification : code;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  try {
    return dispatch(args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
