#include "overfit/recipe.hpp"

#include <cmath>
#include <numbers>

#include "overfit/error.hpp"
#include "overfit/prelu.hpp"
#include "overfit/relu.hpp"
#include "overfit/sigmoid.hpp"

namespace overfit {

using nlohmann::json;

std::vector<std::string> recipe_families() {
  return {"relu-classifier-1d",  "relu-approx-1d",      "relu-classifier-nd", "relu-approx-nd",
          "relu-image-classifier", "prelu-classifier-1d", "prelu-approx-1d",    "prelu-classifier-nd",
          "prelu-approx-nd",     "sigmoid-approx-1d",   "sigmoid-approx-nd"};
}

ScalarField target_function(const std::string& name, double value) {
  if (name == "sin-pi")
    return [](std::span<const double> x) {
      double p = 1.0;
      for (double v : x) p *= std::sin(std::numbers::pi * v);
      return p;
    };
  if (name == "zero") return [](std::span<const double>) { return 0.0; };
  if (name == "sum")
    return [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v;
      return s;
    };
  if (name == "product")
    return [](std::span<const double> x) {
      double p = 1.0;
      for (double v : x) p *= v;
      return p;
    };
  if (name == "const") return [value](std::span<const double>) { return value; };
  throw ParameterError("unknown target '" + name + "'");
}

namespace {

template <class T>
T required(const json& r, const char* key) {
  if (!r.contains(key)) throw ParameterError(std::string("recipe is missing '") + key + "'");
  try {
    return r.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParameterError(std::string("recipe field '") + key + "' has the wrong type");
  }
}

template <class T>
T optional_field(const json& r, const char* key, T fallback) {
  if (!r.contains(key) || r.at(key).is_null()) return fallback;
  try {
    return r.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParameterError(std::string("recipe field '") + key + "' has the wrong type");
  }
}

std::string family_of(const json& r) {
  if (!r.is_object()) throw ParameterError("recipe must be a JSON object");
  const auto family = required<std::string>(r, "family");
  for (const auto& f : recipe_families())
    if (f == family) return family;
  throw ParameterError("unknown family '" + family + "'");
}

bool one_dimensional(const std::string& family) { return family.ends_with("-1d"); }

NeuronSharing sharing_of(const json& r) {
  const auto s = optional_field<std::string>(r, "sharing", "shared");
  if (s == "shared") return NeuronSharing::Shared;
  if (s == "unshared") return NeuronSharing::Unshared;
  throw ParameterError("sharing must be 'shared' or 'unshared'");
}

ClassifierParams classifier_params(const std::string& family, const json& r) {
  const auto n = required<std::size_t>(r, "n");
  if (one_dimensional(family)) {
    ClassifierParams p;
    p.n = n;
    if (r.contains("b1") || r.contains("b2")) {
      p.b1 = required<double>(r, "b1");
      p.b2 = required<double>(r, "b2");
    } else {
      p.b1 = p.b2 = required<double>(r, "b");
    }
    const auto cost = optional_field<std::string>(r, "cost", "pm1");
    if (cost == "pm1") p.cost = ClassifierCost::PlusMinusOne;
    else if (cost == "cross-entropy") p.cost = ClassifierCost::CrossEntropy;
    else throw ParameterError("cost must be 'pm1' or 'cross-entropy'");
    return p;
  }
  return ClassifierParams::nd(n, required<std::size_t>(r, "d"), required<double>(r, "b"));
}

PreluOptions prelu_options(const json& r) {
  PreluOptions o;
  o.alpha = optional_field<double>(r, "alpha", 0.01);
  if (r.contains("c") && !r["c"].is_null()) o.clip = required<double>(r, "c");
  return o;
}

GridSpec grid_of(const std::string& family, const json& r) {
  return {one_dimensional(family) ? 1 : required<std::size_t>(r, "d"), required<std::size_t>(r, "n")};
}

}  // namespace

TrainingSet training_set_for(const json& recipe, std::size_t budget) {
  const auto family = family_of(recipe);
  if (family == "relu-image-classifier")
    return image_training_set({required<std::size_t>(recipe, "pixels"), required<int>(recipe, "m")}, budget);
  const GridSpec spec = grid_of(family, recipe);
  if (family.find("classifier") != std::string::npos) return classification_set(spec, budget);
  const auto target = optional_field<std::string>(recipe, "target", "sin-pi");
  return sample_function(target_function(target, optional_field<double>(recipe, "value", 0.0)), spec, budget);
}

Mlp build_network(const json& recipe) {
  const auto family = family_of(recipe);
  const auto budget = optional_field<std::size_t>(recipe, "width_budget", kDefaultWidthBudget);
  Mlp net;
  if (family == "relu-classifier-1d") {
    net = classifier_1d(classifier_params(family, recipe), sharing_of(recipe));
  } else if (family == "relu-classifier-nd") {
    net = classifier_nd(classifier_params(family, recipe), sharing_of(recipe));
  } else if (family == "relu-approx-1d") {
    net = approximator_1d(training_set_for(recipe), required<double>(recipe, "b"), sharing_of(recipe));
  } else if (family == "relu-approx-nd") {
    net = approximator_nd(training_set_for(recipe), required<double>(recipe, "b"), budget, sharing_of(recipe));
  } else if (family == "relu-image-classifier") {
    net = image_classifier({required<std::size_t>(recipe, "pixels"), required<int>(recipe, "m")},
                           required<double>(recipe, "b"), sharing_of(recipe));
  } else if (family == "prelu-classifier-1d") {
    net = classifier_1d_prelu(classifier_params(family, recipe), prelu_options(recipe));
  } else if (family == "prelu-classifier-nd") {
    net = classifier_nd_prelu(classifier_params(family, recipe), prelu_options(recipe));
  } else if (family == "prelu-approx-1d") {
    net = approximator_1d_prelu(training_set_for(recipe), required<double>(recipe, "b"), prelu_options(recipe));
  } else if (family == "prelu-approx-nd") {
    net = approximator_nd_prelu(training_set_for(recipe), required<double>(recipe, "b"), prelu_options(recipe),
                                budget);
  } else {
    SigmoidSpikeParams p;
    p.k = optional_field<double>(recipe, "k", p.k);
    p.l = optional_field<double>(recipe, "l", p.l);
    p.b = optional_field<double>(recipe, "b", family == "sigmoid-approx-1d" ? 0.0 : -1.0);
    if (family == "sigmoid-approx-1d") {
      net = approximator_1d_sigmoid(training_set_for(recipe), p);
    } else {
      if (!recipe.contains("b")) p.b = static_cast<double>(required<std::size_t>(recipe, "d")) - 1.0;
      net = approximator_nd_sigmoid(training_set_for(recipe), p, budget);
    }
  }
  net.metadata["recipe"] = recipe;
  return net;
}

const json& recipe_of(const Mlp& net) {
  if (!net.metadata.is_object() || !net.metadata.contains("recipe"))
    throw ParameterError("network carries no construction recipe");
  return net.metadata["recipe"];
}

}  // namespace overfit
