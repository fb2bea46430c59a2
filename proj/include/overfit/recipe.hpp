#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "overfit/grid.hpp"
#include "overfit/mlp.hpp"
#include "overfit/training_set.hpp"

namespace overfit {

/// Named construction recipes, shared by the CLI and the Python module. A
/// recipe is a JSON object with a "family" plus that family's parameters:
///
///   relu-classifier-1d    n, b | b1,b2, cost ("pm1" | "cross-entropy")
///   relu-approx-1d        n, b, target
///   relu-classifier-nd    n, d, b
///   relu-approx-nd        n, d, b, target
///   relu-image-classifier pixels, m, b
///   prelu-classifier-1d   n, b, alpha, c?
///   prelu-approx-1d       n, b, alpha, c?, target
///   prelu-classifier-nd   n, d, b, alpha, c?
///   prelu-approx-nd       n, d, b, alpha, c?, target
///   sigmoid-approx-1d     n, k, l, b, target
///   sigmoid-approx-nd     n, d, k, l, b, target
///
/// Targets: "sin-pi" (prod sin(pi x_j)), "zero", "sum", "product",
/// "const" (with "value").
std::vector<std::string> recipe_families();

ScalarField target_function(const std::string& name, double value = 0.0);

/// The constructed network; its metadata holds the full recipe.
Mlp build_network(const nlohmann::json& recipe);

/// The grid training set the recipe is fitted to (image families: the
/// reduced-grayscale set, subject to the enumeration budget).
TrainingSet training_set_for(const nlohmann::json& recipe, std::size_t budget = kDefaultEnumerationBudget);

/// Recipe stored in a constructed network's metadata; throws ParameterError if absent.
const nlohmann::json& recipe_of(const Mlp& net);

}  // namespace overfit
