#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "overfit/mlp.hpp"
#include "overfit/training_set.hpp"

namespace overfit {

/// {input_dim, layers: [{weights: [[...]], bias: [...], activation: {kind, alpha?}}], metadata}
nlohmann::json network_to_json(const Mlp& net);
/// Throws ParameterError on schema violations.
Mlp network_from_json(const nlohmann::json& doc);

/// Throws IoError on file errors.
void save_network(const Mlp& net, const std::filesystem::path& path);
Mlp load_network(const std::filesystem::path& path);

/// printf %.17g: round-trips every double.
std::string format_double(double v);

/// Header x1..xd,y then one row per point.
void write_csv(const TrainingSet& data, std::ostream& out);
void save_csv(const TrainingSet& data, const std::filesystem::path& path);
/// Throws IoError / DataError.
TrainingSet load_csv(const std::filesystem::path& path);

void save_json(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace overfit
