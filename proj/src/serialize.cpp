#include "overfit/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "overfit/error.hpp"

namespace overfit {

using nlohmann::json;

json network_to_json(const Mlp& net) {
  json layers = json::array();
  for (const auto& layer : net.layers) {
    json weights = json::array();
    for (std::size_t r = 0; r < layer.out_width(); ++r) {
      const auto row = layer.weights.row(r);
      weights.push_back(std::vector<double>(row.begin(), row.end()));
    }
    json act = {{"kind", layer.activation.name()}};
    if (layer.activation.tag() == ActivationTag::ParametricReLU) act["alpha"] = layer.activation.alpha();
    layers.push_back({{"weights", std::move(weights)}, {"bias", layer.bias}, {"activation", std::move(act)}});
  }
  return {{"format", "overfit-forge-mlp"},
          {"version", 1},
          {"input_dim", net.input_dim},
          {"layers", std::move(layers)},
          {"metadata", net.metadata}};
}

Mlp network_from_json(const json& doc) {
  try {
    Mlp net;
    net.input_dim = doc.at("input_dim").get<std::size_t>();
    for (const auto& jl : doc.at("layers")) {
      DenseLayer layer;
      const auto& rows = jl.at("weights");
      const std::size_t out = rows.size();
      const std::size_t in = out == 0 ? 0 : rows.at(0).size();
      layer.weights = Matrix(out, in);
      for (std::size_t r = 0; r < out; ++r) {
        if (rows[r].size() != in) throw ParameterError("ragged weight matrix");
        for (std::size_t c = 0; c < in; ++c) layer.weights(r, c) = rows[r][c].get<double>();
      }
      layer.bias = jl.at("bias").get<std::vector<double>>();
      const auto& act = jl.at("activation");
      layer.activation = Activation::from_name(act.at("kind").get<std::string>(), act.value("alpha", 0.0));
      net.layers.push_back(std::move(layer));
    }
    if (doc.contains("metadata")) net.metadata = doc["metadata"];
    require_valid(net);
    return net;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed network document: ") + e.what());
  } catch (const StructuralError& e) {
    throw ParameterError(std::string("malformed network document: ") + e.what());
  }
}

void save_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void save_network(const Mlp& net, const std::filesystem::path& path) { save_json(network_to_json(net), path); }

Mlp load_network(const std::filesystem::path& path) { return network_from_json(load_json(path)); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const TrainingSet& data, std::ostream& out) {
  for (std::size_t j = 0; j < data.dim(); ++j) out << 'x' << j + 1 << ',';
  out << "y\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.point(i)) out << format_double(v) << ',';
    out << format_double(data.target(i)) << '\n';
  }
}

void save_csv(const TrainingSet& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(data, out);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

TrainingSet load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path.string() + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.size() < 2 || header.back() != "y") throw DataError("CSV header must be x1,...,xd,y");
  for (std::size_t j = 0; j + 1 < header.size(); ++j)
    if (header[j] != "x" + std::to_string(j + 1)) throw DataError("CSV header must be x1,...,xd,y");
  const std::size_t d = header.size() - 1;
  std::vector<double> coords, targets;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != d + 1) throw DataError("line " + std::to_string(lineno) + ": expected " +
                                               std::to_string(d + 1) + " fields");
    for (std::size_t j = 0; j <= d; ++j) {
      double v;
      try {
        std::size_t used = 0;
        v = std::stod(cells[j], &used);
        if (used != cells[j].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw DataError("line " + std::to_string(lineno) + ": '" + cells[j] + "' is not a number");
      }
      (j < d ? coords : targets).push_back(v);
    }
  }
  return TrainingSet(d, std::move(coords), std::move(targets));
}

}  // namespace overfit
