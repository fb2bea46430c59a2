#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "overfit/error.hpp"
#include "overfit/extend.hpp"
#include "overfit/grid.hpp"
#include "overfit/recipe.hpp"
#include "overfit/serialize.hpp"
#include "support.hpp"

using namespace overfit;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "overfit_forge_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("network json round trip is bit exact") {
  for (const char* family : {"relu-classifier-nd", "prelu-approx-1d", "sigmoid-approx-1d"}) {
    json recipe = {{"family", family}, {"n", 5}, {"d", 2}, {"b", 1.5}};
    if (std::string(family).ends_with("1d")) recipe["b"] = 0.4;
    const auto net = build_network(recipe);
    const auto path = scratch(std::string(family) + ".json");
    save_network(net, path);
    const auto back = load_network(path);
    CHECK(back.metadata == net.metadata);
    for (const auto& x : testing::random_points(500, net.input_dim)) CHECK(forward(back, x) == forward(net, x));
  }
}

TEST_CASE("network json schema") {
  const auto doc = network_to_json(build_network({{"family", "prelu-classifier-1d"}, {"n", 4}, {"b", 0.5}}));
  CHECK(doc["input_dim"] == 1);
  CHECK(doc["layers"].size() == 3);
  CHECK(doc["layers"][0]["activation"]["kind"] == "prelu");
  CHECK(doc["layers"][0]["activation"]["alpha"] == 0.01);
  CHECK(doc["layers"][0]["weights"].size() == 9);
  CHECK(doc["layers"][2]["activation"]["kind"] == "identity");

  auto broken = doc;
  broken["layers"][1]["bias"].push_back(1.0);
  CHECK_THROWS_AS(network_from_json(broken), ParameterError);
  CHECK_THROWS_AS(network_from_json(json{{"layers", 3}}), ParameterError);
  CHECK_THROWS_AS(load_network(scratch("missing-file.json")), IoError);
  std::ofstream(scratch("garbage.json")) << "{not json";
  CHECK_THROWS_AS(load_network(scratch("garbage.json")), IoError);
}

TEST_CASE("csv round trip") {
  const auto data = sample_function([](std::span<const double> x) { return oracle::sin_pi(x[0]) * x[1]; },
                                    GridSpec{2, 4});
  std::ostringstream text;
  write_csv(data, text);
  CHECK(text.str().rfind("x1,x2,y\n", 0) == 0);
  const auto path = scratch("data.csv");
  save_csv(data, path);
  const auto back = load_csv(path);
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back.target(i) == data.target(i));
    CHECK(back.point(i)[1] == data.point(i)[1]);
  }
  CHECK(infer_grid(back) == GridSpec{2, 4});
  CHECK(format_double(0.1) == "0.10000000000000001");

  std::ofstream(scratch("bad.csv")) << "x1,y\n0.5,abc\n";
  CHECK_THROWS_AS(load_csv(scratch("bad.csv")), DataError);
  std::ofstream(scratch("header.csv")) << "a,b\n";
  CHECK_THROWS_AS(load_csv(scratch("header.csv")), DataError);
}

TEST_CASE("recipes") {
  CHECK(recipe_families().size() == 11);
  for (const auto& family : recipe_families()) {
    json r = {{"family", family}, {"n", 4}, {"d", 2}, {"b", 1.5}, {"pixels", 2}, {"m", 64}};
    if (family.ends_with("1d")) r["b"] = 0.5;
    const auto net = build_network(r);
    CHECK(validate(net).empty());
    CHECK(recipe_of(net)["family"] == family);
    CHECK(net.metadata["family"] == family);
  }
  CHECK_THROWS_AS(build_network({{"family", "relu-classifier-9d"}}), ParameterError);
  CHECK_THROWS_AS(build_network({{"family", "relu-classifier-1d"}, {"n", 4}}), ParameterError);
  CHECK_THROWS_AS(build_network({{"family", "relu-classifier-1d"}, {"n", "four"}, {"b", 0.5}}), ParameterError);
  CHECK_THROWS_AS(target_function("cosine"), ParameterError);

  const auto set = training_set_for({{"family", "relu-approx-nd"}, {"n", 3}, {"d", 2}, {"target", "sum"}});
  CHECK(set.target(8) == 2.0);
  const auto cst = target_function("const", 2.5);
  CHECK(cst(std::vector<double>{0.1}) == 2.5);
  CHECK(target_function("product")(std::vector<double>{0.5, 0.5}) == 0.25);
}
