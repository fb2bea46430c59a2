#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "overfit/error.hpp"
#include "overfit/grid.hpp"

using namespace overfit;

TEST_CASE("grid_1d") {
  CHECK(grid_1d(2) == std::vector<double>{0.0, 1.0});
  const auto g6 = grid_1d(6);
  const std::vector<double> expected{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  REQUIRE(g6.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(g6[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  const auto g9 = grid_1d(9);
  CHECK(g9.front() == 0.0);
  CHECK(g9.back() == 1.0);
  CHECK(g9[1] == 0.125);
  CHECK_THROWS_AS(grid_1d(1), ParameterError);
}

TEST_CASE("grid_1d spacing is constant") {
  for (std::size_t n : {2, 3, 7, 50, 101}) {
    const auto g = grid_1d(n);
    const double s = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) CHECK(std::abs(g[i] - g[i - 1] - s) <= 1e-15);
  }
}

TEST_CASE("grid_nd order and size") {
  const auto g = grid_nd(GridSpec{2, 2});
  REQUIRE(g.size() == 4);
  CHECK(g[0] == std::vector<double>{0, 0});
  CHECK(g[1] == std::vector<double>{0, 1});
  CHECK(g[2] == std::vector<double>{1, 0});
  CHECK(g[3] == std::vector<double>{1, 1});

  const auto g4 = grid_nd(GridSpec{2, 4});
  CHECK(g4.size() == 16);
  CHECK(g4[1][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(grid_nd(GridSpec{3, 4}).size() == 64);

  const std::set<std::vector<double>> distinct(g4.begin(), g4.end());
  CHECK(distinct.size() == 16);
  CHECK(grid_nd(GridSpec{2, 4}) == g4);
}

TEST_CASE("grid enumeration budget") {
  CHECK_THROWS_AS(GridEnumerator(GridSpec{9, 64}), BudgetError);
  CHECK_THROWS_AS(GridEnumerator(GridSpec{3, 10}, 999), BudgetError);
  CHECK_NOTHROW(GridEnumerator(GridSpec{3, 10}, 1000));
  CHECK_FALSE(checked_power(64, 20).has_value());
  CHECK(*checked_power(64, 9) == 18014398509481984ULL);
  const GridEnumerator e(GridSpec{3, 4});
  CHECK(e.multi_index(27) == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("label_halfspace") {
  CHECK(label_halfspace(std::vector<double>{0.4, 0.9}) == -1.0);
  CHECK(label_halfspace(std::vector<double>{0.5}) == 1.0);
  CHECK(label_halfspace(std::vector<double>{1.0, 0.0, 0.0}) == 1.0);
}

TEST_CASE("sample_function") {
  const auto zeros = sample_function([](std::span<const double>) { return 0.0; }, GridSpec{2, 3});
  for (double y : zeros.targets()) CHECK(y == 0.0);

  const auto s = sample_function([](std::span<const double> x) { return std::sin(std::numbers::pi * x[0]); },
                                 GridSpec{1, 9});
  for (std::size_t i = 0; i < 9; ++i) CHECK(s.target(i) == oracle::sin_pi(i / 8.0));

  const auto sum = sample_function([](std::span<const double> x) { return x[0] + x[1]; }, GridSpec{2, 2});
  CHECK(std::vector<double>(sum.targets().begin(), sum.targets().end()) == std::vector<double>{0, 1, 1, 2});

  CHECK_THROWS_AS(sample_function([](std::span<const double> x) { return 1.0 / x[0]; }, GridSpec{1, 3}), DataError);
}

TEST_CASE("training set validation") {
  CHECK_THROWS_AS(TrainingSet(1, {1.5}, {0.0}), DataError);
  CHECK_THROWS_AS(TrainingSet(2, {0.5}, {0.0}), DataError);
  CHECK_THROWS_AS(TrainingSet(1, {0.5}, {std::nan("")}), DataError);
}

TEST_CASE("infer_grid") {
  const auto data = classification_set(GridSpec{2, 5});
  CHECK(infer_grid(data) == GridSpec{2, 5});
  const TrainingSet plain(1, {0.0, 0.5, 1.0}, {1, 2, 3});
  CHECK(infer_grid(plain) == GridSpec{1, 3});
  const TrainingSet off(1, {0.0, 0.4, 1.0}, {1, 2, 3});
  CHECK_THROWS_AS(infer_grid(off), ParameterError);
}

TEST_CASE("grayscale_reduce") {
  CHECK(grayscale_reduce(255, 2) == 254);
  CHECK(grayscale_reduce(127, 2) == 126);
  CHECK(grayscale_reduce(10, 10) == 10);
  CHECK_THROWS_AS(grayscale_reduce(256, 2), ParameterError);
  CHECK_THROWS_AS(grayscale_reduce(5, 0), ParameterError);
  for (int m = 1; m <= 255; ++m)
    for (int v : ImageGridSpec{1, m}.raw_levels()) CHECK(grayscale_reduce(v, m) == v);
}

TEST_CASE("image grid spec") {
  const ImageGridSpec nine_pixel{9, 2};
  CHECK(nine_pixel.levels() == 128);
  CHECK(nine_pixel.dark_levels().size() == 64);
  CHECK(nine_pixel.light_levels().size() == 64);
  CHECK(ImageGridSpec{9, 5}.levels() == 52);
  CHECK(ImageGridSpec{9, 10}.levels() == 26);
  CHECK_THROWS_AS(ImageGridSpec({0, 2}).check(), ParameterError);
}

TEST_CASE("image training sets") {
  SUBCASE("P=1, m=128") {
    const auto set = image_training_set({1, 128});
    REQUIRE(set.size() == 2);
    CHECK(set.point(0)[0] == 0.0);
    CHECK(set.target(0) == -1.0);
    CHECK(set.point(1)[0] == 128.0 / 255.0);
    CHECK(set.target(1) == 1.0);
  }
  SUBCASE("P=2, m=64") {
    const auto set = image_training_set({2, 64});
    CHECK(ImageGridSpec{2, 64}.raw_levels() == std::vector<int>{0, 64, 128, 192});
    REQUIRE(set.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) CHECK(set.target(i) == -1.0);
    for (std::size_t i = 4; i < 8; ++i) CHECK(set.target(i) == 1.0);
    CHECK(set.point(5)[1] == 192.0 / 255.0);
  }
  SUBCASE("unequal classes") {
    // m=100: levels 0,100,200 -> two dark, one light
    const auto set = image_training_set({2, 100});
    CHECK(set.size() == 4 + 1);
  }
  SUBCASE("full nine-pixel scale is refused") {
    const ImageGridSpec spec{9, 2};
    const auto size = image_training_set_size(spec);
    CHECK(size.describe().find("2 x 64^9") != std::string::npos);
    CHECK(*size.exact == 2 * 18014398509481984ULL);
    try {
      (void)image_training_set(spec);
      FAIL("expected a refusal");
    } catch (const BudgetError& e) {
      CHECK(std::string(e.what()).find("2 x 64^9") != std::string::npos);
    }
  }
}
