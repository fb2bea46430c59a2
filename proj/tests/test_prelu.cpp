#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "overfit/error.hpp"
#include "overfit/grid.hpp"
#include "overfit/loss.hpp"
#include "overfit/prelu.hpp"
#include "overfit/relu.hpp"
#include "support.hpp"

using namespace overfit;
using testing::f;

namespace {

double gadget_output(double s, double clip, double alpha) {
  const std::vector<double> w{1.0};
  const auto g = clipped_ramp_pair(w, 0.0, 0.0, clip, alpha, 1.0);
  const auto a = Activation::parametric_relu(alpha);
  return g.out_weight_a * a(g.weights_a[0] * s + g.bias_a) + g.out_weight_b * a(g.weights_b[0] * s + g.bias_b) +
         g.out_bias;
}

const double kAlphas[] = {-1.0, 0.0, 0.01, 0.5};

TrainingSet sin_data(std::size_t n) {
  return sample_function([](std::span<const double> x) { return oracle::sin_pi(x[0]); }, GridSpec{1, n});
}

}  // namespace

TEST_CASE("clipped ramp pair") {
  CHECK(gadget_output(-0.3, 1.0, 0.01) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(gadget_output(-0.3, 1.0, 0.01)) <= 1e-15);
  CHECK(gadget_output(0.4, 1.0, 0.01) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(gadget_output(2.0, 1.0, 0.01) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(clipped_ramp(-0.3, 1.0) == 0.0);
  CHECK(clipped_ramp(0.4, 1.0) == 0.4);
  CHECK(clipped_ramp(2.0, 1.0) == 1.0);
  for (double alpha : kAlphas)
    for (double s = -2.0; s <= 1.5; s += 0.01)
      CHECK(std::abs(gadget_output(s, 1.5, alpha) - std::max(s, 0.0)) <= 1e-12);
}

TEST_CASE("clipped ramp pair rejects a low clip and alpha = 1") {
  const std::vector<double> w{1.0};
  try {
    clipped_ramp_pair(w, 0.0, 2.0, 1.5, 0.01, 1.0);
    FAIL("expected a parameter error");
  } catch (const ParameterError& e) {
    const std::string what = e.what();
    CHECK(what.find("1.5") != std::string::npos);
    CHECK(what.find('2') != std::string::npos);
  }
  CHECK_THROWS_AS(clipped_ramp_pair(w, 0.0, 0.5, 1.0, 1.0, 1.0), ParameterError);
  CHECK(auto_clip(0.25) == 1.25);
}

TEST_CASE("prelu hats") {
  const auto layout = HatLayout::unit_grid(6, HatMode::Disjoint);
  for (double alpha : {-0.5, 0.0, 0.3}) {
    const auto bank = prelu_hat_first_layer(layout, 1, alpha);
    CHECK(bank.layer.out_width() == 13);
    CHECK(bank.layer.activation.alpha() == alpha);
  }
  CHECK_THROWS_AS(prelu_hat_first_layer(layout, 1, 1.0), ParameterError);

  // alpha = -0.5 hat vanishes outside its support
  const double h = layout.half_width();
  for (double t : {-3 * h, -1.5 * h, -h, h, 1.01 * h, 4 * h}) CHECK(std::abs(oracle::prelu_hat(t, h, -0.5)) <= 1e-15);
  const auto zero = classifier_1d_prelu(ClassifierParams::one_d(6, 0.0), {0.0, std::nullopt});
  const auto relu = classifier_1d(ClassifierParams::one_d(6, 0.0));
  for (const auto& x : testing::random_points(1000, 1)) CHECK(std::abs(f(zero, x) - f(relu, x)) <= 1e-15);
}

TEST_CASE("classifier_1d_prelu") {
  const auto relu = classifier_1d(ClassifierParams::one_d(6, 0.9));
  const auto data = classification_set(GridSpec{1, 6});
  for (double alpha : kAlphas) {
    const auto net = classifier_1d_prelu(ClassifierParams::one_d(6, 0.9), {alpha, std::nullopt});
    CHECK(net.hidden_widths() == std::vector<std::size_t>{13, 4});
    CHECK(net.metadata["params"]["c"].get<double>() == doctest::Approx(1.1));
    for (const auto& x : testing::random_points(1000, 1)) CHECK(std::abs(f(net, x) - f(relu, x)) <= 1e-9);
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(std::abs(forward(net, data.point(i)) - data.target(i)) <= 1e-9);
  }
  CHECK_THROWS_AS(classifier_1d_prelu(ClassifierParams::one_d(6, 0.9), {0.01, 0.05}), ParameterError);
  CHECK_THROWS_AS(classifier_1d_prelu(ClassifierParams::one_d(6, 0.9, ClassifierCost::CrossEntropy), {}),
                  ParameterError);
}

TEST_CASE("approximator_1d_prelu") {
  const auto zero = approximator_1d_prelu(
      sample_function([](std::span<const double>) { return 0.0; }, GridSpec{1, 5}), 0.4, {0.25, std::nullopt});
  for (const auto& x : testing::random_points(300, 1)) CHECK(std::abs(f(zero, x)) <= 1e-15);

  const auto data = sin_data(9);
  const auto relu = approximator_1d(data, 0.3);
  const auto net = approximator_1d_prelu(data, 0.3, {0.25, std::nullopt});
  CHECK(net.hidden_widths() == std::vector<std::size_t>{11, 18});
  for (const auto& x : testing::random_points(1000, 1)) CHECK(std::abs(f(net, x) - f(relu, x)) <= 1e-9);
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(std::abs(forward(net, data.point(i)) - data.target(i)) <= 1e-12);
}

TEST_CASE("classifier_nd_prelu and approximator_nd_prelu") {
  const auto relu = classifier_nd(ClassifierParams::nd(4, 2, 1.5));
  const auto net = classifier_nd_prelu(ClassifierParams::nd(4, 2, 1.5), {0.01, std::nullopt});
  CHECK(net.hidden_widths() == std::vector<std::size_t>{18, 4});
  for (const auto& x : testing::random_points(1000, 2)) CHECK(std::abs(forward(net, x) - forward(relu, x)) <= 1e-9);
  const auto labels = classification_set(GridSpec{2, 4});
  CHECK(loss(net, labels, LossKind::MSE) <= 1e-12);

  const auto data = sample_function([](std::span<const double> x) { return x[0] + x[1]; }, GridSpec{2, 3});
  const auto approx = approximator_nd_prelu(data, 1.3, {-1.0, std::nullopt});
  CHECK(approx.hidden_widths() == std::vector<std::size_t>{10, 18});
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(std::abs(forward(approx, data.point(i)) - data.target(i)) <= 1e-9);
  CHECK_THROWS_AS(approximator_nd_prelu(data, 1.3, {0.01, std::nullopt}, 17), BudgetError);
}
