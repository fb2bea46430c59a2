#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "oracle.hpp"
#include "overfit/error.hpp"
#include "overfit/extend.hpp"
#include "overfit/grid.hpp"
#include "overfit/prelu.hpp"
#include "overfit/relu.hpp"
#include "overfit/sigmoid.hpp"
#include "overfit/verify.hpp"
#include "support.hpp"

using namespace overfit;

namespace {

Mlp zero_net(std::size_t d) {
  Mlp net;
  net.input_dim = d;
  net.layers = {DenseLayer{Matrix(1, d), {0.0}, Activation::relu()},
                DenseLayer{Matrix(1, 1), {0.0}, Activation::identity()}};
  return net;
}

TrainingSet sin_data(std::size_t n) {
  return sample_function([](std::span<const double> x) { return oracle::sin_pi(x[0]); }, GridSpec{1, n});
}

}  // namespace

TEST_CASE("check_global_optimum") {
  const auto net = classifier_1d(ClassifierParams::one_d(6, 0.9));
  const auto report = check_global_optimum(net, classification_set(GridSpec{1, 6}), LossKind::MSE);
  CHECK(report.pass);
  CHECK(report.loss_value <= 1e-12);

  const auto fail = check_global_optimum(zero_net(1), sin_data(9), LossKind::MAE);
  CHECK_FALSE(fail.pass);
  CHECK(fail.max_residual == 1.0);
  CHECK(fail.worst_point[0] == 0.5);

  const auto data = sin_data(9);
  const auto sig = approximator_1d_sigmoid(data, {200.0, 150.0, 0.995});
  CHECK(check_global_optimum(sig, data, LossKind::MSE, {1e-6, 1e-6}).pass);

  const auto ext = extend(net, ExtensionParams{});
  CHECK(check_global_optimum(ext, classification_set(GridSpec{1, 6}), LossKind::MSE).pass);
  CHECK(to_json(report)["pass"] == true);
}

TEST_CASE("support of the zero net") {
  const auto r = support_measure(zero_net(2), SupportMethod::monte_carlo(5000, 1), kExactSupportThreshold);
  CHECK(r.measure == 0.0);
  CHECK(r.standard_error == 0.0);
  const auto g = support_measure(zero_net(1), SupportMethod::grid(1e-3), kExactSupportThreshold);
  CHECK(g.probes == 1000);
  CHECK(g.measure == 0.0);
}

TEST_CASE("1D support equals 1 - b") {
  const auto net = classifier_1d(ClassifierParams::one_d(6, 0.9));
  const auto r = support_measure(net, SupportMethod::grid(1e-5), kExactSupportThreshold);
  CHECK(r.probes == 100000);
  CHECK(std::abs(r.measure - 0.1) <= 0.005);
}

TEST_CASE("2D support stays under its bound") {
  const auto net = classifier_nd(ClassifierParams::nd(4, 2, 1.5));
  const auto bound = support_bound_for(net);
  REQUIRE(bound);
  CHECK(*bound == doctest::Approx(16.0 * 0.25 / 9.0));
  const auto mc = support_measure(net, SupportMethod::monte_carlo(200000, 9), kExactSupportThreshold, bound);
  CHECK(mc.pass);
  CHECK(mc.measure >= 0.0);
  const auto grid = support_measure(net, SupportMethod::grid(2e-3), kExactSupportThreshold, bound);
  CHECK(grid.pass);
  CHECK(std::abs(grid.measure - mc.measure) <= 3.0 * mc.standard_error + 2e-3);
}

TEST_CASE("approximator bound counts full-spacing hats") {
  const auto net = approximator_1d(sin_data(9), 0.7);
  REQUIRE(support_bound_for(net));
  CHECK(*support_bound_for(net) == doctest::Approx(2.0 * 9.0 / 8.0 * 0.3));
  // sin(pi x) vanishes at both ends, so only the 7 interior points carry support.
  const auto r = support_measure(net, SupportMethod::grid(1e-5), kExactSupportThreshold);
  CHECK(r.measure == doctest::Approx(7.0 * 2.0 * 0.3 / 8.0).epsilon(1e-3));
}

TEST_CASE("support is non-increasing in b") {
  double previous = 2.0;
  for (double b : {1.0, 1.2, 1.5, 1.8, 1.95}) {
    const auto net = classifier_nd(ClassifierParams::nd(4, 2, b));
    const auto r = support_measure(net, SupportMethod::monte_carlo(50000, 4), kExactSupportThreshold,
                                   support_bound_for(net));
    CHECK(r.pass);
    CHECK(r.measure <= previous);
    previous = r.measure;
  }
}

TEST_CASE("support of every ReLU family respects the analytic bound") {
  const auto sin2 = sample_function([](std::span<const double> x) { return 1.0 + x[0] * x[1]; }, GridSpec{2, 4});
  const std::vector<Mlp> nets{classifier_1d(ClassifierParams::one_d(6, 0.5)), approximator_1d(sin_data(9), 0.7),
                              classifier_nd(ClassifierParams::nd(4, 3, 2.5)), approximator_nd(sin2, 1.6),
                              classifier_nd_prelu(ClassifierParams::nd(4, 2, 1.7), {0.5, std::nullopt})};
  for (const auto& net : nets) {
    const auto bound = support_bound_for(net);
    REQUIRE(bound);
    const auto r = support_measure(net, SupportMethod::monte_carlo(40000, 2), kExactSupportThreshold, bound);
    CHECK_MESSAGE(r.pass, net.metadata["family"]);
  }
}

TEST_CASE("standard error halves when samples quadruple") {
  const auto net = classifier_nd(ClassifierParams::nd(4, 2, 1.5));
  const auto a = support_measure(net, SupportMethod::monte_carlo(40000, 1), kExactSupportThreshold);
  const auto b = support_measure(net, SupportMethod::monte_carlo(160000, 1), kExactSupportThreshold);
  CHECK(b.standard_error / a.standard_error == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("support reports are deterministic and thread independent") {
  const auto net = classifier_nd(ClassifierParams::nd(4, 2, 1.5));
  const auto method = SupportMethod::monte_carlo(50000, 42);
  setenv("OVERFIT_FORGE_THREADS", "1", 1);
  const auto one = to_json(support_measure(net, method, kExactSupportThreshold)).dump();
  setenv("OVERFIT_FORGE_THREADS", "7", 1);
  const auto seven = to_json(support_measure(net, method, kExactSupportThreshold)).dump();
  unsetenv("OVERFIT_FORGE_THREADS");
  const auto all = to_json(support_measure(net, method, kExactSupportThreshold)).dump();
  CHECK(one == seven);
  CHECK(one == all);
}

TEST_CASE("support budgets") {
  const auto net = zero_net(3);
  CHECK_THROWS_AS(support_measure(net, SupportMethod::monte_carlo(999, 1), 0.0), ParameterError);
  CHECK_THROWS_AS(support_measure(net, SupportMethod::grid(1e-3), 0.0), BudgetError);
  CHECK_THROWS_AS(support_measure(net, SupportMethod::monte_carlo(5000, 1), 0.0, std::nullopt, 4000), BudgetError);
}

TEST_CASE("support_bound_analytic") {
  CHECK(support_bound_analytic(4, 2, 2.0) == 0.0);
  CHECK(support_bound_analytic(4, 2, 1.5) == doctest::Approx(0.4444444444444444));
  CHECK(support_bound_analytic(4, 3, 2.7) == doctest::Approx(64.0 / 27.0 * 0.027));
  CHECK_THROWS_AS(support_bound_analytic(1, 2, 1.5), ParameterError);
  CHECK_THROWS_AS(support_bound_analytic(4, 2, 0.5), ParameterError);
}

TEST_CASE("dead zone of the 1D classifier") {
  const auto net = classifier_1d(ClassifierParams::one_d(6, 0.9));
  const auto data = classification_set(GridSpec{1, 6});
  CHECK(*dead_zone_radius_for(net) == doctest::Approx(0.01));
  const auto pass = dead_zone_check(net, data, 0.011, 10000, 1e-9, 1);
  CHECK(pass.pass);
  CHECK(pass.probes == 10000);
  CHECK(pass.norm == "abs");
  const auto fail = dead_zone_check(net, data, 0.005, 10000, 1e-9, 1);
  CHECK_FALSE(fail.pass);
  CHECK(distance_to_points(data, fail.worst_point) > 0.005);
}

TEST_CASE("dead zone edge cases") {
  const auto net = classifier_1d(ClassifierParams::one_d(6, 0.0));
  const auto data = classification_set(GridSpec{1, 6});
  const auto vacuous = dead_zone_check(net, data, 0.1, 100, 1e-9, 1);
  CHECK(vacuous.vacuous);
  CHECK(vacuous.pass);
  CHECK(vacuous.probes == 0);
  // tiny but nonempty region starves the sampler
  CHECK_THROWS_AS(dead_zone_check(net, data, 0.1 - 1e-9, 100, 1e-9, 1), BudgetError);
  CHECK_THROWS_AS(dead_zone_check(net, data, -1.0, 100, 1e-9, 1), ParameterError);
}

TEST_CASE("dead zone of the sigmoid example and the CE classifier") {
  const auto data = sin_data(9);
  const auto sig = approximator_1d_sigmoid(data, {50.0, 150.0, 0.995});
  CHECK(dead_zone_check(sig, data, 0.02, 10000, 1e-3, 8).pass);

  const auto ce = classifier_1d(ClassifierParams::one_d(6, 0.95, ClassifierCost::CrossEntropy));
  CHECK(dead_zone_value_for(ce) == 0.5);
  const auto labels = classification_set(GridSpec{1, 6});
  CHECK(dead_zone_check(ce, labels, *dead_zone_radius_for(ce), 5000, 1e-9, 8).pass);
}

TEST_CASE("max-norm distance in d dimensions") {
  const auto data = classification_set(GridSpec{2, 3});
  CHECK(distance_to_points(data, std::vector<double>{0.1, 0.45}) == doctest::Approx(0.1));
  const TrainingSet loose(2, {0.0, 0.0, 1.0, 1.0}, {1.0, 1.0});
  CHECK(distance_to_points(loose, std::vector<double>{0.2, 0.7}) == doctest::Approx(0.7));
}

TEST_CASE("image accuracy") {
  const ImageGridSpec spec{2, 64};
  CHECK(image_training_fraction(spec) == doctest::Approx(std::pow(2.0 / 128.0, 2)));
  CHECK(image_training_fraction({9, 2}) == doctest::Approx(1.0 / 512.0));
  const auto tight = image_accuracy_estimate(image_classifier(spec, 1.999), spec, 200000, 3);
  CHECK(std::abs(tight.accuracy - tight.analytic_training_fraction) <= 3.0 * tight.standard_error + 1e-12);
  const auto loose = image_accuracy_estimate(image_classifier(spec, 1.0), spec, 200000, 3);
  CHECK(loose.accuracy > tight.accuracy);
  CHECK_THROWS_AS(image_accuracy_estimate(image_classifier(spec, 1.5), ImageGridSpec{3, 64}, 10, 1), StructuralError);
}
