#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "overfit/error.hpp"
#include "overfit/extend.hpp"
#include "overfit/loss.hpp"
#include "overfit/recipe.hpp"
#include "overfit/serialize.hpp"
#include "overfit/verify.hpp"

namespace py = pybind11;
using namespace overfit;

namespace {

py::array_t<double> forward_batch(const Mlp& net, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
  if (x.ndim() != 2 || static_cast<std::size_t>(x.shape(1)) != net.input_dim)
    throw ParameterError("expected an array of shape (n, " + std::to_string(net.input_dim) + ")");
  const auto n = static_cast<std::size_t>(x.shape(0));
  py::array_t<double> out(static_cast<py::ssize_t>(n));
  auto o = out.mutable_unchecked<1>();
  const double* data = x.data();
  for (std::size_t i = 0; i < n; ++i)
    o(static_cast<py::ssize_t>(i)) = forward(net, std::span<const double>(data + i * net.input_dim, net.input_dim));
  return out;
}

TrainingSet to_training_set(py::array_t<double, py::array::c_style | py::array::forcecast> x,
                            py::array_t<double, py::array::c_style | py::array::forcecast> y) {
  if (x.ndim() != 2 || y.ndim() != 1 || x.shape(0) != y.shape(0))
    throw ParameterError("expected points of shape (n, d) and targets of shape (n,)");
  const auto d = static_cast<std::size_t>(x.shape(1));
  std::vector<double> coords(x.data(), x.data() + x.size());
  std::vector<double> targets(y.data(), y.data() + y.size());
  return TrainingSet(d, std::move(coords), std::move(targets));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicitly constructed global-minimum networks";
  m.attr("__version__") = OVERFIT_FORGE_VERSION;

  py::register_exception<Error>(m, "ForgeError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Mlp>(m, "Network")
      .def_readonly("input_dim", &Mlp::input_dim)
      .def_property_readonly("hidden_widths", &Mlp::hidden_widths)
      .def_property_readonly("output_bound", &Mlp::output_bound)
      .def("__call__", [](const Mlp& net, std::vector<double> x) { return forward(net, x); })
      .def("forward_batch", &forward_batch, py::arg("x"))
      .def("to_json", [](const Mlp& net) { return network_to_json(net).dump(); })
      .def_static("from_json", [](const std::string& text) { return network_from_json(nlohmann::json::parse(text)); })
      .def("save", [](const Mlp& net, const std::string& path) { save_network(net, path); })
      .def_static("load", [](const std::string& path) { return load_network(path); })
      .def("metadata_json", [](const Mlp& net) { return net.metadata.dump(); });

  m.def("families", &recipe_families);
  m.def("build_network", [](const std::string& recipe) { return build_network(nlohmann::json::parse(recipe)); },
        py::arg("recipe_json"));
  m.def(
      "extend",
      [](const Mlp& net, const std::string& mode, std::size_t layers, std::vector<std::size_t> widths,
         std::optional<double> epsilon, std::optional<double> c, std::optional<double> shift) {
        ExtensionParams p;
        p.mode = extension_mode_from_name(mode);
        p.layers = layers;
        p.widths = std::move(widths);
        p.epsilon = epsilon;
        p.anchor = c;
        p.shift = shift;
        return extend(net, p);
      },
      py::arg("net"), py::arg("mode") = "relu-exact", py::arg("layers") = 1,
      py::arg("widths") = std::vector<std::size_t>{}, py::arg("epsilon") = py::none(), py::arg("c") = py::none(),
      py::arg("shift") = py::none());

  m.def(
      "loss",
      [](const Mlp& net, py::array_t<double, py::array::c_style | py::array::forcecast> x,
         py::array_t<double, py::array::c_style | py::array::forcecast> y,
         const std::string& kind) { return loss(net, to_training_set(x, y), loss_from_name(kind)); },
      py::arg("net"), py::arg("x"), py::arg("y"), py::arg("kind") = "mse");
  m.def(
      "verify_optimum",
      [](const Mlp& net, const std::string& kind) {
        const auto data = training_set_for(recipe_of(net));
        return to_json(check_global_optimum(net, data, loss_from_name(kind))).dump();
      },
      py::arg("net"), py::arg("loss") = "mse");
  m.def(
      "support",
      [](const Mlp& net, std::size_t samples, std::uint64_t seed, std::optional<double> threshold) {
        const double t = threshold.value_or(net.metadata.contains("support_threshold")
                                                ? net.metadata["support_threshold"].get<double>()
                                                : kExactSupportThreshold);
        return to_json(support_measure(net, SupportMethod::monte_carlo(samples, seed), t, support_bound_for(net)))
            .dump();
      },
      py::arg("net"), py::arg("samples") = 100'000, py::arg("seed") = 1, py::arg("threshold") = py::none());
}
