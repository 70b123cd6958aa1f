#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcak/definition.hpp"
#include "lcak/errors.hpp"
#include "lcak/metric_geometry.hpp"
#include "lcak/verify.hpp"
#include "lcak/zoo.hpp"

namespace py = pybind11;

namespace {

lcak::ChartManifold resolve(const std::string& name_or_path) {
  if (const lcak::ZooEntry* e = lcak::find_zoo_entry(name_or_path)) return e->manifold();
  return lcak::load_definition(name_or_path);
}

lcak::Point to_point(const lcak::ChartManifold& M, const std::vector<double>& c) {
  if (static_cast<int>(c.size()) != M.dim()) throw lcak::Error("point has the wrong dimension");
  lcak::Vec v(M.dim());
  for (int i = 0; i < M.dim(); ++i) v[i] = c[static_cast<std::size_t>(i)];
  return lcak::Point(v);
}

}  // namespace

PYBIND11_MODULE(_lcak, m) {
  m.doc() = "Bindings for the lcak verification engine";
  m.attr("__version__") = lcak::version();

  static py::exception<lcak::Error> base(m, "LcakError");
  py::register_exception<lcak::DefinitionError>(m, "DefinitionError", base.ptr());
  py::register_exception<lcak::NotLCaK>(m, "NotLCaK", base.ptr());
  py::register_exception<lcak::DegenerateLeeField>(m, "DegenerateLeeField", base.ptr());

  py::class_<lcak::ChartManifold>(m, "Manifold")
      .def_property_readonly("name", &lcak::ChartManifold::name)
      .def_property_readonly("dim", &lcak::ChartManifold::dim)
      .def_property_readonly("coordinates", &lcak::ChartManifold::coord_names)
      .def_property_readonly("has_conformal_exponent", &lcak::ChartManifold::has_conformal_exponent)
      .def("metric", [](const lcak::ChartManifold& M, const std::vector<double>& p) { return M.metric(to_point(M, p)); })
      .def("complex_structure",
           [](const lcak::ChartManifold& M, const std::vector<double>& p) { return M.complex_structure(to_point(M, p)); })
      .def("in_domain",
           [](const lcak::ChartManifold& M, const std::vector<double>& p) { return M.in_domain(to_point(M, p)); })
      .def("scalar", [](const lcak::ChartManifold& M, const std::vector<double>& p) { return lcak::scalar(M, to_point(M, p)); })
      .def("definition", [](const lcak::ChartManifold& M) { return lcak::serialize_definition(M); });

  m.def("zoo_names", [] {
    std::vector<std::string> names;
    for (const auto& e : lcak::zoo()) names.push_back(e.name);
    return names;
  });
  m.def("load", &resolve, py::arg("name_or_path"));
  m.def("parse", &lcak::parse_definition, py::arg("text"));
  m.def("eval_operations", &lcak::eval_operations);
  m.def(
      "eval_json",
      [](const lcak::ChartManifold& M, const std::string& op, const std::vector<double>& p, const std::string& conv) {
        return lcak::dump_json(lcak::evaluate_op(M, op, to_point(M, p), lcak::parse_convention(conv), {}));
      },
      py::arg("manifold"), py::arg("op"), py::arg("point"), py::arg("convention") = "canonical");
  m.def(
      "verify_json",
      [](const lcak::ChartManifold& M, const std::vector<std::string>& checks, std::size_t points, std::uint64_t seed,
         unsigned jobs, const std::string& conv) {
        lcak::VerifyOptions o;
        if (!checks.empty()) {
          o.suites.clear();
          for (const auto& c : checks) o.suites.push_back(lcak::parse_suite(c));
        }
        o.points = points;
        o.seed = seed;
        o.jobs = jobs;
        o.convention = lcak::parse_convention(conv);
        lcak::VerificationReport r;
        {
          py::gil_scoped_release release;
          r = lcak::verify(M, o);
        }
        return lcak::dump_json(lcak::report_json(r));
      },
      py::arg("manifold"), py::arg("checks") = std::vector<std::string>{}, py::arg("points") = 25,
      py::arg("seed") = 7, py::arg("jobs") = 1, py::arg("convention") = "canonical");
}
