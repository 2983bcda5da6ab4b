#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "orbitlab/errors.hpp"
#include "orbitlab/harness.hpp"

namespace py = pybind11;
using namespace orbitlab;

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::at_most: return "at_most";
    case Relation::at_least: return "at_least";
    case Relation::within: return "within";
  }
  return "";
}

ExperimentConfig config_from_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical checks for Diff(S^1) x C^inf(S^1) on a conformal circle";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<UnknownSuiteError>(m, "UnknownSuiteError", base.ptr());
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<NonInvertibleError>(m, "NonInvertibleError", base.ptr());
  py::register_exception<SupportOverflowError>(m, "SupportOverflowError", base.ptr());
  py::register_exception<GridMismatchError>(m, "GridMismatchError", base.ptr());
  py::register_exception<CutLocusError>(m, "CutLocusError", base.ptr());

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("points", &ExperimentConfig::points)
      .def_readwrite("length", &ExperimentConfig::length)
      .def_readwrite("metric", &ExperimentConfig::metric)
      .def_readwrite("amplitude", &ExperimentConfig::amplitude)
      .def_readwrite("velocity_half_width", &ExperimentConfig::velocity_half_width)
      .def_readwrite("velocity_points", &ExperimentConfig::velocity_points)
      .def_readwrite("k_min", &ExperimentConfig::k_min)
      .def_readwrite("k_max", &ExperimentConfig::k_max)
      .def_readwrite("symbol", &ExperimentConfig::symbol)
      .def_readwrite("algebra", &ExperimentConfig::algebra)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("output", &ExperimentConfig::output)
      .def("validate", &ExperimentConfig::validate)
      .def("h_grid", &ExperimentConfig::h_grid)
      .def("nodes", [](const ExperimentConfig& c) { return Eigen::VectorXd(c.manifold()->nodes()); })
      .def("weights", [](const ExperimentConfig& c) { return Eigen::VectorXd(c.manifold()->weights()); });

  m.def("parse_config", &config_from_string, py::arg("text"), "Parse INI text into a validated config.");
  m.def("load_config", &load_config, py::arg("path"));

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("id", &CheckResult::id)
      .def_readonly("anchor", &CheckResult::anchor)
      .def_property_readonly("relation", [](const CheckResult& c) { return relation_name(c.relation); })
      .def_readonly("value", &CheckResult::value)
      .def_readonly("bound", &CheckResult::bound)
      .def_readonly("radius", &CheckResult::radius)
      .def_readonly("passed", &CheckResult::passed)
      .def("__repr__", [](const CheckResult& c) {
        return "<CheckResult " + c.id + (c.passed ? " pass " : " FAIL ") + format_number(c.value) + ">";
      });

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("h_values", &ConvergenceReport::h_values)
      .def_readonly("values", &ConvergenceReport::values)
      .def_readonly("errors", &ConvergenceReport::errors)
      .def_readonly("target", &ConvergenceReport::target)
      .def_readonly("fitted_slope", &ConvergenceReport::fitted_slope)
      .def_readonly("extrapolated_limit", &ConvergenceReport::extrapolated_limit);

  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("name", &SuiteResult::name)
      .def_readonly("checks", &SuiteResult::checks)
      .def_property_readonly("reports",
                             [](const SuiteResult& s) {
                               py::dict out;
                               for (const auto& r : s.reports) out[py::str(r.name)] = r.report;
                               return out;
                             })
      .def_property_readonly("passed", &SuiteResult::passed)
      .def("check", &SuiteResult::check, py::arg("id"), py::return_value_policy::reference_internal);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("report", &SweepResult::report)
      .def_readonly("csv", &SweepResult::csv)
      .def_readonly("plot", &SweepResult::plot);

  m.def("suites", [] {
    std::vector<std::string> names;
    for (const auto& e : suite_catalog()) names.push_back(e.name);
    return names;
  });
  m.def("experiments", [] {
    std::vector<std::string> names;
    for (const auto& e : experiment_catalog()) names.push_back(e.name);
    return names;
  });
  m.def("run_suite", &run_suite, py::arg("name"), py::arg("config") = ExperimentConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("run_suites", &run_suites, py::arg("name") = "all", py::arg("config") = ExperimentConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep", &sweep, py::arg("experiment"), py::arg("config") = ExperimentConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("format_results", &format_results);
  m.def("coverage", [](const std::vector<SuiteResult>& results) {
    py::dict out;
    for (const auto& row : coverage(results)) out[py::str(row.anchor)] = py::make_tuple(row.suite, row.checks);
    return out;
  });
  m.def("coverage_complete", [](const std::vector<SuiteResult>& results) { return coverage_complete(coverage(results)); });
}
