#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ql/catalog.hpp"
#include "ql/cli.hpp"

namespace py = pybind11;

namespace {

// Reports cross the boundary as JSON text; the Python side parses them.
std::string analyze(const std::string& quartic, const std::string& field, unsigned k, unsigned threads,
                    std::uint64_t seed, bool census_only) {
  const ql::MVPoly f = ql::MVPoly::parse(ql::parse_field_spec(field), 4, quartic);
  ql::AnalysisOptions o;
  o.k = k;
  o.threads = threads;
  o.seed = seed;
  py::gil_scoped_release release;
  const auto r = census_only ? ql::census_report(f, o) : ql::analyze_surface(f, o);
  return ql::report_to_json(r).dump();
}

std::string run_entry(const std::string& name, unsigned threads) {
  ql::RunOptions o;
  o.threads = threads;
  py::gil_scoped_release release;
  return ql::run_entry(ql::builtin_catalog(), name, o).to_json().dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = ql::run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "lines on quartic surfaces over finite fields";

  py::register_exception<ql::Error>(m, "QuarticError", PyExc_ValueError);

  m.def("analyze", &analyze, py::arg("quartic"), py::arg("field"), py::arg("k") = 2, py::arg("threads") = 1,
        py::arg("seed") = 1, py::arg("census_only") = false,
        "Full report of a quartic over `field` with lines over the degree-k extension, as JSON text.");
  m.def("catalog_names", [] { return ql::builtin_catalog().names(); });
  m.def("run_entry", &run_entry, py::arg("name"), py::arg("threads") = 1);
  m.def("run_cli", &run_cli, py::arg("args"), "Returns (exit code, stdout, stderr).");
  m.def("max_min_bound", &ql::max_min_bound, py::arg("a"), py::arg("b"));
  m.def("field_order", [](const std::string& spec) { return ql::parse_field_spec(spec)->order(); });

  m.attr("EXIT_OK") = ql::kExitOk;
  m.attr("EXIT_ERROR") = ql::kExitError;
  m.attr("EXIT_VIOLATION") = ql::kExitViolation;
  m.attr("SCHEMA") = ql::kReportSchema;
}
